use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::compositionality::{check_compositionality, CompositionalityReport, CompositionalityStatus};
use super::growth::{GrowthFit, GrowthModel};
use crate::formula::{CnfFormula, Variable};

/// Default cut-off on wide-clause variable coverage below which a
/// non-compositional formula counts as semi-explosive.
pub const DEFAULT_THETA: f64 = 0.5;

/// Stated with every verdict, since the semi-explosive class has no
/// established definition.
pub const SEMI_EXP_RULE: &str =
    "heuristic: non-compositional with wide-clause variable coverage <= theta is SemiExpCDF";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "ComCDF")]
    ComCdf,
    #[serde(rename = "SemiExpCDF")]
    SemiExpCdf,
    #[serde(rename = "ExpCDF")]
    ExpCdf,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ComCdf => "ComCDF",
            Verdict::SemiExpCdf => "SemiExpCDF",
            Verdict::ExpCdf => "ExpCDF",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CdfClassification {
    pub verdict: Verdict,
    pub compositionality: CompositionalityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthFit>,
    /// Share of the formula's variables that occur in a clause of width
    /// three or more.
    pub wide_clause_fraction: f64,
    pub theta: f64,
    pub rule: &'static str,
    /// Growth evidence points the other way from the syntactic verdict.
    pub tension: bool,
}

/// `|vars in clauses of width >= 3| / n`, zero for an empty variable set.
pub fn wide_clause_fraction(formula: &CnfFormula) -> f64 {
    if formula.variable_count() == 0 {
        return 0.0;
    }
    let wide: BTreeSet<Variable> = formula
        .clauses()
        .iter()
        .filter(|c| c.width() >= 3)
        .flat_map(|c| c.variables())
        .collect();
    wide.len() as f64 / formula.variable_count() as f64
}

/// Verdict from compositionality status and wide-clause coverage alone.
pub fn verdict_for(status: CompositionalityStatus, wide_fraction: f64, theta: f64) -> Verdict {
    match status {
        CompositionalityStatus::Compositional => Verdict::ComCdf,
        CompositionalityStatus::NonCompositional if wide_fraction <= theta => Verdict::SemiExpCdf,
        CompositionalityStatus::NonCompositional => Verdict::ExpCdf,
    }
}

/// Classifies a formula. Growth evidence, if given, is attached but never
/// changes the verdict; disagreement sets `tension`.
pub fn classify(formula: &CnfFormula, growth: Option<GrowthFit>, theta: f64) -> CdfClassification {
    let compositionality = check_compositionality(formula);
    let fraction = wide_clause_fraction(formula);
    let verdict = verdict_for(compositionality.status, fraction, theta);
    let tension = growth.as_ref().is_some_and(|g| {
        matches!(
            (compositionality.status, g.preferred_model),
            (CompositionalityStatus::Compositional, GrowthModel::Exponential)
                | (CompositionalityStatus::NonCompositional, GrowthModel::Polynomial)
        )
    });
    CdfClassification {
        verdict,
        compositionality,
        growth,
        wide_clause_fraction: fraction,
        theta,
        rule: SEMI_EXP_RULE,
        tension,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdf::growth::{fit_growth, CountRoute, GrowthSample};
    use crate::generate::{generate_random_ksat, KSatParams};

    fn random(n: usize, m: usize, k: usize, seed: u64) -> CnfFormula {
        generate_random_ksat(KSatParams {
            variables: n,
            clauses: m,
            width: k,
            seed,
            disjoint: false,
        })
        .unwrap()
    }

    #[test]
    fn random_two_sat_is_comcdf() {
        for seed in 0..20 {
            let f = random(10, 5 + seed as usize, 2, seed);
            assert_eq!(classify(&f, None, DEFAULT_THETA).verdict, Verdict::ComCdf);
        }
    }

    #[test]
    fn random_three_sat_is_expcdf() {
        for seed in 0..20 {
            let f = random(8, 20, 3, seed);
            assert_eq!(classify(&f, None, DEFAULT_THETA).verdict, Verdict::ExpCdf);
        }
    }

    #[test]
    fn partial_wide_coverage_is_semi() {
        let f = CnfFormula::from_dimacs_clauses(
            9,
            &[&[1, 2, 3], &[-1, -2, -3], &[4, 5], &[5, 6], &[-6, 7], &[7, 8], &[8, 9]],
        )
        .unwrap();
        let c = classify(&f, None, DEFAULT_THETA);
        assert!((c.wide_clause_fraction - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(c.verdict, Verdict::SemiExpCdf);
        assert_eq!(classify(&f, None, 0.2).verdict, Verdict::ExpCdf);
    }

    #[test]
    fn growth_disagreement_sets_tension() {
        let poly = fit_growth(
            [2usize, 4, 8, 16]
                .iter()
                .map(|&n| GrowthSample::new(n, (n * n) as u128, CountRoute::Enumeration))
                .collect(),
        )
        .unwrap();
        let three = CnfFormula::from_dimacs_clauses(3, &[&[-1, -2, 3]]).unwrap();
        let c = classify(&three, Some(poly), DEFAULT_THETA);
        assert_eq!(c.verdict, Verdict::ExpCdf);
        assert!(c.tension);
    }

    #[test]
    fn verdict_serializes_with_display_names() {
        assert_eq!(serde_json::to_string(&Verdict::SemiExpCdf).unwrap(), "\"SemiExpCDF\"");
        assert_eq!(Verdict::ComCdf.to_string(), "ComCDF");
    }
}
