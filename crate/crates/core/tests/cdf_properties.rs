mod common;

use cdfsat::cdf::{
    check_compositionality, classify, fit_growth, measure_growth, verdict_for, wide_clause_fraction, CompositionalityStatus,
    GrowthModel, Verdict, Witness, DEFAULT_THETA,
};
use cdfsat::generate::{generate_random_ksat, KSatParams};
use cdfsat::{Assignment, CnfFormula, Literal, Variable};
use common::{build, raw_formula};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn chain() -> CnfFormula {
    CnfFormula::from_dimacs_clauses(3, &[&[-1, 2], &[-2, 3]]).unwrap()
}

fn single_three_clause() -> CnfFormula {
    CnfFormula::from_dimacs_clauses(3, &[&[-1, -2, 3]]).unwrap()
}

#[test]
fn worked_examples() {
    let report = check_compositionality(&chain());
    assert!(report.is_compositional());
    assert_eq!(report.checked_seeds, 7);
    assert_eq!(classify(&chain(), None, DEFAULT_THETA).verdict, Verdict::ComCdf);

    let report = check_compositionality(&single_three_clause());
    match report.witness.as_ref().unwrap() {
        Witness::WideClause { clause, assignment, .. } => {
            assert_eq!(clause.to_string(), "(~x1 | ~x2 | x3)");
            let x = Variable::new(1).unwrap();
            assert_eq!(*assignment, Assignment::from_literals([Literal::new(x, true)]));
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(classify(&single_three_clause(), None, DEFAULT_THETA).verdict, Verdict::ExpCdf);
}

fn disjoint_family(k: usize, p: usize, q: usize, seed: u64) -> impl Fn(usize) -> Result<CnfFormula, cdfsat::generate::GenerateError> + Sync {
    move |n| {
        generate_random_ksat(KSatParams {
            variables: n,
            clauses: n * p / q,
            width: k,
            seed: seed ^ n as u64,
            disjoint: true,
        })
    }
}

#[test]
fn growth_fit_recovers_known_bases() {
    let ns3: Vec<usize> = (9..=24).step_by(3).collect();
    let fit = measure_growth(disjoint_family(3, 1, 3, 1), &ns3, 26).unwrap();
    let c = 7f64.powf(1.0 / 3.0);
    assert!((fit.implied_base - c).abs() / c <= 0.02, "{}", fit.implied_base);
    assert_eq!(fit.preferred_model, GrowthModel::Exponential);

    let ns2: Vec<usize> = (8..=24).step_by(4).collect();
    let fit = measure_growth(disjoint_family(2, 1, 2, 1), &ns2, 26).unwrap();
    let c = 3f64.sqrt();
    assert!((fit.implied_base - c).abs() / c <= 0.02, "{}", fit.implied_base);
}

#[test]
fn empty_family_doubles() {
    let fit = measure_growth(|n| Ok::<_, String>(CnfFormula::empty(n)), &[1, 2, 3, 4, 5], 26).unwrap();
    assert!((fit.implied_base - 2.0).abs() < 1e-12);
    assert_eq!(fit.preferred_model, GrowthModel::Exponential);
}

#[test]
fn preferred_model_is_rederivable_from_samples() {
    let fit = measure_growth(disjoint_family(3, 1, 3, 7), &[9, 12, 15, 18], 26).unwrap();
    let again = fit_growth(fit.samples.clone()).unwrap();
    assert_eq!(again, fit);
    for s in &fit.samples {
        assert!(s.image_size >= 1);
        assert_eq!(s.log_image_bits, (s.image_size as f64).log2());
    }
}

proptest! {
    #[test]
    fn witness_present_iff_non_compositional(raw in raw_formula(7, 10, 1..=4)) {
        let report = check_compositionality(&build(&raw));
        prop_assert_eq!(report.status == CompositionalityStatus::NonCompositional, report.witness.is_some());
    }

    #[test]
    fn verdict_is_a_function_of_status_and_coverage(raw in raw_formula(8, 10, 1..=4), theta in 0.0f64..=1.0) {
        let f = build(&raw);
        let c = classify(&f, None, theta);
        prop_assert_eq!(c.verdict, verdict_for(c.compositionality.status, wide_clause_fraction(&f), theta));
        prop_assert_eq!(&classify(&f, None, theta), &c);
        if c.verdict == Verdict::ComCdf {
            prop_assert!(c.compositionality.is_compositional());
        }
        prop_assert_eq!(c.verdict == Verdict::ComCdf, f.max_width() <= 2);
    }

    #[test]
    fn renaming_keeps_status_and_verdict(raw in raw_formula(8, 10, 1..=4), shuffle in any::<u64>()) {
        let f = build(&raw);
        let mut mapping: Vec<Variable> = f.variables().collect();
        mapping.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(shuffle));
        let g = f.rename(&mapping);
        let (a, b) = (classify(&f, None, DEFAULT_THETA), classify(&g, None, DEFAULT_THETA));
        prop_assert_eq!(a.compositionality.status, b.compositionality.status);
        prop_assert_eq!(a.verdict, b.verdict);
    }
}
