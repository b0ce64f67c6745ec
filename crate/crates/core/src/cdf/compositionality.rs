use std::collections::BTreeSet;

use serde::Serialize;

use crate::formula::{Assignment, Clause, CnfFormula, Literal, Variable};
use crate::implication::{build_implication_graph, clause_to_implications, propagate_closure, PropagationClosure};
use crate::propagate::unit_propagate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionalityStatus {
    Compositional,
    NonCompositional,
}

/// What one route forced from a seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ForcedSet {
    pub literals: BTreeSet<Literal>,
    pub conflict: bool,
}

impl From<&PropagationClosure> for ForcedSet {
    fn from(c: &PropagationClosure) -> Self {
        ForcedSet {
            literals: c.forced.clone(),
            conflict: c.has_conflict(),
        }
    }
}

/// Result of the composed route on a witness clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComposedResult {
    /// The clause has no implication form, so there is nothing to close.
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum Witness {
    /// A clause of width three or more. With all but two of its literals
    /// falsified, direct propagation on the clause forces nothing and the
    /// implication route has no input to work with.
    WideClause {
        clause_index: usize,
        clause: Clause,
        assignment: Assignment,
        direct_forced: BTreeSet<Literal>,
        composed: ComposedResult,
    },
    /// A seed on which the two routes disagree.
    Divergence {
        seed: Option<Literal>,
        direct: ForcedSet,
        composed: ForcedSet,
    },
}

impl Witness {
    /// Re-runs the witness. For a wide clause: propagation on the clause
    /// alone under the witness assignment must force none of the clause's
    /// variables and the clause must have no implication form.
    pub fn replay(&self, formula: &CnfFormula) -> bool {
        match self {
            Witness::WideClause {
                clause, assignment, ..
            } => {
                let single = CnfFormula::new(formula.variable_count(), vec![clause.clone()])
                    .expect("clause came from this formula");
                let closure = unit_propagate(&single, assignment);
                let vars: BTreeSet<Variable> = clause.variables().collect();
                let forces_nothing = closure.derived().iter().all(|l| !vars.contains(&l.variable()));
                forces_nothing && !closure.has_conflict() && clause_to_implications(clause).is_err()
            }
            Witness::Divergence { seed, .. } => {
                let (direct, composed) = both_routes(formula, *seed);
                !routes_agree(&direct, &composed)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CompositionalityReport {
    pub status: CompositionalityStatus,
    /// Seeds compared (the empty seed plus every literal), when the
    /// implication route applies.
    pub checked_seeds: usize,
    pub witness: Option<Witness>,
}

impl CompositionalityReport {
    pub fn is_compositional(&self) -> bool {
        self.status == CompositionalityStatus::Compositional
    }
}

/// Compares direct unit propagation with closure over the implication
/// graph.
///
/// For formulas of width at most two, both routes are run from the empty
/// seed and from every one of the `2n` literals. The implication route
/// also starts from the literals asserted by unit clauses (their forcing
/// edges `~a => a` read as facts). Routes agree when both conflict, or
/// neither conflicts and the forced sets are equal.
///
/// A formula with a clause of width three or more is non-compositional;
/// the first such clause is the witness.
pub fn check_compositionality(formula: &CnfFormula) -> CompositionalityReport {
    if let Some((index, clause)) = formula.clauses().iter().enumerate().find(|(_, c)| c.width() >= 3) {
        return CompositionalityReport {
            status: CompositionalityStatus::NonCompositional,
            checked_seeds: 0,
            witness: Some(wide_clause_witness(formula, index, clause)),
        };
    }
    let seeds = std::iter::once(None).chain((0..2 * formula.variable_count()).map(|c| Some(Literal::from_code(c))));
    let mut checked = 0;
    for seed in seeds {
        checked += 1;
        let (direct, composed) = both_routes(formula, seed);
        if !routes_agree(&direct, &composed) {
            return CompositionalityReport {
                status: CompositionalityStatus::NonCompositional,
                checked_seeds: checked,
                witness: Some(Witness::Divergence {
                    seed,
                    direct: ForcedSet::from(&direct),
                    composed: ForcedSet::from(&composed),
                }),
            };
        }
    }
    CompositionalityReport {
        status: CompositionalityStatus::Compositional,
        checked_seeds: checked,
        witness: None,
    }
}

/// Direct (unit propagation) and composed (implication closure) results
/// for one seed. The formula must have width at most two.
pub fn both_routes(formula: &CnfFormula, seed: Option<Literal>) -> (PropagationClosure, PropagationClosure) {
    let graph = build_implication_graph(formula).expect("width checked by caller");
    let seed_lits: Vec<Literal> = seed.into_iter().collect();
    let direct = unit_propagate(formula, &Assignment::from_literals(seed_lits.iter().copied()));
    let mut composed_seed = seed_lits;
    composed_seed.extend(graph.axioms());
    let mut composed = propagate_closure(&graph, &composed_seed);
    // axioms are derived facts, not part of the caller's seed
    composed.seed = seed.into_iter().collect();
    (direct, composed)
}

fn routes_agree(direct: &PropagationClosure, composed: &PropagationClosure) -> bool {
    match (direct.has_conflict(), composed.has_conflict()) {
        (true, true) => true,
        (false, false) => direct.forced == composed.forced,
        _ => false,
    }
}

fn wide_clause_witness(formula: &CnfFormula, index: usize, clause: &Clause) -> Witness {
    let lits = clause.literals();
    let assignment = Assignment::from_literals(lits[..lits.len() - 2].iter().map(|l| l.negate()));
    let single = CnfFormula::new(formula.variable_count(), vec![clause.clone()]).expect("clause came from this formula");
    let direct_forced = unit_propagate(&single, &assignment).derived();
    Witness::WideClause {
        clause_index: index,
        clause: clause.clone(),
        assignment,
        direct_forced,
        composed: ComposedResult::Undefined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    #[test]
    fn chain_is_compositional() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[-1, 2], &[-2, 3]]).unwrap();
        let report = check_compositionality(&f);
        assert!(report.is_compositional());
        assert_eq!(report.checked_seeds, 7);
        assert!(report.witness.is_none());
    }

    #[test]
    fn three_clause_witness() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[-1, -2, 3]]).unwrap();
        let report = check_compositionality(&f);
        assert_eq!(report.status, CompositionalityStatus::NonCompositional);
        let witness = report.witness.unwrap();
        match &witness {
            Witness::WideClause {
                clause,
                assignment,
                direct_forced,
                composed,
                ..
            } => {
                assert_eq!(clause.literals(), &[lit(-1), lit(-2), lit(3)]);
                assert_eq!(*assignment, Assignment::from_literals([lit(1)]));
                assert!(direct_forced.is_empty());
                assert_eq!(*composed, ComposedResult::Undefined);
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(witness.replay(&f));
    }

    #[test]
    fn empty_formula_is_vacuously_compositional() {
        let report = check_compositionality(&CnfFormula::empty(0));
        assert!(report.is_compositional());
        assert_eq!(report.checked_seeds, 1);
    }

    #[test]
    fn units_count_as_facts_on_the_implication_route() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[2], &[-2, 3], &[1, -3]]).unwrap();
        assert!(check_compositionality(&f).is_compositional());
        let (direct, composed) = both_routes(&f, None);
        assert_eq!(direct.forced, composed.forced);
        assert_eq!(direct.forced, [lit(1), lit(2), lit(3)].into());
    }

    #[test]
    fn conflicting_seeds_agree() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]).unwrap();
        assert!(check_compositionality(&f).is_compositional());
        let (direct, composed) = both_routes(&f, Some(lit(1)));
        assert!(direct.has_conflict() && composed.has_conflict());
    }
}
