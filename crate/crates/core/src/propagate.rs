//! Clause-level unit propagation.

use std::collections::BTreeSet;

use crate::formula::{Assignment, CnfFormula, Literal};
use crate::implication::{PropagationClosure, Rule, Step};

/// Runs unit propagation from a partial assignment to a fixpoint or the
/// first falsified clause.
///
/// Clauses are scanned in order, repeatedly; a clause with every literal
/// but one false forces that literal. Works for clauses of any width.
/// The seed's literals are part of `forced`; use
/// [`PropagationClosure::derived`] for the newly forced ones.
pub fn unit_propagate(formula: &CnfFormula, seed: &Assignment) -> PropagationClosure {
    let n = formula.variable_count();
    // value per variable slot, plus the step at which it was assigned
    let mut value: Vec<Option<bool>> = vec![None; n];
    let mut stamp = vec![0usize; n];
    let mut clock = 1;
    let seed_literals = seed.literals();
    for lit in &seed_literals {
        if lit.variable().slot() < n {
            value[lit.variable().slot()] = Some(lit.is_positive());
            stamp[lit.variable().slot()] = clock;
        }
    }
    clock += 1;

    let lit_value = |value: &[Option<bool>], l: Literal| value[l.variable().slot()].map(|v| v == l.is_positive());
    let mut steps = Vec::new();
    let mut conflict = None;

    'fixpoint: loop {
        let mut changed = false;
        for (index, clause) in formula.clauses().iter().enumerate() {
            let mut open = None;
            let mut open_count = 0;
            let mut satisfied = false;
            for &l in clause.literals() {
                match lit_value(&value, l) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        open_count += 1;
                        open = Some(l);
                    }
                }
            }
            if satisfied {
                continue;
            }
            // the literal falsified most recently is what made the clause bite
            let trigger = clause
                .literals()
                .iter()
                .filter(|l| lit_value(&value, **l) == Some(false))
                .max_by_key(|l| stamp[l.variable().slot()])
                .copied();
            match open_count {
                0 => {
                    conflict = trigger.map(|l| l.variable());
                    break 'fixpoint;
                }
                1 => {
                    let forced = open.expect("one open literal");
                    value[forced.variable().slot()] = Some(forced.is_positive());
                    stamp[forced.variable().slot()] = clock;
                    clock += 1;
                    steps.push(Step {
                        from: trigger.map(Literal::negate),
                        rule: Rule::UnitClause { clause: index },
                        to: forced,
                    });
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }

    let seed_set: BTreeSet<Literal> = seed_literals.into_iter().collect();
    let mut forced = seed_set.clone();
    forced.extend(steps.iter().map(|s| s.to));
    PropagationClosure {
        seed: seed_set,
        forced,
        steps,
        conflict,
    }
}
