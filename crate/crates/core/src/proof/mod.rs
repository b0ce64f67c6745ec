//! Truth tables and natural-deduction checking for propositional
//! formulas, with a side-by-side cost record.

mod derivation;
mod proposition;
mod truth_table;

use serde::Serialize;

pub use derivation::{check_derivation, Derivation, DerivationVerdict, InvalidReason, Rule, Step};
pub use proposition::{parse_proposition, ParseError, Proposition};
pub use truth_table::{eval_truth_table, TooManyAtoms, TruthRow, TruthTable, MAX_TRUTH_TABLE_ATOMS};

/// Five-line proof of `A -> (B -> A)`: assume A, assume B, reiterate A,
/// then discharge B and A in turn.
pub fn weakening_derivation() -> Derivation {
    Derivation::from_json(include_str!("../../fixtures/weakening.json")).expect("fixture parses")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CostReport {
    pub atoms: usize,
    /// Truth-table rows, `2^atoms`; absent past 127 atoms.
    pub semantic: Option<u128>,
    /// Derivation length in steps.
    pub syntactic: Option<usize>,
}

pub fn cost_report(p: &Proposition, derivation: Option<&Derivation>) -> CostReport {
    let atoms = p.atoms().len();
    CostReport {
        atoms,
        semantic: u32::try_from(atoms).ok().and_then(|n| 1u128.checked_shl(n)),
        syntactic: derivation.map(Derivation::len),
    }
}
