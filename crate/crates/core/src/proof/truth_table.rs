use serde::Serialize;
use thiserror::Error;

use super::Proposition;

pub const MAX_TRUTH_TABLE_ATOMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{count} atoms exceed the truth-table limit of {limit}")]
pub struct TooManyAtoms {
    pub count: usize,
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TruthRow {
    /// One value per atom, in `TruthTable::atoms` order.
    pub atoms: Vec<bool>,
    /// One value per compound subformula, in `TruthTable::columns` order.
    pub columns: Vec<bool>,
    pub value: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TruthTable {
    pub atoms: Vec<String>,
    /// Distinct compound subformulas, innermost first; the last is the
    /// formula itself unless it is an atom or constant.
    pub columns: Vec<Proposition>,
    pub rows: Vec<TruthRow>,
    pub is_tautology: bool,
}

impl TruthTable {
    pub fn true_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.value).count()
    }
}

/// Evaluates every assignment. Atoms are alphabetical and rows run
/// false-first, as a binary counter with the first atom most significant.
pub fn eval_truth_table(p: &Proposition) -> Result<TruthTable, TooManyAtoms> {
    let atoms: Vec<String> = p.atoms().into_iter().map(str::to_string).collect();
    if atoms.len() > MAX_TRUTH_TABLE_ATOMS {
        return Err(TooManyAtoms {
            count: atoms.len(),
            limit: MAX_TRUTH_TABLE_ATOMS,
        });
    }
    let mut columns: Vec<Proposition> = Vec::new();
    p.visit(&mut |q| {
        if !matches!(q, Proposition::Atom(_) | Proposition::Const(_)) && !columns.contains(q) {
            columns.push(q.clone());
        }
    });
    let n = atoms.len();
    let rows: Vec<TruthRow> = (0..1u32 << n)
        .map(|bits| {
            let values: Vec<bool> = (0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect();
            let lookup = |name: &str| values[atoms.binary_search_by(|a| a.as_str().cmp(name)).expect("known atom")];
            TruthRow {
                columns: columns.iter().map(|c| c.eval(&lookup)).collect(),
                value: p.eval(&lookup),
                atoms: values.clone(),
            }
        })
        .collect();
    let is_tautology = rows.iter().all(|r| r.value);
    Ok(TruthTable {
        atoms,
        columns,
        rows,
        is_tautology,
    })
}
