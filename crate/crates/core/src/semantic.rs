//! Exact semantic images: the satisfying assignments of clauses and
//! formulas, and their counts.
//!
//! Enumeration walks assignments in lexicographic order by variable index
//! with `false` before `true`; the lowest-indexed variable is the most
//! significant position. Internally an assignment over a scope of `s`
//! variables is a `u64` whose bit `s - 1 - i` holds the value of
//! `scope[i]`, so ascending integers are exactly that order.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::formula::{Assignment, Clause, CnfFormula, Variable};

/// Default limit on the number of variables enumerated exhaustively.
pub const DEFAULT_ENUMERATION_CAP: usize = 26;
/// Satisfying sets are kept in memory only up to this many variables.
pub const MATERIALIZE_CAP: usize = 20;
/// Hard ceiling for the bit-packed enumerator.
const MAX_ENUMERABLE: usize = 63;
/// Below this many variables the parallel split is not worth it.
const PARALLEL_THRESHOLD: usize = 16;
const CHUNK_BITS: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImageError {
    #[error("{n} variables exceed the enumeration cap of {cap} and the clauses are not variable-disjoint; intractable at desk scale")]
    Intractable { n: usize, cap: usize },
    #[error("model count over {n} variables does not fit in 128 bits")]
    CountOverflow { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    Enumerated,
    CountOnly,
}

/// The set of satisfying assignments over a scope, or just its size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticImage {
    scope: Vec<Variable>,
    count: u128,
    satisfying: Option<Vec<u64>>,
}

impl SemanticImage {
    pub fn scope(&self) -> &[Variable] {
        &self.scope
    }

    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn representation(&self) -> Representation {
        if self.satisfying.is_some() {
            Representation::Enumerated
        } else {
            Representation::CountOnly
        }
    }

    pub fn is_satisfiable(&self) -> bool {
        self.count > 0
    }

    /// Satisfying assignments in canonical order, when enumerated.
    pub fn assignments(&self) -> Option<impl Iterator<Item = Assignment> + '_> {
        let rows = self.satisfying.as_ref()?;
        Some(rows.iter().map(move |&bits| self.decode(bits)))
    }

    fn decode(&self, bits: u64) -> Assignment {
        let width = self.scope.len();
        let mut a = Assignment::new();
        for (i, &var) in self.scope.iter().enumerate() {
            a.set(var, bits >> (width - 1 - i) & 1 == 1);
        }
        a
    }

    fn row_bits(&self, bits: u64) -> impl Iterator<Item = u8> + '_ {
        let width = self.scope.len();
        (0..width).map(move |i| (bits >> (width - 1 - i) & 1) as u8)
    }

    /// One line per satisfying assignment, values in scope order as 0/1.
    /// `None` for count-only images.
    pub fn to_text(&self) -> Option<String> {
        let rows = self.satisfying.as_ref()?;
        let mut out = String::new();
        for &bits in rows {
            for v in self.row_bits(bits) {
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        Some(out)
    }
}

impl Serialize for SemanticImage {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let fields = if self.satisfying.is_some() { 4 } else { 3 };
        let mut s = serializer.serialize_struct("SemanticImage", fields)?;
        s.serialize_field("scope", &self.scope)?;
        s.serialize_field("count", &self.count)?;
        s.serialize_field("representation", &self.representation())?;
        if let Some(rows) = &self.satisfying {
            let rows: Vec<Vec<u8>> = rows.iter().map(|&b| self.row_bits(b).collect()).collect();
            s.serialize_field("assignments", &rows)?;
        }
        s.end()
    }
}

/// `2^n`, the number of total assignments over `n` variables.
///
/// # Panics
///
/// Panics if `n > 127`.
pub fn truth_table_size(n: u32) -> u128 {
    1u128.checked_shl(n).expect("2^n must fit in 128 bits")
}

/// The satisfying assignments of a single clause over its own variables.
/// Always `2^k - 1` of them: only the all-literals-false row is missing.
pub fn clause_image(clause: &Clause) -> SemanticImage {
    let mut scope: Vec<Variable> = clause.variables().collect();
    scope.sort_unstable();
    let masks = [ClauseMask::new(clause, &scope)];
    let rows = enumerate_range(&masks, 0, 1u64 << scope.len());
    SemanticImage {
        count: rows.len() as u128,
        satisfying: Some(rows),
        scope,
    }
}

/// The unique assignment to a clause's variables that falsifies it.
pub fn falsifying_assignment(clause: &Clause) -> Assignment {
    Assignment::from_literals(clause.literals().iter().map(|l| l.negate()))
}

/// Exact image of a whole formula over all of its variables.
///
/// Formulas with at most `enumeration_cap` variables are enumerated
/// exhaustively (keeping the assignments when there are at most
/// [`MATERIALIZE_CAP`] variables). Larger formulas are counted with the
/// product rule when their clauses are variable-disjoint and rejected
/// otherwise.
pub fn formula_image(formula: &CnfFormula, enumeration_cap: usize) -> Result<SemanticImage, ImageError> {
    let n = formula.variable_count();
    let scope: Vec<Variable> = formula.variables().collect();
    if n <= enumeration_cap.min(MAX_ENUMERABLE) {
        if n <= MATERIALIZE_CAP {
            let rows = enumerate_models(formula);
            return Ok(SemanticImage {
                scope,
                count: rows.len() as u128,
                satisfying: Some(rows),
            });
        }
        return Ok(SemanticImage {
            scope,
            count: enumerate_count(formula),
            satisfying: None,
        });
    }
    match product_count(formula) {
        Some(Ok(count)) => Ok(SemanticImage {
            scope,
            count,
            satisfying: None,
        }),
        Some(Err(e)) => Err(e),
        None => Err(ImageError::Intractable {
            n,
            cap: enumeration_cap,
        }),
    }
}

/// Model count by exhaustive enumeration, never materializing.
///
/// # Panics
///
/// Panics if the formula has more than 63 variables.
pub fn enumerate_count(formula: &CnfFormula) -> u128 {
    let n = formula.variable_count();
    assert!(n <= MAX_ENUMERABLE, "enumeration supports at most {MAX_ENUMERABLE} variables");
    let scope: Vec<Variable> = formula.variables().collect();
    let masks: Vec<ClauseMask> = formula.clauses().iter().map(|c| ClauseMask::new(c, &scope)).collect();
    let total = 1u64 << n;
    if n < PARALLEL_THRESHOLD {
        return count_range(&masks, 0, total) as u128;
    }
    let chunk = 1u64 << CHUNK_BITS;
    (0..total / chunk)
        .into_par_iter()
        .map(|i| count_range(&masks, i * chunk, (i + 1) * chunk))
        .sum::<u64>() as u128
}

fn enumerate_models(formula: &CnfFormula) -> Vec<u64> {
    let n = formula.variable_count();
    let scope: Vec<Variable> = formula.variables().collect();
    let masks: Vec<ClauseMask> = formula.clauses().iter().map(|c| ClauseMask::new(c, &scope)).collect();
    let total = 1u64 << n;
    if n < PARALLEL_THRESHOLD {
        return enumerate_range(&masks, 0, total);
    }
    let chunk = 1u64 << CHUNK_BITS;
    let parts: Vec<Vec<u64>> = (0..total / chunk)
        .into_par_iter()
        .map(|i| enumerate_range(&masks, i * chunk, (i + 1) * chunk))
        .collect();
    parts.concat()
}

/// Count by the product rule: `prod(2^k_i - 1) * 2^free`. `None` unless
/// the clauses are pairwise variable-disjoint.
pub fn product_count(formula: &CnfFormula) -> Option<Result<u128, ImageError>> {
    let overflow = ImageError::CountOverflow {
        n: formula.variable_count(),
    };
    let bound = match disjoint_lower_bound(formula) {
        DisjointBound::Inapplicable => return None,
        DisjointBound::Overflow => return Some(Err(overflow)),
        DisjointBound::Product(b) => b,
    };
    let used: usize = formula.clauses().iter().map(Clause::width).sum();
    let free = formula.variable_count() - used;
    Some(
        (free < 128)
            .then(|| bound.checked_mul(1u128 << free))
            .flatten()
            .ok_or(overflow),
    )
}

/// Outcome of [`disjoint_lower_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum DisjointBound {
    Product(u128),
    /// Some variable occurs in two clauses; the product is not a bound.
    Inapplicable,
    /// The product does not fit in 128 bits.
    Overflow,
}

/// `prod(2^k_i - 1)` over the clauses, ignoring unconstrained variables,
/// when clause variable sets are pairwise disjoint.
pub fn disjoint_lower_bound(formula: &CnfFormula) -> DisjointBound {
    if !formula.is_variable_disjoint() {
        return DisjointBound::Inapplicable;
    }
    formula
        .clauses()
        .iter()
        .try_fold(1u128, |acc, c| {
            let k = c.width();
            let per_clause = (k < 128).then(|| (1u128 << k) - 1)?;
            acc.checked_mul(per_clause)
        })
        .map_or(DisjointBound::Overflow, DisjointBound::Product)
}

/// How much clauses share variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OverlapStats {
    /// Variables occurring in two or more clauses.
    pub shared_variables: usize,
    /// Largest number of clauses any single variable occurs in.
    pub max_occurrences: usize,
    pub disjoint: bool,
}

pub fn overlap_stats(formula: &CnfFormula) -> OverlapStats {
    let mut occurrences = vec![0usize; formula.variable_count()];
    for clause in formula.clauses() {
        for var in clause.variables() {
            occurrences[var.slot()] += 1;
        }
    }
    let shared_variables = occurrences.iter().filter(|&&c| c >= 2).count();
    OverlapStats {
        shared_variables,
        max_occurrences: occurrences.iter().copied().max().unwrap_or(0),
        disjoint: shared_variables == 0,
    }
}

/// A clause as two bit masks over a scope: satisfied by `bits` iff some
/// positive literal's bit is set or some negative literal's bit is clear.
#[derive(Debug, Clone, Copy)]
struct ClauseMask {
    positive: u64,
    negative: u64,
}

impl ClauseMask {
    fn new(clause: &Clause, scope: &[Variable]) -> Self {
        let width = scope.len();
        let mut mask = ClauseMask {
            positive: 0,
            negative: 0,
        };
        for lit in clause.literals() {
            let pos = scope
                .binary_search(&lit.variable())
                .expect("clause variable must be in scope");
            let bit = 1u64 << (width - 1 - pos);
            if lit.is_positive() {
                mask.positive |= bit;
            } else {
                mask.negative |= bit;
            }
        }
        mask
    }

    #[inline]
    fn satisfied(&self, bits: u64) -> bool {
        (bits & self.positive) | (!bits & self.negative) != 0
    }
}

fn count_range(masks: &[ClauseMask], start: u64, end: u64) -> u64 {
    (start..end)
        .filter(|&bits| masks.iter().all(|m| m.satisfied(bits)))
        .count() as u64
}

fn enumerate_range(masks: &[ClauseMask], start: u64, end: u64) -> Vec<u64> {
    (start..end)
        .filter(|&bits| masks.iter().all(|m| m.satisfied(bits)))
        .collect()
}
