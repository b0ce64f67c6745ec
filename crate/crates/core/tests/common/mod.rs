#![allow(dead_code)]

use cdfsat::CnfFormula;
use proptest::prelude::*;

/// Clauses as signed DIMACS literals, tautologies and empties removed.
pub type Raw = (usize, Vec<Vec<i64>>);

pub fn raw_formula(max_vars: usize, max_clauses: usize, widths: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Raw> {
    (1..=max_vars).prop_flat_map(move |n| {
        let lit = (1..=n as i64, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v });
        let clause = proptest::collection::vec(lit, widths.clone()).prop_filter_map("tautology", |mut c| {
            let mut seen = Vec::new();
            c.retain(|l| {
                let fresh = !seen.contains(l);
                seen.push(*l);
                fresh
            });
            (!c.iter().any(|l| c.contains(&-l))).then_some(c)
        });
        (Just(n), proptest::collection::vec(clause, 0..=max_clauses))
    })
}

pub fn build(raw: &Raw) -> CnfFormula {
    let rows: Vec<&[i64]> = raw.1.iter().map(Vec::as_slice).collect();
    CnfFormula::from_dimacs_clauses(raw.0, &rows).unwrap()
}

/// Value of variable `v` (1-based) in row `bits`, first variable most
/// significant.
pub fn value(n: usize, bits: u64, v: i64) -> bool {
    bits >> (n - v.unsigned_abs() as usize) & 1 == 1
}

pub fn naive_satisfies(raw: &Raw, bits: u64) -> bool {
    raw.1
        .iter()
        .all(|c| c.iter().any(|&l| value(raw.0, bits, l) == (l > 0)))
}

pub fn naive_count(raw: &Raw) -> u128 {
    (0..1u64 << raw.0).filter(|&b| naive_satisfies(raw, b)).count() as u128
}

/// Formulas where every clause has width in `widths` (>= 1), built from
/// distinct variables.
pub fn exact_width_formula(max_vars: usize, max_clauses: usize, widths: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Raw> {
    let min = *widths.start();
    (min.max(1)..=max_vars).prop_flat_map(move |n| {
        let vars: Vec<i64> = (1..=n as i64).collect();
        let clause = widths
            .clone()
            .prop_filter("width", move |&k| k <= n)
            .prop_flat_map(move |k| {
                (proptest::sample::subsequence(vars.clone(), k), proptest::collection::vec(any::<bool>(), k))
            })
            .prop_map(|(vs, signs)| vs.into_iter().zip(signs).map(|(v, neg)| if neg { -v } else { v }).collect());
        (Just(n), proptest::collection::vec(clause, 1..=max_clauses))
    })
}
