//! Seeded random k-SAT instances.
//!
//! All randomness comes from a ChaCha8 stream seeded with
//! [`SeedableRng::seed_from_u64`], so a `(n, m, k, seed, disjoint)` tuple
//! names exactly one formula.
//!
//! * disjoint mode shuffles `1..=n` once and cuts consecutive blocks of `k`
//!   variables, one block per clause;
//! * otherwise each clause draws `k` distinct variables independently
//!   (sorted by index inside the clause).
//!
//! Each literal then gets a fair-coin polarity.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::{Clause, CnfFormula, Literal, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("clause width must be at least 1")]
    ZeroWidth,
    #[error("clause width {k} exceeds the {n} available variables")]
    WidthExceedsVariables { k: usize, n: usize },
    #[error("{m} disjoint clauses of width {k} need {needed} variables, only {n} available")]
    DisjointInfeasible {
        n: usize,
        m: usize,
        k: usize,
        needed: usize,
    },
}

/// Parameters of a random k-SAT draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KSatParams {
    pub variables: usize,
    pub clauses: usize,
    pub width: usize,
    pub seed: u64,
    pub disjoint: bool,
}

pub fn generate_random_ksat(params: KSatParams) -> Result<CnfFormula, GenerateError> {
    let KSatParams {
        variables: n,
        clauses: m,
        width: k,
        seed,
        disjoint,
    } = params;
    if k == 0 {
        return Err(GenerateError::ZeroWidth);
    }
    if disjoint {
        let needed = m.checked_mul(k).unwrap_or(usize::MAX);
        if needed > n {
            return Err(GenerateError::DisjointInfeasible { n, m, k, needed });
        }
    } else if m > 0 && k > n {
        return Err(GenerateError::WidthExceedsVariables { k, n });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let var = |slot: usize| Variable::new(slot as u32 + 1).expect("slot + 1 >= 1");
    let mut clauses = Vec::with_capacity(m);

    if disjoint {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        for block in order.chunks_exact(k).take(m) {
            let lits: Vec<Literal> = block
                .iter()
                .map(|&slot| Literal::new(var(slot), rng.random_bool(0.5)))
                .collect();
            clauses.push(Clause::new(lits).expect("distinct variables"));
        }
    } else {
        for _ in 0..m {
            let mut slots = index::sample(&mut rng, n, k).into_vec();
            slots.sort_unstable();
            let lits: Vec<Literal> = slots
                .into_iter()
                .map(|slot| Literal::new(var(slot), rng.random_bool(0.5)))
                .collect();
            clauses.push(Clause::new(lits).expect("distinct variables"));
        }
    }
    Ok(CnfFormula::new(n, clauses).expect("variables drawn from 1..=n"))
}
