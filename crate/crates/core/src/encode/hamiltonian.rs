use super::{EncodeError, Encoding, Graph, Problem, VariableMeaning};
use crate::formula::{Clause, CnfFormula, Literal, Variable};

/// CNF variable for "vertex `v` at position `p`" in an `n`-vertex graph.
pub fn position_variable(n: usize, vertex: usize, position: usize) -> Variable {
    let index = vertex * n + position + 1;
    Variable::new(u32::try_from(index).expect("variable index fits u32")).expect("1-based")
}

/// Position encoding with `n * n` variables. Every position holds exactly
/// one vertex, every vertex takes exactly one position, and non-adjacent
/// vertices never sit at cyclically consecutive positions.
pub fn encode_hamiltonian_cycle(graph: &Graph) -> Result<Encoding, EncodeError> {
    let n = graph.vertex_count();
    if n < 3 {
        return Err(EncodeError::TooFewVertices { vertex_count: n });
    }
    let x = |v: usize, p: usize| position_variable(n, v, p).positive();
    let mut clauses = Vec::new();
    let mut exactly_one = |lits: Vec<Literal>| {
        clauses.push(Clause::new(lits.iter().copied()).expect("distinct"));
        for (i, &a) in lits.iter().enumerate() {
            for &b in &lits[i + 1..] {
                clauses.push(Clause::new([a.negate(), b.negate()]).expect("distinct"));
            }
        }
    };
    for p in 0..n {
        exactly_one((0..n).map(|v| x(v, p)).collect());
    }
    for v in 0..n {
        exactly_one((0..n).map(|p| x(v, p)).collect());
    }
    for v in 0..n {
        for w in 0..n {
            if v == w || graph.has_edge(v, w) {
                continue;
            }
            for p in 0..n {
                clauses.push(Clause::new([x(v, p).negate(), x(w, (p + 1) % n).negate()]).expect("distinct"));
            }
        }
    }
    let variables = (0..n)
        .flat_map(|vertex| (0..n).map(move |position| VariableMeaning::Position { vertex, position }))
        .collect();
    Ok(Encoding {
        problem: Problem::HamiltonianCycle,
        formula: CnfFormula::new(n * n, clauses).expect("variables in range"),
        variables,
        warnings: Vec::new(),
    })
}
