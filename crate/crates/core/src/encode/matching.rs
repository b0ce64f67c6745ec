use super::{EncodeWarning, Encoding, Graph, Problem, VariableMeaning};
use crate::formula::{Clause, CnfFormula, Literal, Variable};

fn var(index: usize) -> Variable {
    Variable::new(u32::try_from(index).expect("variable index fits u32")).expect("1-based")
}

/// One variable per edge (in `Graph::edges` order). Each vertex gets an
/// at-least-one clause over its incident edges and pairwise at-most-one
/// clauses. An isolated vertex gets a fresh variable `u` with clauses
/// `(u)` and `(~u)`, plus a warning.
pub fn encode_perfect_matching(graph: &Graph) -> Encoding {
    let mut variables: Vec<VariableMeaning> = graph.edges().map(|(a, b)| VariableMeaning::Edge { a, b }).collect();
    let mut clauses = Vec::new();
    let mut warnings = Vec::new();
    for v in 0..graph.vertex_count() {
        let incident: Vec<Literal> = graph.incident_edges(v).iter().map(|&e| var(e + 1).positive()).collect();
        if incident.is_empty() {
            variables.push(VariableMeaning::Isolated { vertex: v });
            let u = var(variables.len());
            clauses.push(Clause::new([u.positive()]).expect("unit"));
            clauses.push(Clause::new([u.negative()]).expect("unit"));
            warnings.push(EncodeWarning::IsolatedVertex { vertex: v });
            continue;
        }
        clauses.push(Clause::new(incident.iter().copied()).expect("distinct edges"));
        for (i, &e) in incident.iter().enumerate() {
            for &f in &incident[i + 1..] {
                clauses.push(Clause::new([e.negate(), f.negate()]).expect("distinct edges"));
            }
        }
    }
    let formula = CnfFormula::new(variables.len(), clauses).expect("variables in range");
    Encoding {
        problem: Problem::PerfectMatching,
        formula,
        variables,
        warnings,
    }
}
