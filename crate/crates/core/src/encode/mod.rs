//! CNF encodings of graph problems, plus the Eulerian-path degree test,
//! which needs no formula at all.

mod euler;
mod graph;
mod hamiltonian;
mod matching;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::dimacs::write_dimacs_with_comments;
use crate::formula::CnfFormula;

pub use euler::{eulerian_path_exists, EulerDecision, EULER_NOTE};
pub use graph::{parse_edge_list, Graph, GraphError};
pub use hamiltonian::{encode_hamiltonian_cycle, position_variable};
pub use matching::encode_perfect_matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    PerfectMatching,
    HamiltonianCycle,
}

/// What a CNF variable stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum VariableMeaning {
    Edge { a: usize, b: usize },
    Position { vertex: usize, position: usize },
    /// Auxiliary variable pinned both ways for an isolated vertex.
    Isolated { vertex: usize },
}

impl fmt::Display for VariableMeaning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariableMeaning::Edge { a, b } => write!(f, "edge {a}-{b} in matching"),
            VariableMeaning::Position { vertex, position } => write!(f, "vertex {vertex} at position {position}"),
            VariableMeaning::Isolated { vertex } => write!(f, "vertex {vertex} has no edge (contradiction)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Error)]
#[serde(tag = "kind", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum EncodeWarning {
    #[error("vertex {vertex} is isolated; encoded as an immediate contradiction")]
    IsolatedVertex { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("Hamiltonian cycle encoding needs at least 3 vertices, got {vertex_count}")]
    TooFewVertices { vertex_count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Encoding {
    pub problem: Problem,
    pub formula: CnfFormula,
    /// `variables[i]` describes CNF variable `i + 1`.
    pub variables: Vec<VariableMeaning>,
    pub warnings: Vec<EncodeWarning>,
}

impl Encoding {
    /// DIMACS text with a comment block mapping variables to graph
    /// semantics.
    pub fn to_dimacs(&self) -> String {
        let problem = match self.problem {
            Problem::PerfectMatching => "perfect matching",
            Problem::HamiltonianCycle => "Hamiltonian cycle",
        };
        let mut comments = vec![format!("{problem} encoding")];
        comments.extend(self.warnings.iter().map(|w| format!("warning: {w}")));
        comments.extend(
            self.variables
                .iter()
                .enumerate()
                .map(|(i, m)| format!("x{} = {m}", i + 1)),
        );
        write_dimacs_with_comments(&self.formula, &comments)
    }
}
