//! Structural-complexity analysis of CNF formulas.
//!
//! A formula is looked at in three layers: its clauses (syntax), the set
//! of assignments that satisfy them (semantics), and what a reasoner can
//! derive from them (logic). This crate computes each layer exactly at
//! desk scale and checks whether going through the semantic layer
//! (clauses read as implications, then closed under modus ponens) gives
//! the same forced literals as reasoning on the clauses directly (unit
//! propagation). See the guide under `book/` for the concepts.

pub mod cdf;
pub mod dimacs;
pub mod dpll;
pub mod encode;
pub mod formula;
pub mod generate;
pub mod implication;
pub mod proof;
pub mod propagate;
pub mod semantic;

pub use formula::{Assignment, Clause, CnfFormula, FormulaError, Literal, Variable};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/layers.md")]
    mod layers {}
    #[doc = include_str!("../../../book/src/semantic-image.md")]
    mod semantic_image {}
    #[doc = include_str!("../../../book/src/compositionality.md")]
    mod compositionality {}
    #[doc = include_str!("../../../book/src/dpll-traces.md")]
    mod dpll_traces {}
    #[doc = include_str!("../../../book/src/growth.md")]
    mod growth {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/graph-encodings.md")]
    mod graph_encodings {}
    #[doc = include_str!("../../../book/src/proof-kit.md")]
    mod proof_kit {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
