//! Compositionality checks, semantic growth measurement, and
//! classification into ComCDF / SemiExpCDF / ExpCDF.

mod classify;
mod compositionality;
mod growth;

pub use classify::{
    classify, verdict_for, wide_clause_fraction, CdfClassification, Verdict, DEFAULT_THETA, SEMI_EXP_RULE,
};
pub use compositionality::{
    both_routes, check_compositionality, ComposedResult, CompositionalityReport, CompositionalityStatus, ForcedSet,
    Witness,
};
pub use growth::{fit_growth, measure_growth, CountRoute, GrowthError, GrowthFit, GrowthModel, GrowthSample};
