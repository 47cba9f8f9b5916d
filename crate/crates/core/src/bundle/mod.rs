//! Vector bundles on the projective line: splitting types, sections,
//! duals and twists, and inflations at points.

pub mod inflation;
pub mod lattice;
pub mod random;
pub mod splitting;

use thiserror::Error;

use crate::arith::{ParseError, ScalarError};

pub use inflation::{
    dual_section_values, inflate, inflate_at_infinity, predicted_inflation,
    select_effective_quotient, InflationDatum, NoDropReason, Prediction, QuotientChoice,
};
pub use lattice::{
    sections_by_linear_algebra, splitting_type_from_profile, BundleJson, BundleLattice, Reduction,
};
pub use splitting::{cohomology, end_h1, SplittingReport, SplittingType};

/// The two standard charts of the projective line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    Finite,
    Infinity,
}

impl std::fmt::Display for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Chart::Finite => "finite",
            Chart::Infinity => "infinity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("basis matrices must be square of the same positive size")]
    Dimension,
    #[error("{0} chart basis singular")]
    Singular(Chart),
    #[error("inflation datum has {len} vectors for rank {rank}")]
    DatumLength { len: usize, rank: usize },
    #[error("inflation vectors are linearly dependent")]
    DependentVectors,
    #[error("empty family of quotients")]
    EmptyFamily,
    #[error("quotients are not all at the same point")]
    MixedPoints,
    #[error("bundle has no first cohomology")]
    NoFirstCohomology,
    #[error("the two charts do not agree over k[x, 1/x]")]
    NotLaurentCompatible,
    #[error("no quotient lowered h1 although the value space pairs nontrivially")]
    PredictionMismatch,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Field(#[from] ScalarError),
}
