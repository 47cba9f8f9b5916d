//! Finite covers of the projective line as explicit algebras, and their
//! Tschirnhausen bundles.

pub mod algebra;
pub mod embedding;
pub mod kummer;
pub mod pinch;
pub mod plane;
pub mod triple;

use thiserror::Error;

use crate::arith::{ParseError, ScalarError};

pub use crate::bundle::Chart;
pub use algebra::{CoverAlgebra, CoverJson, InfinityTable, Provenance, Tschirnhausen};
pub use embedding::{normalize_affine_embedding, Normalization};
pub use kummer::{kummer_branch_degree, kummer_cover, kummer_type};
pub use pinch::{
    build_tower, pinch, pinch_with_basis, Node, PinchPoint, PinchSpec, Pinched, Tower, TowerStep,
};
pub use plane::{from_plane_model, PlaneCertificate, PlaneJson, PlaneModel};
pub use triple::{triple_cover, BinaryCubic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error("trace form is degenerate")]
    DegenerateTrace,
    #[error("plane model must be monic in y of positive degree")]
    NotMonic,
    #[error("maximality not certified on the {0} chart")]
    MaximalityNotCertified(Chart),
    #[error("polynomial is not squarefree of positive degree")]
    NotSquarefree,
    #[error("pinch points must be distinct")]
    RepeatedPinchPoint,
    #[error("sheet vector is not a point of the fiber")]
    NotAFiberPoint,
    #[error("base cover is ramified at a pinch point")]
    RamifiedPinchPoint,
    #[error("not an isomorphism on the {0} chart")]
    NotAnIsomorphism(Chart),
    #[error("structure constants at infinity are not Laurent polynomials in 1/x")]
    NotFlippable,
    #[error(transparent)]
    Field(#[from] ScalarError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
