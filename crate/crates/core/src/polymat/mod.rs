//! Matrices over `k[x]`: weak Popov form, kernel lattices of pointwise
//! conditions and lattice membership.

pub mod kernel;
pub mod matrix;
pub mod popov;

pub use kernel::{
    constrained_kernel_basis, solve_in_lattice, unimodular_completion, Constraint, KernelBasis,
    LatticeError, LatticeSolver,
};
pub use matrix::{Entry, Matrix, PolyMatrix, RatMatrix, Singular};
pub use popov::{is_unimodular, is_weak_popov, weak_popov, PopovError, PopovResult};
