//! Tschirnhausen bundles of covers of the projective line.

pub mod arith;
pub mod bundle;
pub mod cover;
pub mod invariants;
pub mod polymat;
pub mod rnc;
pub mod rng;
pub mod suites;
