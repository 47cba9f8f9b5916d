//! Exact arithmetic over `Q` and `F_p`: scalars, polynomials, rational
//! functions, plane-model polynomials and the text syntax.

pub mod bivariate;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod scalar;

pub use bivariate::BiPoly;
pub use parse::{parse_bipoly, parse_poly, parse_rational_function, ParseError};
pub use poly::Poly;
pub use ratfun::RationalFunction;
pub use scalar::{Field, Scalar, ScalarError, DEFAULT_PRIME};
