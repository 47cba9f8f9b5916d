//! Triple covers from binary cubic forms.
//!
//! A cubic `p z^3 + q z^2 w + r z w^2 + s w^3` with coefficients of degrees
//! `(2a1 - a2, a1, a2, 2a2 - a1)` gives the algebra with basis `1, w, t`:
//!
//! ```text
//! w t = -p s,   w^2 = -p r + q w - p t,   t^2 = -q s + s w - r t
//! ```
//!
//! and basis `1, w / x^a1, t / x^a2` at infinity.

use super::algebra::{CoverAlgebra, Provenance};
use super::CoverError;
use crate::arith::{Field, Poly, RationalFunction, Scalar};
use crate::polymat::RatMatrix;

/// Coefficients `(p, q, r, s)` of a binary cubic over `k[x]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryCubic {
    pub p: Poly,
    pub q: Poly,
    pub r: Poly,
    pub s: Poly,
}

impl BinaryCubic {
    pub fn discriminant(&self) -> Poly {
        let (p, q, r, s) = (&self.p, &self.q, &self.r, &self.s);
        let qr = q * r;
        let t1 = &qr * &qr;
        let t2 = (&(p * r) * &(r * r)).scale(&Scalar::from(4));
        let t3 = (&(q * q) * &(q * s)).scale(&Scalar::from(4));
        let t4 = (&(p * p) * &(s * s)).scale(&Scalar::from(27));
        let t5 = (&(p * q) * &(r * s)).scale(&Scalar::from(18));
        &(&(&(&t1 - &t2) - &t3) - &t4) + &t5
    }

    /// Coefficient degree bounds for `O(a1) + O(a2)`.
    pub fn degree_bounds(a1: i64, a2: i64) -> [i64; 4] {
        [2 * a1 - a2, a1, a2, 2 * a2 - a1]
    }

    pub fn fits(&self, a1: i64, a2: i64) -> bool {
        let b = BinaryCubic::degree_bounds(a1, a2);
        [&self.p, &self.q, &self.r, &self.s]
            .iter()
            .zip(b)
            .all(|(c, bound)| c.is_zero() || c.deg() <= bound)
    }
}

/// The triple cover attached to a cubic fitting `O(a1) + O(a2)`.
pub fn triple_cover(
    c: &BinaryCubic,
    a1: i64,
    a2: i64,
    field: Field,
) -> Result<CoverAlgebra, CoverError> {
    if !c.fits(a1, a2) {
        return Err(CoverError::Invalid(
            "cubic coefficients exceed the degree bounds".into(),
        ));
    }
    let (p, q, r, s) = (
        c.p.in_field(field),
        c.q.in_field(field),
        c.r.in_field(field),
        c.s.in_field(field),
    );
    let z = Poly::zero;
    let mut mult = vec![vec![vec![z(); 3]; 3]; 3];
    for j in 0..3 {
        mult[0][j][j] = Poly::one();
        mult[j][0][j] = Poly::one();
    }
    mult[1][1] = vec![-&(&p * &r), q.clone(), -&p];
    mult[2][2] = vec![-&(&q * &s), s.clone(), -&r];
    let wt = vec![-&(&p * &s), z(), z()];
    mult[1][2] = wt.clone();
    mult[2][1] = wt;
    let infinity = RatMatrix::diagonal(vec![
        RationalFunction::one(),
        RationalFunction::x_pow(-a1),
        RationalFunction::x_pow(-a2),
    ]);
    CoverAlgebra::new(field, mult, infinity, Provenance::Manual)
}
