//! Covers given by a plane model `f(x, y) = 0`, monic in `y`.

use serde::{Deserialize, Serialize};

use super::algebra::{CoverAlgebra, Provenance};
use super::CoverError;
use crate::arith::{parse_bipoly, BiPoly, Field, Poly, RationalFunction};
use crate::bundle::Chart;
use crate::polymat::RatMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneModel {
    f: BiPoly,
}

/// Data certifying that the visible orders are maximal on both charts.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCertificate {
    pub discriminant: Poly,
    /// Slope `num/den` (lowest terms) of the weights `y ~ x^slope` at infinity.
    pub slope: (i64, i64),
    /// Exponents `ceil(j * slope)` of the basis `y^j / x^{w_j}` at infinity.
    pub weights: Vec<i64>,
    /// Order of the discriminant of the basis at infinity.
    pub infinity_order: i64,
}

impl PlaneCertificate {
    /// Branch degree read off the discriminant on both charts.
    pub fn branch_degree(&self) -> i64 {
        self.discriminant.deg() + self.infinity_order
    }
}

impl PlaneModel {
    /// Rejects models that are not monic in `y` of degree at least one.
    pub fn new(f: BiPoly) -> Result<Self, CoverError> {
        if f.degree_y().unwrap_or(0) == 0 {
            return Err(CoverError::NotMonic);
        }
        if !f.is_monic() {
            return Err(CoverError::NotMonic);
        }
        Ok(PlaneModel { f })
    }

    pub fn parse(text: &str) -> Result<Self, CoverError> {
        PlaneModel::new(parse_bipoly(text)?)
    }

    pub fn f(&self) -> &BiPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree_y().expect("nonzero")
    }

    pub fn in_field(&self, field: Field) -> PlaneModel {
        PlaneModel {
            f: self.f.in_field(field),
        }
    }

    /// Smallest rational `s` with `deg c_i <= (d - i) s` for all `i`.
    fn slope(&self) -> (i64, i64) {
        let d = self.degree() as i64;
        let mut best = (0i64, 1i64);
        for (i, c) in self.f.coeffs().iter().enumerate().take(d as usize) {
            if let Some(deg) = c.degree() {
                let (num, den) = (deg as i64, d - i as i64);
                if num * best.1 > best.0 * den {
                    best = (num, den);
                }
            }
        }
        let g = gcd(best.0, best.1);
        (best.0 / g, best.1 / g)
    }

    /// Checks maximality of the affine order (squarefree discriminant) and
    /// of the order at infinity spanned by `y^j / x^{ceil(j s)}`.
    ///
    /// At infinity the order is maximal when its discriminant has order at
    /// most 1, or when the Newton polygon is a single segment of slope
    /// `a/b` and the order is at most `d - d/b`, the least possible order
    /// of the discriminant of a tamely ramified fiber of that shape.
    pub fn certify(&self) -> Result<PlaneCertificate, CoverError> {
        let d = self.degree() as i64;
        let disc = self.f.discriminant_y();
        if disc.is_zero() || disc.is_squarefree() != Some(true) {
            return Err(CoverError::MaximalityNotCertified(Chart::Finite));
        }
        let (a, b) = self.slope();
        let weights: Vec<i64> = (0..d).map(|j| ceil_div(j * a, b)).collect();
        let infinity_order = 2 * weights.iter().sum::<i64>() - disc.deg();
        let single_segment = self.f.coeffs()[0].deg() * b == a * d;
        let ok = infinity_order <= 1 || (single_segment && infinity_order <= d - d / b);
        if infinity_order < 0 || !ok {
            return Err(CoverError::MaximalityNotCertified(Chart::Infinity));
        }
        Ok(PlaneCertificate {
            discriminant: disc,
            slope: (a, b),
            weights,
            infinity_order,
        })
    }

    /// Multiplication table of `1, y, ..., y^{d-1}` modulo `f`.
    fn table(&self) -> Vec<Vec<Vec<Poly>>> {
        let d = self.degree();
        // powers[k] = y^k reduced, for k <= 2d - 2
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(2 * d - 1);
        for k in 0..d {
            let mut v = vec![Poly::zero(); d];
            v[k] = Poly::one();
            powers.push(v);
        }
        for _ in d..2 * d - 1 {
            let prev = powers.last().expect("nonempty");
            let top = prev[d - 1].clone();
            let mut next = vec![Poly::zero(); d];
            for i in 1..d {
                next[i] = prev[i - 1].clone();
            }
            for (i, n) in next.iter_mut().enumerate() {
                let c = self.f.coeff(i);
                if !c.is_zero() {
                    *n = &*n - &(&top * &c);
                }
            }
            powers.push(next);
        }
        (0..d)
            .map(|i| (0..d).map(|j| powers[i + j].clone()).collect())
            .collect()
    }

    pub fn try_in_field(&self, field: Field) -> Result<PlaneModel, CoverError> {
        PlaneModel::new(self.f.try_in_field(field)?)
    }

    pub fn to_cover(&self, field: Field) -> Result<CoverAlgebra, CoverError> {
        from_plane_model(&self.in_field(field), field)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs().max(1)
    } else {
        gcd(b, a % b)
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// The algebra `k[x][y]/(f)` with the weighted basis at infinity.
pub fn from_plane_model(m: &PlaneModel, field: Field) -> Result<CoverAlgebra, CoverError> {
    let m = m.try_in_field(field)?;
    field.check_degree(m.degree())?;
    let cert = m.certify()?;
    let infinity = RatMatrix::diagonal(
        cert.weights
            .iter()
            .map(|&w| RationalFunction::x_pow(-w))
            .collect(),
    );
    CoverAlgebra::new(field, m.table(), infinity, Provenance::Plane)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneJson {
    pub f: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(s: &str) -> Result<CoverAlgebra, CoverError> {
        from_plane_model(&PlaneModel::parse(s)?, Field::Rational)
    }

    #[test]
    fn elliptic_double_cover() {
        let a = cover("y^2 - (x^3 - x)").unwrap();
        assert_eq!(a.tschirnhausen().unwrap().bundle.parts(), &[2]);
        assert_eq!(a.branch_and_genus().unwrap(), (4, 1));
        let cert = PlaneModel::parse("y^2 - x^3 + x")
            .unwrap()
            .certify()
            .unwrap();
        assert_eq!(cert.branch_degree(), 4);
    }

    #[test]
    fn nodal_model_rejected() {
        assert_eq!(
            cover("y^2 - x^2"),
            Err(CoverError::MaximalityNotCertified(Chart::Finite))
        );
    }

    #[test]
    fn trinomial_cubic_uses_fractional_slope() {
        let a = cover("y^3 - y - x").unwrap();
        assert_eq!(a.tschirnhausen().unwrap().bundle.parts(), &[1, 1]);
        let cert = PlaneModel::parse("y^3 - y - x").unwrap().certify().unwrap();
        assert_eq!(cert.discriminant, Poly::from_ints(&[4, 0, -27]));
        assert_eq!(cert.branch_degree(), 4);
    }

    #[test]
    fn non_monic_rejected() {
        assert_eq!(PlaneModel::parse("x*y^2 - 1"), Err(CoverError::NotMonic));
    }
}
