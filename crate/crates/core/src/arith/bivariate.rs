//! Polynomials in `y` with coefficients in `k[x]`, used for plane models.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::linalg::poly_det;
use super::poly::{format_terms, monomial_text, Poly};
use super::scalar::{Field, Scalar, ScalarError};

/// `sum_j c_j(x) y^j`, stored by ascending power of `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<Poly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn y() -> Self {
        BiPoly::new(vec![Poly::zero(), Poly::one()])
    }

    pub fn from_x(p: Poly) -> Self {
        BiPoly::new(vec![p])
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Poly {
        self.coeffs.get(j).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Monic in `y` with a constant leading coefficient equal to one.
    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Poly::is_one)
    }

    pub fn derivative_y(&self) -> BiPoly {
        BiPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&Scalar::from(j as i64)))
                .collect(),
        )
    }

    pub fn eval_x(&self, a: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.eval(a)).collect())
    }

    pub fn in_field(&self, field: Field) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| c.in_field(field)).collect())
    }

    pub fn try_in_field(&self, field: Field) -> Result<BiPoly, ScalarError> {
        Ok(BiPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.try_in_field(field))
                .collect::<Result<_, _>>()?,
        ))
    }

    /// `Res_y(self, other)` as the Sylvester determinant over `k[x]`.
    pub fn resultant_y(&self, other: &BiPoly) -> Poly {
        let (Some(m), Some(n)) = (self.degree_y(), other.degree_y()) else {
            return Poly::zero();
        };
        if m == 0 && n == 0 {
            return Poly::one();
        }
        let size = m + n;
        let mut rows = Vec::with_capacity(size);
        for (shifts, p, deg) in [(n, self, m), (m, other, n)] {
            for s in 0..shifts {
                let mut row = vec![Poly::zero(); size];
                for j in 0..=deg {
                    // descending powers of y from the left
                    row[s + deg - j] = p.coeff(j);
                }
                rows.push(row);
            }
        }
        poly_det(&rows)
    }

    /// `disc_y(f) = (-1)^{d(d-1)/2} Res_y(f, f_y)` for monic `f` of degree `d`.
    pub fn discriminant_y(&self) -> Poly {
        let d = self.degree_y().unwrap_or(0);
        let r = self.resultant_y(&self.derivative_y());
        let lc = self.coeffs.last().cloned().unwrap_or_else(Poly::one);
        let r = if lc.is_one() {
            r
        } else {
            r.div_exact(&lc)
                .expect("leading coefficient divides the resultant")
        };
        if (d * (d.saturating_sub(1)) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// Canonical text with `y`-powers descending, then `x`-powers descending.
    pub fn to_text(&self) -> String {
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            for (i, a) in c.coeffs().iter().enumerate().rev() {
                if !a.is_zero() {
                    terms.push((a.clone(), (i, j)));
                }
            }
        }
        format_terms(&terms, |(i, j)| {
            let (xs, ys) = (monomial_text("x", i), monomial_text("y", j));
            match (xs.is_empty(), ys.is_empty()) {
                (true, _) => ys,
                (false, true) => xs,
                (false, false) => format!("{xs}*{ys}"),
            }
        })
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![Poly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(cs: &[&[i64]]) -> BiPoly {
        BiPoly::new(cs.iter().map(|c| Poly::from_ints(c)).collect())
    }

    #[test]
    fn small_discriminants() {
        // y^2 - x
        assert_eq!(
            plane(&[&[0, -1], &[], &[1]]).discriminant_y(),
            Poly::from_ints(&[0, 4])
        );
        // y^2 - 1
        assert_eq!(
            plane(&[&[-1], &[], &[1]]).discriminant_y(),
            Poly::from_ints(&[4])
        );
        // y^3 - y - x
        assert_eq!(
            plane(&[&[0, -1], &[-1], &[], &[1]]).discriminant_y(),
            Poly::from_ints(&[4, 0, -27])
        );
    }

    #[test]
    fn text_form() {
        let f = plane(&[&[1, -1], &[0, 3], &[], &[1]]);
        assert_eq!(f.to_string(), "y^3 + 3*x*y - x + 1");
    }
}
