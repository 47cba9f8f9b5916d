//! Covers of the projective line as algebras `phi_* O_X`: a multiplication
//! table over `k[x]` on the affine chart plus a basis at infinity.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::CoverError;
use crate::arith::{parse_poly, parse_rational_function, Field, Poly, RationalFunction, Scalar};
use crate::bundle::{BundleLattice, SplittingType};
use crate::polymat::RatMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Plane,
    Kummer,
    Pinched,
    Manual,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Plane => "plane",
            Provenance::Kummer => "kummer",
            Provenance::Pinched => "pinched",
            Provenance::Manual => "manual",
        };
        f.write_str(s)
    }
}

/// A finite flat algebra over the projective line.
///
/// The affine basis is `e_0 = 1, e_1, ..., e_{d-1}` with
/// `e_i e_j = sum_k mult[i][j][k] e_k`. Column `j` of `infinity` expresses
/// the `j`-th basis element at infinity in terms of the `e_i`, with the
/// first one equal to `1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverAlgebra {
    d: usize,
    field: Field,
    mult: Vec<Vec<Vec<Poly>>>,
    infinity: RatMatrix,
    provenance: Provenance,
}

/// The Tschirnhausen bundle `E` of a cover.
#[derive(Clone, Debug, PartialEq)]
pub struct Tschirnhausen {
    /// `E^dual` as the trace-zero part of the algebra; absent in degree 1.
    pub dual: Option<BundleLattice>,
    pub bundle: SplittingType,
}

/// Structure constants at infinity: `f_i f_j = sum_k c[i][j][k] f_k`.
pub type InfinityTable = Vec<Vec<Vec<RationalFunction>>>;

impl CoverAlgebra {
    /// Validates and builds an algebra.
    pub fn new(
        field: Field,
        mult: Vec<Vec<Vec<Poly>>>,
        infinity: RatMatrix,
        provenance: Provenance,
    ) -> Result<Self, CoverError> {
        let d = mult.len();
        if d == 0 {
            return Err(CoverError::Invalid("degree must be positive".into()));
        }
        field.check_degree(d)?;
        let a = CoverAlgebra {
            d,
            field,
            mult,
            infinity,
            provenance,
        };
        a.validate()?;
        Ok(a)
    }

    /// The split cover `O^d` with idempotent basis after the unit.
    pub fn split(d: usize, field: Field) -> Result<Self, CoverError> {
        let mut mult = vec![vec![vec![Poly::zero(); d]; d]; d];
        for (i, row) in mult.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                if i == 0 {
                    entry[j] = Poly::one();
                } else if j == 0 || i == j {
                    entry[i] = Poly::one();
                }
            }
        }
        CoverAlgebra::new(field, mult, RatMatrix::identity(d), Provenance::Manual)
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn mult(&self) -> &[Vec<Vec<Poly>>] {
        &self.mult
    }

    pub fn infinity(&self) -> &RatMatrix {
        &self.infinity
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub(crate) fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    /// Product of two elements given in affine coordinates.
    pub fn multiply(&self, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.d];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let uv = ui * vj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.mult[i][j][k];
                    if !c.is_zero() {
                        *o = &*o + &(&uv * c);
                    }
                }
            }
        }
        out
    }

    /// Product over `k(x)`.
    pub fn multiply_rat(
        &self,
        u: &[RationalFunction],
        v: &[RationalFunction],
    ) -> Vec<RationalFunction> {
        let mut out = vec![RationalFunction::zero(); self.d];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let uv = ui * vj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.mult[i][j][k];
                    if !c.is_zero() {
                        *o = &*o + &(&uv * &RationalFunction::from(c.clone()));
                    }
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<(), CoverError> {
        let d = self.d;
        let bad = |s: &str| Err(CoverError::Invalid(s.into()));
        if self
            .mult
            .iter()
            .any(|m| m.len() != d || m.iter().any(|c| c.len() != d))
        {
            return bad("multiplication tensor has the wrong shape");
        }
        if self.infinity.nrows() != d || self.infinity.ncols() != d {
            return bad("infinity transition has the wrong shape");
        }
        let m = &self.mult;
        for j in 0..d {
            for k in 0..d {
                let delta = if j == k { Poly::one() } else { Poly::zero() };
                if m[0][j][k] != delta || m[j][0][k] != delta {
                    return bad("e_0 is not a unit");
                }
            }
        }
        for i in 0..d {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return bad("multiplication is not commutative");
                }
            }
        }
        // (e_i e_j) e_l = e_i (e_j e_l)
        for i in 1..d {
            for j in 1..d {
                for l in 1..d {
                    let mut lhs = vec![Poly::zero(); d];
                    let mut rhs = vec![Poly::zero(); d];
                    for k in 0..d {
                        let a = &m[i][j][k];
                        let b = &m[j][l][k];
                        for t in 0..d {
                            if !a.is_zero() && !m[k][l][t].is_zero() {
                                lhs[t] = &lhs[t] + &(a * &m[k][l][t]);
                            }
                            if !b.is_zero() && !m[i][k][t].is_zero() {
                                rhs[t] = &rhs[t] + &(b * &m[i][k][t]);
                            }
                        }
                    }
                    if lhs != rhs {
                        return bad("multiplication is not associative");
                    }
                }
            }
        }
        let mut unit = vec![RationalFunction::zero(); d];
        unit[0] = RationalFunction::one();
        if self.infinity.col(0) != unit {
            return bad("first basis element at infinity is not 1");
        }
        let table = self
            .infinity_table()
            .ok_or_else(|| CoverError::Invalid("infinity transition is singular".into()))?;
        if table
            .iter()
            .flatten()
            .flatten()
            .any(|c| !c.is_zero() && c.degree() > 0)
        {
            return bad("basis at infinity is not closed under multiplication");
        }
        Ok(())
    }

    /// Structure constants of the basis at infinity.
    pub fn infinity_table(&self) -> Option<InfinityTable> {
        // T = n / q and T^{-1} = m / h, so f_i f_j = m (n_i n_j) / (h q^2)
        let (m, h) = self.infinity.inverse().ok()?.clear_denominators();
        let (n, q) = self.infinity.clear_denominators();
        let cols = n.cols_vec();
        let den = &h * &(&q * &q);
        let d = self.d;
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in i..d {
                let prod = self.multiply(&cols[i], &cols[j]);
                let c: Vec<RationalFunction> = m
                    .apply(&prod)
                    .into_iter()
                    .map(|p| RationalFunction::new(p, den.clone()))
                    .collect();
                table[i][j] = c.clone();
                table[j][i] = c;
            }
        }
        Some(table)
    }

    /// `tr(e_i)`: traces of multiplication by the basis elements.
    pub fn traces(&self) -> Vec<Poly> {
        (0..self.d)
            .map(|i| (0..self.d).fold(Poly::zero(), |acc, k| &acc + &self.mult[i][k][k]))
            .collect()
    }

    /// Gram matrix `tr(e_i e_j)`.
    pub fn trace_form(&self) -> Vec<Vec<Poly>> {
        let tr = self.traces();
        (0..self.d)
            .map(|i| {
                (0..self.d)
                    .map(|j| {
                        (0..self.d).fold(Poly::zero(), |acc, k| {
                            &acc + &(&self.mult[i][j][k] * &tr[k])
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Determinant of the trace form: the discriminant of the affine order.
    pub fn discriminant(&self) -> Poly {
        crate::arith::linalg::poly_det(&self.trace_form())
    }

    /// The fiber over `y` is reduced when the trace form is nondegenerate there.
    pub fn is_etale_at(&self, y: &Scalar) -> bool {
        !self.discriminant().eval(y).is_zero()
    }

    /// Whether `values` (images of `e_0..e_{d-1}`) is a `k`-algebra map from
    /// the fiber over `y` to `k`.
    pub fn is_fiber_point(&self, y: &Scalar, values: &[Scalar]) -> bool {
        if values.len() != self.d || !values[0].is_one() {
            return false;
        }
        for i in 0..self.d {
            for j in i..self.d {
                let rhs = (0..self.d).fold(Scalar::zero(), |acc, k| {
                    &acc + &(&self.mult[i][j][k].eval(y) * &values[k])
                });
                if &values[i] * &values[j] != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// The dual Tschirnhausen bundle (trace-zero part of the algebra) and
    /// the splitting type of the Tschirnhausen bundle itself.
    pub fn tschirnhausen(&self) -> Result<Tschirnhausen, CoverError> {
        if self.discriminant().is_zero() {
            return Err(CoverError::DegenerateTrace);
        }
        let r = self.d - 1;
        if r == 0 {
            return Ok(Tschirnhausen {
                dual: None,
                bundle: SplittingType::new(Vec::new()),
            });
        }
        // Projection v -> v - tr(v)/d maps e_i to a vector whose coordinates
        // 1..d-1 are those of e_i, so the trace-zero part has the identity
        // as affine basis and the lower-right block of the transition at
        // infinity as basis there.
        let mut g = RatMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                g[(i, j)] = self.infinity[(i + 1, j + 1)].clone();
            }
        }
        let dual = BundleLattice::new(RatMatrix::identity(r), g)
            .map_err(|_| CoverError::DegenerateTrace)?;
        let bundle = dual.splitting_type().dual();
        Ok(Tschirnhausen {
            dual: Some(dual),
            bundle,
        })
    }

    /// `(branch degree, arithmetic genus)` as `(2 deg E, deg E + 1 - d)`.
    pub fn branch_and_genus(&self) -> Result<(i64, i64), CoverError> {
        let deg = self.tschirnhausen()?.bundle.degree();
        Ok((2 * deg, deg + 1 - self.d as i64))
    }

    /// The same cover in the coordinate `1/x`, with the basis at infinity
    /// as new affine basis. Needs Laurent structure constants at infinity.
    pub fn flip(&self) -> Result<CoverAlgebra, CoverError> {
        let not = || CoverError::NotFlippable;
        let laurent = self.infinity.entries().all(RationalFunction::is_laurent);
        if !laurent || self.infinity.det().as_monomial().is_none() {
            return Err(not());
        }
        let table = self.infinity_table().ok_or_else(not)?;
        let mut mult = vec![vec![vec![Poly::zero(); self.d]; self.d]; self.d];
        for i in 0..self.d {
            for j in 0..self.d {
                for k in 0..self.d {
                    let c = &table[i][j][k];
                    if !c.is_laurent() {
                        return Err(not());
                    }
                    let f = c.flip();
                    mult[i][j][k] = f.as_poly().cloned().ok_or_else(not)?;
                }
            }
        }
        let t_inv = self.infinity.inverse().map_err(|_| not())?;
        CoverAlgebra::new(self.field, mult, t_inv.flip(), self.provenance)
    }

    pub fn to_json(&self) -> CoverJson {
        CoverJson {
            d: self.d,
            char: self.field.characteristic(),
            mult: self
                .mult
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|c| c.iter().map(|p| p.to_string()).collect())
                        .collect()
                })
                .collect(),
            infinity: self.infinity.to_strings(),
            provenance: self.provenance,
        }
    }

    pub fn from_json(j: &CoverJson) -> Result<Self, CoverError> {
        let field = Field::from_characteristic(j.char)?;
        if j.mult.len() != j.d || j.infinity.len() != j.d {
            return Err(CoverError::Invalid(
                "dimensions do not match the degree".into(),
            ));
        }
        let mult = j
            .mult
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| {
                        c.iter()
                            .map(|s| Ok(parse_poly(s)?.try_in_field(field)?))
                            .collect()
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<Vec<Poly>>>, CoverError>>()?;
        let rows = j
            .infinity
            .iter()
            .map(|r| {
                if r.len() != j.d {
                    return Err(CoverError::Invalid(
                        "infinity transition has the wrong shape".into(),
                    ));
                }
                r.iter()
                    .map(|s| Ok(parse_rational_function(s)?.try_in_field(field)?))
                    .collect::<Result<Vec<_>, CoverError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        CoverAlgebra::new(field, mult, RatMatrix::from_rows(rows), j.provenance)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub d: usize,
    pub char: u64,
    pub mult: Vec<Vec<Vec<String>>>,
    pub infinity: Vec<Vec<String>>,
    pub provenance: Provenance,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_cover_is_trivial() {
        for d in 1..5 {
            let a = CoverAlgebra::split(d, Field::Rational).unwrap();
            let e = a.tschirnhausen().unwrap().bundle;
            assert_eq!(e.parts(), vec![0; d - 1].as_slice());
            assert_eq!(a.branch_and_genus().unwrap(), (0, 1 - d as i64));
        }
    }

    #[test]
    fn broken_tables_rejected() {
        let mut mult = vec![vec![vec![Poly::zero(); 2]; 2]; 2];
        mult[0][0][0] = Poly::one();
        mult[0][1][1] = Poly::one();
        mult[1][0][1] = Poly::one();
        mult[1][1][0] = Poly::x();
        let ok = CoverAlgebra::new(
            Field::Rational,
            mult.clone(),
            RatMatrix::identity(2),
            Provenance::Manual,
        );
        // y^2 = x with basis (1, y) at infinity is not closed: y^2 = x has a pole
        assert!(matches!(ok, Err(CoverError::Invalid(_))));
        mult[1][0][1] = Poly::zero();
        let bad = CoverAlgebra::new(
            Field::Rational,
            mult,
            RatMatrix::identity(2),
            Provenance::Manual,
        );
        assert!(matches!(bad, Err(CoverError::Invalid(_))));
    }

    #[test]
    fn json_round_trip() {
        let a = CoverAlgebra::split(3, Field::Prime(7)).unwrap();
        let j = a.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: CoverJson = serde_json::from_str(&text).unwrap();
        assert_eq!(CoverAlgebra::from_json(&back).unwrap().to_json(), j);
    }
}
