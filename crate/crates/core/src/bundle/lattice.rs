//! Bundles on the projective line as a pair of lattices in `k(x)^r`: a
//! `k[x]`-lattice on the affine chart and a lattice over the local ring at
//! infinity. Columns of each basis matrix span the corresponding lattice.

use serde::{Deserialize, Serialize};

use super::splitting::SplittingType;
use super::{BundleError, Chart};
use crate::arith::{linalg, parse_rational_function, Field, Poly, RationalFunction, Scalar};
use crate::polymat::{weak_popov, PolyMatrix, RatMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct BundleLattice {
    finite: RatMatrix,
    infinity: RatMatrix,
}

/// Column-reduced presentation of the affine basis relative to the basis at
/// infinity.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Change of affine basis, unimodular over `k[x]`.
    pub transform: PolyMatrix,
    /// `a_j` for the `j`-th column of `finite * transform`.
    pub parts: Vec<i64>,
}

impl BundleLattice {
    pub fn new(finite: RatMatrix, infinity: RatMatrix) -> Result<Self, BundleError> {
        let r = finite.nrows();
        if r == 0 || !finite.is_square() || !infinity.is_square() || infinity.nrows() != r {
            return Err(BundleError::Dimension);
        }
        if finite.det().is_zero() {
            return Err(BundleError::Singular(Chart::Finite));
        }
        if infinity.det().is_zero() {
            return Err(BundleError::Singular(Chart::Infinity));
        }
        Ok(BundleLattice { finite, infinity })
    }

    /// `O(a_1) + ... + O(a_r)` with bases `I` and `diag(x^{a_i})`.
    pub fn standard(parts: &[i64]) -> Self {
        let r = parts.len();
        assert!(r > 0, "rank must be positive");
        BundleLattice {
            finite: RatMatrix::identity(r),
            infinity: RatMatrix::diagonal(
                parts.iter().map(|&a| RationalFunction::x_pow(a)).collect(),
            ),
        }
    }

    pub fn rank(&self) -> usize {
        self.finite.nrows()
    }

    pub fn finite(&self) -> &RatMatrix {
        &self.finite
    }

    pub fn infinity(&self) -> &RatMatrix {
        &self.infinity
    }

    /// `deg_inf det(infinity) - deg_inf det(finite)`.
    pub fn degree(&self) -> i64 {
        self.infinity.det().degree() - self.finite.det().degree()
    }

    pub fn dual(&self) -> BundleLattice {
        BundleLattice {
            finite: self.finite.inverse().expect("valid lattice").transpose(),
            infinity: self.infinity.inverse().expect("valid lattice").transpose(),
        }
    }

    /// Tensor with `O(n)`.
    pub fn twist(&self, n: i64) -> BundleLattice {
        BundleLattice {
            finite: self.finite.clone(),
            infinity: self.infinity.scale(&RationalFunction::x_pow(n)),
        }
    }

    pub fn direct_sum(&self, other: &BundleLattice) -> BundleLattice {
        let r = self.rank() + other.rank();
        let block = |a: &RatMatrix, b: &RatMatrix| {
            let mut m = RatMatrix::zeros(r, r);
            for i in 0..a.nrows() {
                for j in 0..a.ncols() {
                    m[(i, j)] = a[(i, j)].clone();
                }
            }
            let o = a.nrows();
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    m[(o + i, o + j)] = b[(i, j)].clone();
                }
            }
            m
        };
        BundleLattice {
            finite: block(&self.finite, &other.finite),
            infinity: block(&self.infinity, &other.infinity),
        }
    }

    /// `E^dual (x) E`, whose splitting type is `(a_i - a_j)`.
    ///
    /// Both charts are moved by `infinity^{-1}` first, so the pair is
    /// `(T^{-T} (x) T, I)` and no large matrix is inverted later.
    pub fn endomorphisms(&self) -> BundleLattice {
        let t = self.transition();
        let t_dual = t.inverse().expect("valid lattice").transpose();
        let r = self.rank();
        BundleLattice {
            finite: t_dual.kron(&t),
            infinity: RatMatrix::identity(r * r),
        }
    }

    /// Same bundle with new bases `A * finite * U1` and `A * infinity * U2`.
    pub fn presented(
        &self,
        ambient: &RatMatrix,
        u_fin: &RatMatrix,
        u_inf: &RatMatrix,
    ) -> Result<Self, BundleError> {
        BundleLattice::new(
            &(ambient * &self.finite) * u_fin,
            &(ambient * &self.infinity) * u_inf,
        )
    }

    /// Pullback along `x -> 1/x`.
    ///
    /// The affine lattice of the flipped bundle is built from the basis at
    /// infinity, which needs the two bases to agree over `k[x, 1/x]`.
    pub fn flip(&self) -> Result<BundleLattice, BundleError> {
        let w = &self.finite.inverse().expect("valid lattice") * &self.infinity;
        let laurent = w.entries().all(RationalFunction::is_laurent);
        let det_monomial = w.det().as_monomial().is_some();
        if !laurent || !det_monomial {
            return Err(BundleError::NotLaurentCompatible);
        }
        BundleLattice::new(self.infinity.flip(), self.finite.flip())
    }

    /// `T = infinity^{-1} finite`, the transition between the two charts.
    pub fn transition(&self) -> RatMatrix {
        &self.infinity.inverse().expect("valid lattice") * &self.finite
    }

    /// Column reduction of the transition, which exhibits the splitting.
    pub fn reduction(&self) -> Reduction {
        let (n, q) = self.transition().clear_denominators();
        let res = weak_popov(&n.transpose()).expect("transition is nonsingular");
        let dq = q.deg();
        Reduction {
            transform: res.transform.transpose(),
            parts: res.row_degrees.iter().map(|&d| dq - d as i64).collect(),
        }
    }

    pub fn splitting_type(&self) -> SplittingType {
        SplittingType::new(self.reduction().parts)
    }

    /// Basis of `H^0(E(n))` in coordinates relative to the affine basis.
    pub fn global_sections(&self, n: i64) -> Vec<Vec<Poly>> {
        let red = self.reduction();
        let mut out = Vec::new();
        for (j, a) in red.parts.iter().enumerate() {
            let col = red.transform.col(j);
            for t in 0..=(n + a).max(-1) {
                let t = t as usize;
                out.push(col.iter().map(|p| p.shift(t)).collect());
            }
        }
        out
    }

    /// Whether `p` (affine coordinates) is a section of `E(n)`.
    pub fn is_section(&self, p: &[Poly], n: i64) -> bool {
        let v: Vec<RationalFunction> = p.iter().cloned().map(RationalFunction::from).collect();
        self.transition()
            .apply(&v)
            .iter()
            .all(|e| e.is_zero() || e.degree() <= n)
    }

    /// Bounds `(alpha, beta)` on the parts: `-alpha <= a_i <= beta`.
    pub fn part_bounds(&self) -> (i64, i64) {
        let t = self.transition();
        let alpha = t.max_degree().expect("nonsingular");
        let beta = t
            .inverse()
            .expect("nonsingular")
            .max_degree()
            .expect("nonsingular");
        (alpha, beta)
    }

    pub fn in_field(&self, field: Field) -> BundleLattice {
        BundleLattice {
            finite: self.finite.in_field(field),
            infinity: self.infinity.in_field(field),
        }
    }

    pub fn to_json(&self) -> BundleJson {
        BundleJson {
            rank: self.rank(),
            finite: self.finite.to_strings(),
            infinity: self.infinity.to_strings(),
        }
    }

    pub fn from_json(j: &BundleJson, field: Field) -> Result<Self, BundleError> {
        let parse = |rows: &[Vec<String>]| -> Result<RatMatrix, BundleError> {
            if rows.len() != j.rank || rows.iter().any(|r| r.len() != j.rank) {
                return Err(BundleError::Dimension);
            }
            let parsed = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| Ok(parse_rational_function(s)?.try_in_field(field)?))
                        .collect::<Result<Vec<_>, BundleError>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(RatMatrix::from_rows(parsed))
        };
        BundleLattice::new(parse(&j.finite)?, parse(&j.infinity)?)
    }
}

/// `H^0(E(n))` by bounded-degree linear algebra, independent of the
/// column reduction. Returns a basis in affine coordinates.
pub fn sections_by_linear_algebra(b: &BundleLattice, n: i64) -> Vec<Vec<Poly>> {
    let r = b.rank();
    let t = b.transition();
    let (_, beta) = b.part_bounds();
    let bound = beta + n;
    if bound < 0 {
        return Vec::new();
    }
    let dp = bound as usize;
    let (num, q) = t.clear_denominators();
    let cap = n + q.deg();
    // unknowns: coefficient t of p_j at column j * (dp + 1) + t
    let cols = r * (dp + 1);
    let mut rows = Vec::new();
    for i in 0..r {
        let top = (0..r)
            .filter_map(|j| num[(i, j)].degree())
            .max()
            .unwrap_or(0)
            + dp;
        for e in 0..=top {
            if (e as i64) <= cap {
                continue;
            }
            let mut row = vec![Scalar::zero(); cols];
            for j in 0..r {
                for s in 0..=dp.min(e) {
                    row[j * (dp + 1) + s] = num[(i, j)].coeff(e - s);
                }
            }
            rows.push(row);
        }
    }
    let kernel = if rows.is_empty() {
        (0..cols)
            .map(|c| {
                let mut v = vec![Scalar::zero(); cols];
                v[c] = Scalar::one();
                v
            })
            .collect()
    } else {
        linalg::echelon(&rows, cols).kernel()
    };
    kernel
        .into_iter()
        .map(|v| {
            (0..r)
                .map(|j| Poly::new(v[j * (dp + 1)..(j + 1) * (dp + 1)].to_vec()))
                .collect()
        })
        .collect()
}

/// Splitting type from the jumps of `n -> h^0(E(n))`, using only
/// [`sections_by_linear_algebra`].
pub fn splitting_type_from_profile(b: &BundleLattice) -> SplittingType {
    let r = b.rank();
    let (alpha, beta) = b.part_bounds();
    let mut parts = Vec::new();
    let mut prev_h0 = 0usize;
    let mut prev_delta = 0usize;
    for n in -beta..=alpha {
        let h0 = sections_by_linear_algebra(b, n).len();
        // delta(n) = #{i : a_i >= -n}
        let delta = h0 - prev_h0;
        for _ in prev_delta..delta {
            parts.push(-n);
        }
        prev_h0 = h0;
        prev_delta = delta;
        if delta == r {
            break;
        }
    }
    SplittingType::new(parts)
}

/// Serialized bundle: rows of the two basis matrices as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleJson {
    pub rank: usize,
    pub finite: Vec<Vec<String>>,
    pub infinity: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        parse_rational_function(s).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| rf(s)).collect())
                .collect(),
        )
    }

    #[test]
    fn standard_pairs() {
        let b = BundleLattice::new(
            RatMatrix::identity(2),
            mat(&[&["x^2", "0"], &["0", "x^-1"]]),
        )
        .unwrap();
        assert_eq!(b.splitting_type().parts(), &[-1, 2]);
        assert_eq!(b.dual().splitting_type().parts(), &[-2, 1]);
        assert_eq!(b.degree(), 1);
        assert_eq!(splitting_type_from_profile(&b).parts(), &[-1, 2]);
    }

    #[test]
    fn non_diagonal_pair_is_balanced() {
        let b =
            BundleLattice::new(RatMatrix::identity(2), mat(&[&["x", "1"], &["0", "x"]])).unwrap();
        assert_eq!(b.splitting_type().parts(), &[1, 1]);
        assert_eq!(splitting_type_from_profile(&b).parts(), &[1, 1]);
        assert_eq!(b.global_sections(0).len(), 4);
        assert_eq!(sections_by_linear_algebra(&b, 0).len(), 4);
    }

    #[test]
    fn sections_of_standard_bundles() {
        let b = BundleLattice::standard(&[1, -1]);
        let s = b.global_sections(0);
        assert_eq!(
            s,
            vec![
                vec![Poly::one(), Poly::zero()],
                vec![Poly::x(), Poly::zero()]
            ]
        );
        assert!(BundleLattice::standard(&[-1, -1])
            .global_sections(0)
            .is_empty());
        for v in &s {
            assert!(b.is_section(v, 0));
        }
    }

    #[test]
    fn twist_flip_and_end() {
        let b = BundleLattice::standard(&[-2, 0, 3]);
        assert_eq!(b.twist(2).splitting_type().parts(), &[0, 2, 5]);
        assert_eq!(b.flip().unwrap().splitting_type().parts(), &[-2, 0, 3]);
        let e = b.endomorphisms().splitting_type();
        assert_eq!(e.h1(), b.splitting_type().end_h1());
    }

    #[test]
    fn json_round_trip() {
        let b = BundleLattice::new(RatMatrix::identity(2), mat(&[&["x", "1"], &["0", "x^-1"]]))
            .unwrap();
        let j = b.to_json();
        let back = BundleLattice::from_json(&j, Field::Rational).unwrap();
        assert_eq!(back, b);
    }
}
