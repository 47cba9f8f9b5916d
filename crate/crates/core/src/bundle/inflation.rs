//! Elementary modifications: enlarging a bundle by a quotient of its dual
//! fiber at a point, and the cohomology such an inflation produces.

use super::lattice::BundleLattice;
use super::BundleError;
use crate::arith::{linalg, Poly, RationalFunction, Scalar};
use crate::polymat::RatMatrix;

/// `m` fiber vectors at a finite point, in affine coordinates. The induced
/// quotient of the dual fiber is `w -> (<w, s_i>)_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct InflationDatum {
    pub point: Scalar,
    pub vectors: Vec<Vec<Scalar>>,
}

impl InflationDatum {
    pub fn new(point: Scalar, vectors: Vec<Vec<Scalar>>) -> Self {
        InflationDatum { point, vectors }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn validate(&self, rank: usize) -> Result<(), BundleError> {
        if self.vectors.is_empty() || self.vectors.len() > rank {
            return Err(BundleError::DatumLength {
                len: self.vectors.len(),
                rank,
            });
        }
        if self.vectors.iter().any(|v| v.len() != rank) {
            return Err(BundleError::Dimension);
        }
        if linalg::rank(&self.vectors, rank) < self.vectors.len() {
            return Err(BundleError::DependentVectors);
        }
        Ok(())
    }
}

/// Cohomology of an inflation as predicted from sections of the dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub h0: i64,
    pub h1: i64,
    pub rank_qv: usize,
}

/// Enlarges the affine lattice by `(x - y0)^{-1} s_i`; the lattice at
/// infinity is unchanged.
pub fn inflate(b: &BundleLattice, datum: &InflationDatum) -> Result<BundleLattice, BundleError> {
    let r = b.rank();
    datum.validate(r)?;
    let m = datum.len();
    // complete s_1..s_m to a basis of k^r with standard vectors
    let mut cols: Vec<Vec<Scalar>> = datum.vectors.clone();
    for i in 0..r {
        if cols.len() == r {
            break;
        }
        let mut e = vec![Scalar::zero(); r];
        e[i] = Scalar::one();
        cols.push(e);
        if linalg::rank(&cols, r) < cols.len() {
            cols.pop();
        }
    }
    let inv_lin = RationalFunction::new(Poly::one(), Poly::linear_root(&datum.point));
    let u = RatMatrix::from_cols(
        cols.into_iter()
            .enumerate()
            .map(|(j, c)| {
                c.into_iter()
                    .map(|s| {
                        let e = RationalFunction::constant(s);
                        if j < m {
                            &e * &inv_lin
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect(),
    );
    BundleLattice::new(b.finite() * &u, b.infinity().clone())
}

/// Values at `y0` of a basis of `H^0(E^dual (x) O(-2))`, in coordinates
/// dual to the affine basis of `E`.
pub fn dual_section_values(b: &BundleLattice, y0: &Scalar) -> Vec<Vec<Scalar>> {
    b.dual()
        .global_sections(-2)
        .iter()
        .map(|c| c.iter().map(|p| p.eval(y0)).collect())
        .collect()
}

fn pairing_rank(values: &[Vec<Scalar>], datum: &InflationDatum) -> usize {
    let m = datum.len();
    let rows: Vec<Vec<Scalar>> = values
        .iter()
        .map(|c| {
            datum
                .vectors
                .iter()
                .map(|s| {
                    c.iter()
                        .zip(s)
                        .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
                })
                .collect()
        })
        .collect();
    linalg::rank(&rows, m)
}

/// `(h0 + m - rk q_V, h1 - rk q_V)` with `V` the values of the dual
/// sections at the point.
pub fn predicted_inflation(
    b: &BundleLattice,
    datum: &InflationDatum,
) -> Result<Prediction, BundleError> {
    datum.validate(b.rank())?;
    let (h0, h1) = b.splitting_type().cohomology();
    let values = dual_section_values(b, &datum.point);
    let rank_qv = pairing_rank(&values, datum);
    Ok(Prediction {
        h0: h0 + datum.len() as i64 - rank_qv as i64,
        h1: h1 - rank_qv as i64,
        rank_qv,
    })
}

/// Why no quotient in a family is guaranteed to lower `h^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoDropReason {
    /// The subspaces spanned by the data do not span the fiber.
    NotSpanning { span_rank: usize, rank: usize },
    /// Every dual section with values in `O(-2)` vanishes at the point.
    SectionsVanish,
}

#[derive(Clone, Debug, PartialEq)]
pub enum QuotientChoice {
    Effective {
        index: usize,
        datum: InflationDatum,
        h1_after: i64,
    },
    NoDrop(NoDropReason),
}

/// Picks a datum from `family` whose inflation lowers `h^1`, after
/// checking that the data jointly span the fiber.
pub fn select_effective_quotient(
    b: &BundleLattice,
    point: &Scalar,
    family: &[InflationDatum],
) -> Result<QuotientChoice, BundleError> {
    if family.is_empty() {
        return Err(BundleError::EmptyFamily);
    }
    let r = b.rank();
    for d in family {
        d.validate(r)?;
        if &d.point != point {
            return Err(BundleError::MixedPoints);
        }
    }
    let h1 = b.splitting_type().h1();
    if h1 == 0 {
        return Err(BundleError::NoFirstCohomology);
    }
    let stacked: Vec<Vec<Scalar>> = family
        .iter()
        .flat_map(|d| d.vectors.iter().cloned())
        .collect();
    let span_rank = linalg::rank(&stacked, r);
    if span_rank < r {
        return Ok(QuotientChoice::NoDrop(NoDropReason::NotSpanning {
            span_rank,
            rank: r,
        }));
    }
    let values = dual_section_values(b, point);
    if linalg::rank(&values, r) == 0 {
        return Ok(QuotientChoice::NoDrop(NoDropReason::SectionsVanish));
    }
    for (index, d) in family.iter().enumerate() {
        if pairing_rank(&values, d) == 0 {
            continue;
        }
        let h1_after = inflate(b, d)?.splitting_type().h1();
        if h1_after < h1 {
            return Ok(QuotientChoice::Effective {
                index,
                datum: d.clone(),
                h1_after,
            });
        }
    }
    // a spanning family pairs nontrivially with a nonzero value space
    Err(BundleError::PredictionMismatch)
}

/// Inflation at the point at infinity, via the coordinate flip.
pub fn inflate_at_infinity(
    b: &BundleLattice,
    vectors: Vec<Vec<Scalar>>,
) -> Result<BundleLattice, BundleError> {
    let flipped = b.flip()?;
    let datum = InflationDatum::new(Scalar::zero(), vectors);
    inflate(&flipped, &datum)?.flip()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from(v)
    }

    #[test]
    fn inflation_examples() {
        let b = BundleLattice::standard(&[-1, -1]);
        let d = InflationDatum::new(s(0), vec![vec![s(1), s(0)]]);
        let e = inflate(&b, &d).unwrap();
        assert_eq!(e.splitting_type().parts(), &[-1, 0]);
        assert_eq!(e.degree(), b.degree() + 1);
        assert_eq!(
            predicted_inflation(&b, &d).unwrap(),
            Prediction {
                h0: 1,
                h1: 0,
                rank_qv: 0
            }
        );

        let full = InflationDatum::new(s(7), vec![vec![s(1), s(0)], vec![s(0), s(1)]]);
        let b3 = BundleLattice::standard(&[3, 3]);
        assert_eq!(
            inflate(&b3, &full).unwrap().splitting_type().parts(),
            &[4, 4]
        );
    }

    #[test]
    fn generic_vector_lowers_h1() {
        let b = BundleLattice::standard(&[-2, -2]);
        let d = InflationDatum::new(s(5), vec![vec![s(3), s(-4)]]);
        let p = predicted_inflation(&b, &d).unwrap();
        assert_eq!(
            p,
            Prediction {
                h0: 0,
                h1: 1,
                rank_qv: 1
            }
        );
        assert_eq!(
            inflate(&b, &d).unwrap().splitting_type().cohomology(),
            (0, 1)
        );

        let line = BundleLattice::standard(&[-3]);
        let d1 = InflationDatum::new(s(2), vec![vec![s(6)]]);
        assert_eq!(
            predicted_inflation(&line, &d1).unwrap(),
            Prediction {
                h0: 0,
                h1: 1,
                rank_qv: 1
            }
        );
    }

    #[test]
    fn quotient_selection() {
        let b = BundleLattice::standard(&[-2, -2]);
        let fam = vec![
            InflationDatum::new(s(4), vec![vec![s(1), s(0)]]),
            InflationDatum::new(s(4), vec![vec![s(0), s(1)]]),
        ];
        match select_effective_quotient(&b, &s(4), &fam).unwrap() {
            QuotientChoice::Effective { h1_after, .. } => assert_eq!(h1_after, 1),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            select_effective_quotient(&b, &s(4), &fam[..1]).unwrap(),
            QuotientChoice::NoDrop(NoDropReason::NotSpanning {
                span_rank: 1,
                rank: 2
            })
        );
        let trivial = BundleLattice::standard(&[0, 0]);
        assert_eq!(
            select_effective_quotient(&trivial, &s(4), &fam),
            Err(BundleError::NoFirstCohomology)
        );
        assert_eq!(
            select_effective_quotient(&b, &s(4), &[]),
            Err(BundleError::EmptyFamily)
        );
    }

    #[test]
    fn dependent_vectors_rejected() {
        let b = BundleLattice::standard(&[0, 0]);
        let d = InflationDatum::new(s(0), vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert_eq!(inflate(&b, &d), Err(BundleError::DependentVectors));
    }

    #[test]
    fn inflation_at_infinity_raises_degree() {
        let b = BundleLattice::standard(&[-1, 2]);
        let e = inflate_at_infinity(&b, vec![vec![s(1), s(0)]]).unwrap();
        assert_eq!(e.degree(), b.degree() + 1);
        assert_eq!(e.splitting_type().parts(), &[0, 2]);
    }
}
