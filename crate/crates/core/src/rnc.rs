//! Rational normal curves through the coordinate points and the pairing
//! between their cotangent directions and sections `(ux + v) G / F`.

use rand::Rng;
use thiserror::Error;

use crate::arith::{linalg, Field, Poly, RationalFunction, Scalar};
use crate::rng::{distinct_points, general_scalar, general_unit, trial_rng};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RncError {
    #[error("need at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },
    #[error("a and b must have the same length")]
    LengthMismatch,
    #[error("the points a_i must be pairwise distinct")]
    RepeatedPoint,
    #[error("the weights b_i must be nonzero")]
    ZeroWeight,
    #[error("(u, v) must not both vanish")]
    ZeroSection,
}

/// Points `a_i` and weights `b_i` of the curve
/// `x -> [b_1 F/(x - a_1) : ... : b_d F/(x - a_d)]`, `F = prod (x - a_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RncData {
    a: Vec<Scalar>,
    b: Vec<Scalar>,
}

impl RncData {
    pub fn new(a: Vec<Scalar>, b: Vec<Scalar>) -> Result<Self, RncError> {
        if a.len() != b.len() {
            return Err(RncError::LengthMismatch);
        }
        if a.len() < 2 {
            return Err(RncError::TooFewPoints {
                min: 2,
                got: a.len(),
            });
        }
        for (i, ai) in a.iter().enumerate() {
            if a[..i].contains(ai) {
                return Err(RncError::RepeatedPoint);
            }
        }
        if b.iter().any(Scalar::is_zero) {
            return Err(RncError::ZeroWeight);
        }
        Ok(RncData { a, b })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, d: usize, field: Field) -> Self {
        let a = distinct_points(rng, d, &[], field);
        let b = (0..d).map(|_| general_unit(rng, field)).collect();
        RncData { a, b }
    }

    pub fn d(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Scalar] {
        &self.a
    }

    pub fn b(&self) -> &[Scalar] {
        &self.b
    }

    pub fn f(&self) -> Poly {
        Poly::from_roots(&self.a)
    }

    /// `b_i F / (x - a_i)`.
    pub fn components(&self) -> Vec<Poly> {
        let f = self.f();
        self.a
            .iter()
            .zip(&self.b)
            .map(|(ai, bi)| {
                f.div_exact(&Poly::linear_root(ai))
                    .expect("a_i is a root of F")
                    .scale(bi)
            })
            .collect()
    }

    /// `G = sum_i b_i F / (x - a_i)`, the pullback of the hyperplane `sum Y_i`.
    pub fn g(&self) -> Poly {
        self.components()
            .iter()
            .fold(Poly::zero(), |acc, c| &acc + c)
    }

    /// Ordered pairs `(i, j)`, `i != j`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let d = self.d();
        (0..d)
            .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect()
    }
}

/// Parametrization and transversality to the hyperplane `sum Y_i = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RncReport {
    pub components: Vec<Poly>,
    pub g: Poly,
    /// At `x = a_i` only the `i`-th component is nonzero.
    pub coordinate_points_hit: bool,
    pub g_squarefree: bool,
    /// Intersection multiplicity of the curve with the hyperplane at `x = infinity`.
    pub infinity_multiplicity: usize,
    pub transverse: bool,
}

pub fn rnc_parametrize(r: &RncData) -> RncReport {
    let components = r.components();
    let g = r.g();
    let coordinate_points_hit = r.a.iter().enumerate().all(|(i, ai)| {
        components
            .iter()
            .enumerate()
            .all(|(k, c)| c.eval(ai).is_zero() == (k != i))
    });
    let g_squarefree = !g.is_zero() && g.is_squarefree() == Some(true);
    let infinity_multiplicity = match g.degree() {
        Some(dg) => r.d() - 1 - dg,
        None => r.d() - 1,
    };
    RncReport {
        transverse: g_squarefree && infinity_multiplicity <= 1,
        components,
        g,
        coordinate_points_hit,
        g_squarefree,
        infinity_multiplicity,
    }
}

fn check_section(r: &RncData, u: &Scalar, v: &Scalar) -> Result<(), RncError> {
    if r.d() < 3 {
        return Err(RncError::TooFewPoints { min: 3, got: r.d() });
    }
    if u.is_zero() && v.is_zero() {
        return Err(RncError::ZeroSection);
    }
    Ok(())
}

/// `b_i (u a_j + v) / (a_j - a_i)` over the ordered pairs `(i, j)`.
pub fn lingen_values(r: &RncData, u: &Scalar, v: &Scalar) -> Result<Vec<Scalar>, RncError> {
    check_section(r, u, v)?;
    Ok(r.pairs()
        .into_iter()
        .map(|(i, j)| {
            let (ai, aj) = (&r.a[i], &r.a[j]);
            let num = &r.b[i] * &(&(u * aj) + v);
            &num / &(aj - ai)
        })
        .collect())
}

/// The same pairing from the geometry: the differential `d(Y_i/Y_j)` at
/// the `j`-th coordinate point, pulled back to the parameter line, paired
/// with the residue there of the section `(ux + v) G / F`.
pub fn lingen_oracle(r: &RncData, u: &Scalar, v: &Scalar) -> Result<Vec<Scalar>, RncError> {
    check_section(r, u, v)?;
    let comps = r.components();
    let f = r.f();
    let fprime = f.derivative();
    let section_num = &Poly::new(vec![v.clone(), u.clone()]) * &r.g();
    Ok(r.pairs()
        .into_iter()
        .map(|(i, j)| {
            let aj = &r.a[j];
            let ratio = RationalFunction::new(comps[i].clone(), comps[j].clone());
            let pulled_back = ratio
                .derivative()
                .eval(aj)
                .expect("Y_j is nonzero at its coordinate point");
            let residue = &section_num.eval(aj) / &fprime.eval(aj);
            &pulled_back * &residue
        })
        .collect())
}

/// Rank of the two columns `(u, v) = (1, 0), (0, 1)`.
pub fn lingen_line_rank(r: &RncData) -> Result<usize, RncError> {
    let c1 = lingen_values(r, &Scalar::one(), &Scalar::zero())?;
    let c2 = lingen_values(r, &Scalar::zero(), &Scalar::one())?;
    Ok(linalg::rank(&[c1.clone(), c2], c1.len()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LingenRank {
    pub d: usize,
    pub trials: usize,
    pub rank: usize,
    /// Full rank proves the pairings are linearly independent functions.
    pub full: bool,
}

/// Stacks sampled pairing vectors and returns their rank.
pub fn lingen_rank(
    d: usize,
    trials: usize,
    seed: u64,
    field: Field,
) -> Result<LingenRank, RncError> {
    if d < 3 {
        return Err(RncError::TooFewPoints { min: 3, got: d });
    }
    let rows: Vec<Vec<Scalar>> = (0..trials as u64)
        .map(|t| {
            let mut rng = trial_rng("lingen-rank", seed, t);
            let data = RncData::random(&mut rng, d, field);
            let (u, v) = loop {
                let u = general_scalar(&mut rng, field);
                let v = general_scalar(&mut rng, field);
                if !(u.is_zero() && v.is_zero()) {
                    break (u, v);
                }
            };
            lingen_values(&data, &u, &v).expect("valid sample")
        })
        .collect();
    let cols = d * (d - 1);
    let rank = linalg::rank(&rows, cols);
    Ok(LingenRank {
        d,
        trials,
        rank,
        full: rank == cols,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from(v)
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| s(x)).collect()
    }

    #[test]
    fn parametrization_example() {
        let r = RncData::new(ints(&[0, 1, 2]), ints(&[1, 1, 1])).unwrap();
        let rep = rnc_parametrize(&r);
        assert_eq!(
            rep.components,
            vec![
                Poly::from_ints(&[2, -3, 1]),
                Poly::from_ints(&[0, -2, 1]),
                Poly::from_ints(&[0, -1, 1])
            ]
        );
        assert_eq!(
            rep.components
                .iter()
                .map(|c| c.eval(&s(0)))
                .collect::<Vec<_>>(),
            ints(&[2, 0, 0])
        );
        assert_eq!(rep.g, Poly::from_ints(&[2, -6, 3]));
        assert!(rep.coordinate_points_hit && rep.transverse);

        let flat = RncData::new(ints(&[0, 1, 2]), ints(&[1, -2, 1])).unwrap();
        let rep = rnc_parametrize(&flat);
        assert_eq!(rep.infinity_multiplicity, 2);
        assert!(!rep.transverse);
    }

    #[test]
    fn pairing_entries() {
        let r = RncData::new(ints(&[0, 1, 2]), ints(&[1, 1, 1])).unwrap();
        let pairs = r.pairs();
        let col = lingen_values(&r, &s(1), &s(0)).unwrap();
        let at = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
        // 1-based pairs (1,2) and (2,1)
        assert_eq!(col[at(0, 1)], s(1));
        assert_eq!(col[at(1, 0)], s(0));
        let col2 = lingen_values(&r, &s(0), &s(1)).unwrap();
        assert_eq!(col2[at(0, 1)], s(1));
        assert_eq!(lingen_oracle(&r, &s(1), &s(0)).unwrap(), col);
        assert_eq!(lingen_line_rank(&r).unwrap(), 2);
    }

    #[test]
    fn ranks_are_full() {
        assert_eq!(lingen_rank(3, 40, 1, Field::Rational).unwrap().rank, 6);
        let few = lingen_rank(3, 3, 1, Field::Rational).unwrap();
        assert!(few.rank <= 3 && !few.full);
    }
}
