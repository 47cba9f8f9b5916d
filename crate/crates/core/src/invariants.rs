//! Dimension counts for Hurwitz spaces and Maroni loci, the degree-3
//! realizability criterion with a witness search, and degree sequences of
//! filtrations with prescribed gaps.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{Field, Poly};
use crate::bundle::SplittingType;
use crate::cover::{triple_cover, BinaryCubic, CoverError};
use crate::rng::{general_scalar, trial_rng};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("negative Tschirnhausen degree b = {0}")]
    NegativeB(i64),
    #[error("degree must be at least 2")]
    SmallDegree,
    #[error("splitting type has rank {rank} and degree {degree}, expected rank {want_rank} and degree {want_degree}")]
    Inconsistent {
        rank: usize,
        degree: i64,
        want_rank: usize,
        want_degree: i64,
    },
    #[error("need 1 <= a1 <= a2, got ({0}, {1})")]
    BadPair(i64, i64),
    #[error("({0}, {1}) is not realizable: a2 > 2 a1")]
    NotRealizable(i64, i64),
    #[error("no witness in {attempts} attempts")]
    Exhausted {
        attempts: usize,
        stats: MirandaStats,
    },
    #[error("rank must be positive")]
    ZeroRank,
    #[error("gap must be nonnegative")]
    NegativeGap,
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// Degree `d`, source genus `g` and base genus `g_Y` of a cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HurwitzParams {
    pub d: i64,
    pub g: i64,
    pub g_y: i64,
}

impl HurwitzParams {
    pub fn new(d: i64, g: i64, g_y: i64) -> Result<Self, InvariantError> {
        if d < 2 {
            return Err(InvariantError::SmallDegree);
        }
        Ok(HurwitzParams { d, g, g_y })
    }

    /// `b = g - 1 - d (g_Y - 1)`, the degree of the Tschirnhausen bundle.
    pub fn b(&self) -> i64 {
        self.g - 1 - self.d * (self.g_y - 1)
    }
}

/// `2b`, checked against `(2g - 2) - d (2 g_Y - 2)`.
pub fn hurwitz_dimension(p: &HurwitzParams) -> Result<i64, InvariantError> {
    let b = p.b();
    if b < 0 {
        return Err(InvariantError::NegativeB(b));
    }
    let other = (2 * p.g - 2) - p.d * (2 * p.g_y - 2);
    assert_eq!(2 * b, other, "the two dimension formulas disagree");
    Ok(2 * b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MaroniCounts {
    pub b: i64,
    pub hurwitz_dim: i64,
    pub hilb_dim: i64,
    pub affine_group_dim: i64,
    pub maroni_dim: i64,
    pub codim: i64,
}

/// Expected dimension of the locus of covers with Tschirnhausen bundle `t`.
pub fn maroni_expected(
    t: &SplittingType,
    p: &HurwitzParams,
) -> Result<MaroniCounts, InvariantError> {
    let b = p.b();
    let want_rank = (p.d - 1) as usize;
    if t.rank() != want_rank || t.degree() != b {
        return Err(InvariantError::Inconsistent {
            rank: t.rank(),
            degree: t.degree(),
            want_rank,
            want_degree: b,
        });
    }
    let hurwitz_dim = hurwitz_dimension(p)?;
    let e = t.end_h1();
    let base = p.d * (p.d - 1) * (p.g_y - 1);
    let hilb_dim = 3 * b - base;
    let affine_group_dim = b - base + e;
    Ok(MaroniCounts {
        b,
        hurwitz_dim,
        hilb_dim,
        affine_group_dim,
        maroni_dim: hilb_dim - affine_group_dim,
        codim: e,
    })
}

/// Smooth triple covers with scrollar invariants `a1 <= a2` exist iff `a2 <= 2 a1`.
pub fn miranda_realizable(a1: i64, a2: i64) -> Result<bool, InvariantError> {
    if a1 < 1 || a2 < a1 {
        return Err(InvariantError::BadPair(a1, a2));
    }
    Ok(a2 <= 2 * a1)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MirandaStats {
    pub zero_discriminant: usize,
    pub not_squarefree: usize,
    pub singular_at_infinity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MirandaWitness {
    pub a1: i64,
    pub a2: i64,
    pub cubic: BinaryCubic,
    pub discriminant: Poly,
    /// Order of the discriminant at infinity, `2 (a1 + a2) - deg disc`.
    pub infinity_order: i64,
    pub attempt: usize,
    pub stats: MirandaStats,
}

fn random_coeff<R: Rng + ?Sized>(rng: &mut R, bound: i64, field: Field) -> Poly {
    if bound < 0 {
        return Poly::zero();
    }
    Poly::new((0..=bound).map(|_| general_scalar(rng, field)).collect())
}

/// Random cubic fitting `O(a1) + O(a2)`.
pub fn random_cubic<R: Rng + ?Sized>(rng: &mut R, a1: i64, a2: i64, field: Field) -> BinaryCubic {
    let [bp, bq, br, bs] = BinaryCubic::degree_bounds(a1, a2);
    BinaryCubic {
        p: random_coeff(rng, bp, field),
        q: random_coeff(rng, bq, field),
        r: random_coeff(rng, br, field),
        s: random_coeff(rng, bs, field),
    }
}

/// `Ok(infinity order)` when the cubic defines a smooth cover: squarefree
/// discriminant, and order at most one at infinity.
pub fn check_smooth(
    c: &BinaryCubic,
    a1: i64,
    a2: i64,
    stats: &mut MirandaStats,
) -> Option<(Poly, i64)> {
    let disc = c.discriminant();
    if disc.is_zero() {
        stats.zero_discriminant += 1;
        return None;
    }
    if disc.is_squarefree() != Some(true) {
        stats.not_squarefree += 1;
        return None;
    }
    let inf = 2 * (a1 + a2) - disc.deg();
    if inf > 1 {
        stats.singular_at_infinity += 1;
        return None;
    }
    Some((disc, inf))
}

/// Searches random sections for a smooth triple cover with invariants `(a1, a2)`.
pub fn miranda_construct(
    a1: i64,
    a2: i64,
    attempts: usize,
    seed: u64,
    field: Field,
) -> Result<MirandaWitness, InvariantError> {
    if !miranda_realizable(a1, a2)? {
        return Err(InvariantError::NotRealizable(a1, a2));
    }
    let mut stats = MirandaStats::default();
    for attempt in 0..attempts {
        let mut rng = trial_rng(
            "miranda-construct",
            seed ^ ((a1 as u64) << 32 | a2 as u64),
            attempt as u64,
        );
        let cubic = random_cubic(&mut rng, a1, a2, field);
        if let Some((discriminant, infinity_order)) = check_smooth(&cubic, a1, a2, &mut stats) {
            return Ok(MirandaWitness {
                a1,
                a2,
                cubic,
                discriminant,
                infinity_order,
                attempt,
                stats,
            });
        }
    }
    Err(InvariantError::Exhausted { attempts, stats })
}

/// Splitting type of the cover built from a witness.
pub fn witness_type(w: &MirandaWitness, field: Field) -> Result<SplittingType, InvariantError> {
    Ok(triple_cover(&w.cubic, w.a1, w.a2, field)?
        .tschirnhausen()?
        .bundle)
}

/// For a pair with `a2 > 2 a1` the leading coefficient is forced to vanish;
/// counts how many random sections of that shape fail to be smooth.
pub fn miranda_degenerate_diagnostic(
    a1: i64,
    a2: i64,
    trials: usize,
    seed: u64,
    field: Field,
) -> (usize, MirandaStats) {
    let mut stats = MirandaStats::default();
    let mut failures = 0;
    for t in 0..trials {
        let mut rng = trial_rng(
            "miranda-degenerate",
            seed ^ ((a1 as u64) << 32 | a2 as u64),
            t as u64,
        );
        let cubic = random_cubic(&mut rng, a1, a2, field);
        if check_smooth(&cubic, a1, a2, &mut stats).is_none() {
            failures += 1;
        }
    }
    (failures, stats)
}

/// Degrees `deg L_1, ..., deg L_r` of a filtration with gaps at least `n`
/// and total degree `e`: `L_i = -(r - i) n` for `i < r` after twisting to
/// nonnegative degree, the top quotient taking the remainder.
pub fn filtration_degrees(r: usize, e: i64, n: i64) -> Result<Vec<i64>, InvariantError> {
    if r == 0 {
        return Err(InvariantError::ZeroRank);
    }
    if n < 0 {
        return Err(InvariantError::NegativeGap);
    }
    let ri = r as i64;
    let twist = if e < 0 { (-e + ri - 1) / ri } else { 0 };
    let working = e + ri * twist;
    let mut degs: Vec<i64> = (1..ri).map(|i| -(ri - i) * n).collect();
    let rest: i64 = degs.iter().sum();
    degs.push(working - rest);
    Ok(degs.into_iter().map(|x| x - twist).collect())
}

/// Special fiber of the degeneration of a bundle of type `t` to a sum of
/// line bundles with gaps at least `n`.
pub fn rees_degeneration_target(
    t: &SplittingType,
    n: i64,
) -> Result<SplittingType, InvariantError> {
    Ok(SplittingType::new(filtration_degrees(
        t.rank(),
        t.degree(),
        n,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hurwitz_examples() {
        assert_eq!(
            hurwitz_dimension(&HurwitzParams::new(3, 7, 2).unwrap()).unwrap(),
            6
        );
        assert_eq!(
            hurwitz_dimension(&HurwitzParams::new(2, 0, 0).unwrap()).unwrap(),
            2
        );
        assert_eq!(
            hurwitz_dimension(&HurwitzParams::new(3, 0, 0).unwrap()).unwrap(),
            4
        );
        assert_eq!(
            hurwitz_dimension(&HurwitzParams::new(3, 0, 1).unwrap()),
            Err(InvariantError::NegativeB(-1))
        );
    }

    #[test]
    fn maroni_example() {
        let p = HurwitzParams::new(3, 2, 0).unwrap();
        let m = maroni_expected(&SplittingType::new(vec![1, 3]), &p).unwrap();
        assert_eq!((m.codim, m.maroni_dim, m.hurwitz_dim), (1, 7, 8));
        let bal = maroni_expected(&SplittingType::new(vec![2, 2]), &p).unwrap();
        assert_eq!((bal.codim, bal.maroni_dim), (0, 8));
    }

    #[test]
    fn miranda_predicate() {
        assert!(miranda_realizable(1, 2).unwrap());
        assert!(!miranda_realizable(1, 3).unwrap());
        assert!(miranda_realizable(2, 4).unwrap());
        assert!(miranda_realizable(3, 2).is_err());
        assert!(matches!(
            miranda_construct(1, 3, 10, 0, Field::Rational),
            Err(InvariantError::NotRealizable(1, 3))
        ));
    }

    #[test]
    fn witnesses_have_the_right_type() {
        for (a1, a2) in [(1, 1), (1, 2)] {
            let w = miranda_construct(a1, a2, 100, 5, Field::Rational).unwrap();
            assert!(w.discriminant.deg() <= 2 * (a1 + a2));
            assert_eq!(
                witness_type(&w, Field::Rational).unwrap().parts(),
                &[a1, a2]
            );
        }
        let (fails, _) = miranda_degenerate_diagnostic(1, 3, 100, 5, Field::Rational);
        assert_eq!(fails, 100);
    }

    #[test]
    fn filtration_examples() {
        assert_eq!(filtration_degrees(3, 0, 2).unwrap(), vec![-4, -2, 6]);
        assert_eq!(filtration_degrees(1, 5, 99).unwrap(), vec![5]);
        let two = filtration_degrees(2, 3, 0).unwrap();
        assert_eq!(two.iter().sum::<i64>(), 3);
        assert!(two[0] <= two[1]);
        assert_eq!(
            rees_degeneration_target(&SplittingType::new(vec![1, 1]), 3)
                .unwrap()
                .parts(),
            &[-3, 5]
        );
        assert_eq!(
            rees_degeneration_target(&SplittingType::new(vec![7]), 4)
                .unwrap()
                .parts(),
            &[7]
        );
    }
}
