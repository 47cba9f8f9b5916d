//! Weak Popov form by Mulders–Storjohann row reduction.

use thiserror::Error;

use super::matrix::PolyMatrix;
use crate::arith::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct PopovResult {
    pub reduced: PolyMatrix,
    /// Unimodular, with `transform * input = reduced`.
    pub transform: PolyMatrix,
    pub row_degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PopovError {
    #[error("rank-deficient input: rank {rank} of {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("empty matrix")]
    Empty,
}

/// Rightmost column of maximal degree, with that degree.
fn pivot(m: &PolyMatrix, i: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for j in 0..m.ncols() {
        if let Some(d) = m[(i, j)].degree() {
            if best.is_none_or(|(_, bd)| d >= bd) {
                best = Some((j, d));
            }
        }
    }
    best
}

/// `row_t -= c x^s row_s` in both the matrix and the transform.
fn eliminate(m: &mut PolyMatrix, u: &mut PolyMatrix, t: usize, s: usize, c: &Scalar, shift: usize) {
    for mat in [m, u] {
        for j in 0..mat.ncols() {
            let src = &mat[(s, j)];
            if src.is_zero() {
                continue;
            }
            let delta = src.scale(c).shift(shift);
            mat[(t, j)] = &mat[(t, j)] - &delta;
        }
    }
}

/// Reduces the rows of `input` to weak Popov form.
///
/// A zero row appearing during reduction proves rank deficiency; the
/// reduction then continues on the remaining rows to report the rank.
pub fn weak_popov(input: &PolyMatrix) -> Result<PopovResult, PopovError> {
    if input.nrows() == 0 || input.ncols() == 0 {
        return Err(PopovError::Empty);
    }
    let n = input.nrows();
    let mut m = input.clone();
    let mut u = PolyMatrix::identity(n);
    let mut dead = vec![false; n];
    loop {
        let mut owner: Vec<Option<(usize, usize)>> = vec![None; m.ncols()];
        let mut collision = None;
        for i in 0..n {
            if dead[i] {
                continue;
            }
            let Some((c, d)) = pivot(&m, i) else {
                dead[i] = true;
                continue;
            };
            match owner[c] {
                None => owner[c] = Some((i, d)),
                Some((k, dk)) => {
                    collision = Some((c, i, d, k, dk));
                    break;
                }
            }
        }
        let Some((c, i, d, k, dk)) = collision else {
            break;
        };
        // reduce the row of larger degree by the other
        let (t, s, dt, ds) = if d >= dk {
            (i, k, d, dk)
        } else {
            (k, i, dk, d)
        };
        let coef = &m[(t, c)].leading() / &m[(s, c)].leading();
        eliminate(&mut m, &mut u, t, s, &coef, dt - ds);
    }
    let rank = dead.iter().filter(|z| !**z).count();
    if rank < n {
        return Err(PopovError::RankDeficient { rank, rows: n });
    }
    let row_degrees = m
        .row_degrees()
        .into_iter()
        .map(|d| d.expect("nonzero row"))
        .collect();
    Ok(PopovResult {
        reduced: m,
        transform: u,
        row_degrees,
    })
}

/// Whether pivots of the nonzero rows are pairwise distinct.
pub fn is_weak_popov(m: &PolyMatrix) -> bool {
    let mut seen = vec![false; m.ncols()];
    for i in 0..m.nrows() {
        match pivot(m, i) {
            None => return false,
            Some((c, _)) if seen[c] => return false,
            Some((c, _)) => seen[c] = true,
        }
    }
    true
}

/// Nonzero constant determinant.
pub fn is_unimodular(u: &PolyMatrix) -> bool {
    let d = u.det();
    !d.is_zero() && d.is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Poly;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn check(m: &PolyMatrix) -> PopovResult {
        let r = weak_popov(m).unwrap();
        assert_eq!(&r.transform * m, r.reduced);
        assert!(is_unimodular(&r.transform));
        assert!(is_weak_popov(&r.reduced));
        r
    }

    #[test]
    fn unimodular_input_reduces_to_degree_zero() {
        let m = PolyMatrix::from_rows(vec![
            vec![p(&[1, 0, 1]), p(&[0, 1])],
            vec![p(&[0, 1]), p(&[1])],
        ]);
        let r = check(&m);
        assert_eq!(r.row_degrees, vec![0, 0]);
        assert!(r.reduced.det().is_constant());
    }

    #[test]
    fn diagonal_already_reduced() {
        let m = PolyMatrix::diagonal(vec![p(&[0, 0, 0, 1]), p(&[0, 1])]);
        let r = check(&m);
        assert_eq!(r.row_degrees, vec![3, 1]);
        assert!(r.transform.is_identity());
    }

    #[test]
    fn hand_reduced_example() {
        // second row minus first row leaves (0, x): degrees (2, 1), det x^3
        let m = PolyMatrix::from_rows(vec![
            vec![p(&[0, 0, 1]), p(&[0, 0, 1])],
            vec![p(&[0, 0, 1]), p(&[0, 1, 1])],
        ]);
        let r = check(&m);
        assert_eq!(r.row_degrees, vec![2, 1]);
        assert_eq!(m.det(), p(&[0, 0, 0, 1]));
        let again = weak_popov(&r.reduced).unwrap();
        assert_eq!(again.reduced, r.reduced);
        assert!(again.transform.is_identity());
    }

    #[test]
    fn rank_deficiency_reported() {
        let m = PolyMatrix::from_rows(vec![
            vec![p(&[0, 1]), p(&[1])],
            vec![p(&[0, 0, 1]), p(&[0, 1])],
        ]);
        assert_eq!(
            weak_popov(&m),
            Err(PopovError::RankDeficient { rank: 1, rows: 2 })
        );
    }
}
