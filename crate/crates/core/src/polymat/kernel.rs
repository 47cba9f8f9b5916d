//! Lattices cut out by pointwise linear conditions, and lattice membership.

use thiserror::Error;

use super::matrix::{PolyMatrix, RatMatrix, Singular};
use super::popov::weak_popov;
use crate::arith::{Poly, RationalFunction, Scalar};

/// A condition `functional . v(point) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub point: Scalar,
    pub functional: Vec<Scalar>,
}

impl Constraint {
    pub fn new(point: Scalar, functional: Vec<Scalar>) -> Self {
        Constraint { point, functional }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelBasis {
    /// Rows form a basis of the kernel lattice.
    pub basis: PolyMatrix,
    /// Number of constraints that cut the lattice down.
    pub independent: usize,
    /// Indices of constraints already implied by earlier ones, or zero.
    pub skipped: Vec<usize>,
}

fn pairing(functional: &[Scalar], row: &[Poly], at: &Scalar) -> Scalar {
    functional
        .iter()
        .zip(row)
        .filter(|(c, _)| !c.is_zero())
        .fold(Scalar::zero(), |acc, (c, p)| &acc + &(c * &p.eval(at)))
}

/// Basis of `{ v in k[x]^n : functional . v(point) = 0 for every constraint }`.
///
/// Constraints are imposed one at a time: a row with nonzero pairing and
/// least degree absorbs the condition, the others are corrected by it, and
/// weak Popov reduction keeps degrees small.
pub fn constrained_kernel_basis(n: usize, constraints: &[Constraint]) -> KernelBasis {
    let mut basis = PolyMatrix::identity(n);
    let mut independent = 0;
    let mut skipped = Vec::new();
    for (idx, c) in constraints.iter().enumerate() {
        assert_eq!(
            c.functional.len(),
            n,
            "functional length must match the rank"
        );
        let rows = basis.rows_vec();
        let vals: Vec<Scalar> = rows
            .iter()
            .map(|r| pairing(&c.functional, r, &c.point))
            .collect();
        let degrees = basis.row_degrees();
        let Some(k) = (0..n)
            .filter(|&i| !vals[i].is_zero())
            .min_by_key(|&i| degrees[i])
        else {
            skipped.push(idx);
            continue;
        };
        let inv = vals[k].inv().expect("nonzero");
        for i in 0..n {
            if i == k || vals[i].is_zero() {
                continue;
            }
            let f = &vals[i] * &inv;
            let row: Vec<Poly> = rows[i]
                .iter()
                .zip(&rows[k])
                .map(|(a, b)| a - &b.scale(&f))
                .collect();
            basis.set_row(i, row);
        }
        let lin = Poly::linear_root(&c.point);
        basis.set_row(k, rows[k].iter().map(|p| p * &lin).collect());
        basis = weak_popov(&basis)
            .expect("kernel lattice has full rank")
            .reduced;
        independent += 1;
    }
    KernelBasis {
        basis,
        independent,
        skipped,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("vector is not in the lattice")]
    NotInLattice,
    #[error("lattice basis is singular")]
    Singular,
    #[error("vector length {got} does not match lattice rank {rank}")]
    Dimension { got: usize, rank: usize },
}

impl From<Singular> for LatticeError {
    fn from(_: Singular) -> Self {
        LatticeError::Singular
    }
}

/// Coordinates with respect to a fixed row basis; the inverse is cached.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    inverse: RatMatrix,
}

impl LatticeSolver {
    pub fn new(basis: &PolyMatrix) -> Result<Self, LatticeError> {
        if !basis.is_square() {
            return Err(LatticeError::Singular);
        }
        Ok(LatticeSolver {
            inverse: basis.to_rat().inverse()?,
        })
    }

    /// `u` with `u^T A = v` over `k(x)`.
    pub fn coordinates(
        &self,
        v: &[RationalFunction],
    ) -> Result<Vec<RationalFunction>, LatticeError> {
        let n = self.inverse.nrows();
        if v.len() != n {
            return Err(LatticeError::Dimension {
                got: v.len(),
                rank: n,
            });
        }
        Ok(self.inverse.apply_left(v))
    }

    /// `u` with polynomial entries and `u^T A = v`.
    pub fn solve(&self, v: &[RationalFunction]) -> Result<Vec<Poly>, LatticeError> {
        self.coordinates(v)?
            .into_iter()
            .map(|e| e.as_poly().cloned().ok_or(LatticeError::NotInLattice))
            .collect()
    }
}

/// One-shot form of [`LatticeSolver::solve`].
pub fn solve_in_lattice(a: &PolyMatrix, v: &[RationalFunction]) -> Result<Vec<Poly>, LatticeError> {
    LatticeSolver::new(a)?.solve(v)
}

/// A unimodular matrix whose first column is `v`, when the entries of `v`
/// generate the unit ideal.
pub fn unimodular_completion(v: &[Poly]) -> Option<PolyMatrix> {
    let n = v.len();
    if n == 0 {
        return None;
    }
    // Reduce v to e_0 by unimodular row operations W, then return W^{-1}.
    let mut w = PolyMatrix::identity(n);
    let mut cur: Vec<Poly> = v.to_vec();
    for i in 1..n {
        if cur[i].is_zero() {
            continue;
        }
        // (a, b) -> (g, 0) via the extended Euclidean algorithm
        let (g, s, t) = cur[0].xgcd(&cur[i]);
        let a = cur[0].div_exact(&g).expect("gcd divides");
        let b = cur[i].div_exact(&g).expect("gcd divides");
        // [[s, t], [-b, a]] has determinant s a + t b = 1
        let r0 = w.row(0);
        let ri = w.row(i);
        let new0: Vec<Poly> = r0
            .iter()
            .zip(&ri)
            .map(|(x, y)| &(&s * x) + &(&t * y))
            .collect();
        let newi: Vec<Poly> = r0
            .iter()
            .zip(&ri)
            .map(|(x, y)| &(&a * y) - &(&b * x))
            .collect();
        w.set_row(0, new0);
        w.set_row(i, newi);
        cur[0] = g;
        cur[i] = Poly::zero();
    }
    if !cur[0].is_constant() || cur[0].is_zero() {
        return None;
    }
    let scale = cur[0].leading().inv().expect("nonzero");
    w.set_row(0, w.row(0).iter().map(|p| p.scale(&scale)).collect());
    let inv = w.to_rat().inverse().ok()?.to_poly()?;
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn s(v: i64) -> Scalar {
        Scalar::from(v)
    }

    #[test]
    fn two_sheets_glued_at_zero() {
        let k = constrained_kernel_basis(2, &[Constraint::new(s(0), vec![s(1), s(-1)])]);
        assert_eq!(k.independent, 1);
        assert_eq!(k.basis.det().degree(), Some(1));
        // (1, 1) is in the lattice, (1, 0) is not
        let solver = LatticeSolver::new(&k.basis).unwrap();
        let one = RationalFunction::one();
        assert!(solver.solve(&[one.clone(), one.clone()]).is_ok());
        assert_eq!(
            solver.solve(&[one, RationalFunction::zero()]),
            Err(LatticeError::NotInLattice)
        );
    }

    #[test]
    fn vanishing_at_two_points() {
        let k = constrained_kernel_basis(
            1,
            &[
                Constraint::new(s(0), vec![s(1)]),
                Constraint::new(s(1), vec![s(1)]),
            ],
        );
        assert_eq!(k.basis.det().monic(), p(&[0, -1, 1]));
        assert_eq!(k.independent, 2);
    }

    #[test]
    fn dependent_and_zero_constraints_skipped() {
        let c = Constraint::new(s(3), vec![s(1), s(2)]);
        let k =
            constrained_kernel_basis(2, &[c.clone(), Constraint::new(s(5), vec![s(0), s(0)]), c]);
        assert_eq!(k.independent, 1);
        assert_eq!(k.skipped, vec![1, 2]);
    }

    #[test]
    fn solve_examples() {
        let id = PolyMatrix::identity(2);
        let v = vec![RationalFunction::from(p(&[0, 1])), RationalFunction::one()];
        assert_eq!(
            solve_in_lattice(&id, &v).unwrap(),
            vec![p(&[0, 1]), p(&[1])]
        );
        let d = PolyMatrix::diagonal(vec![p(&[0, 1]), p(&[1])]);
        let v = vec![RationalFunction::one(), RationalFunction::one()];
        assert_eq!(solve_in_lattice(&d, &v), Err(LatticeError::NotInLattice));
        let sing = PolyMatrix::from_rows(vec![vec![p(&[1]), p(&[1])], vec![p(&[1]), p(&[1])]]);
        assert_eq!(solve_in_lattice(&sing, &v), Err(LatticeError::Singular));
    }

    #[test]
    fn completion_has_requested_column() {
        let v = vec![p(&[0, 1]), p(&[1, 1]), p(&[2])];
        let u = unimodular_completion(&v).unwrap();
        assert_eq!(u.col(0), v);
        assert!(u.det().is_constant() && !u.det().is_zero());
        assert!(unimodular_completion(&[p(&[0, 1]), p(&[0, 0, 1])]).is_none());
    }
}
