//! Dense matrices over `k[x]` and `k(x)`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::arith::{linalg, Field, Poly, RationalFunction, Scalar};

/// Ring operations a matrix entry needs.
pub trait Entry: Clone + PartialEq + fmt::Display + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_scalar(c: Scalar) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;

    /// Matrix product; entries with cheaper bulk arithmetic override it.
    fn matmul(a: &Matrix<Self>, b: &Matrix<Self>) -> Matrix<Self> {
        naive_product(a, b)
    }
}

fn naive_product<T: Entry>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let mut out: Matrix<T> = Matrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = &a[(i, k)];
            if x.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let y = &b[(k, j)];
                if !y.is_zero() {
                    out[(i, j)] = out[(i, j)].add(&x.mul(y));
                }
            }
        }
    }
    out
}

impl Entry for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn from_scalar(c: Scalar) -> Self {
        Poly::constant(c)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Entry for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn from_scalar(c: Scalar) -> Self {
        RationalFunction::constant(c)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    /// Clears denominators so the inner sums run over `k[x]`.
    fn matmul(a: &Matrix<Self>, b: &Matrix<Self>) -> Matrix<Self> {
        let (na, qa) = a.clear_denominators();
        let (nb, qb) = b.clear_denominators();
        let q = &qa * &qb;
        naive_product(&na, &nb).map(|p| RationalFunction::new(p.clone(), q.clone()))
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type PolyMatrix = Matrix<Poly>;
pub type RatMatrix = Matrix<RationalFunction>;

impl<T: Entry> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Panics when the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: Vec<Vec<T>>) -> Self {
        Matrix::from_rows(cols).transpose()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn cols_vec(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn set_row(&mut self, i: usize, row: Vec<T>) {
        assert_eq!(row.len(), self.cols);
        for (j, v) in row.into_iter().enumerate() {
            self[(i, j)] = v;
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map<U: Entry>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.rows)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !vj.is_zero() {
                        acc = acc.add(&a.mul(vj));
                    }
                }
                acc
            })
            .collect()
    }

    /// Row-vector product `v^T M`.
    pub fn apply_left(&self, v: &[T]) -> Vec<T> {
        self.transpose().apply(v)
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a.mul(&other[(k, l)]);
                    }
                }
            }
        }
        out
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.to_string()).collect())
            .collect()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Entry> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        T::matmul(self, rhs)
    }
}

impl<T: Entry> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }
}

impl<T: Entry> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }
}

impl PolyMatrix {
    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> Poly {
        assert!(self.is_square(), "determinant of a non-square matrix");
        linalg::poly_det(&self.rows_vec())
    }

    /// Largest entry degree in each row, `None` for a zero row.
    pub fn row_degrees(&self) -> Vec<Option<usize>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().filter_map(Poly::degree).max())
            .collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(Poly::degree).max()
    }

    pub fn eval(&self, a: &Scalar) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval(a)).collect())
            .collect()
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(|p| RationalFunction::from(p.clone()))
    }

    pub fn in_field(&self, field: Field) -> PolyMatrix {
        self.map(|p| p.in_field(field))
    }
}

/// Failure of an inversion over `k(x)`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("matrix is singular over k(x)")]
pub struct Singular;

impl RatMatrix {
    /// Inverse over `k(x)`. Fraction-free elimination wins when clearing
    /// denominators costs nothing, that is when every denominator divides
    /// the largest one; otherwise elimination runs directly over `k(x)`.
    pub fn inverse(&self) -> Result<RatMatrix, Singular> {
        let lcm_deg = self
            .data
            .iter()
            .fold(Poly::one(), |acc, e| acc.lcm(e.denom()))
            .deg();
        let max_deg = self.data.iter().map(|e| e.denom().deg()).max().unwrap_or(0);
        if lcm_deg == max_deg {
            self.inverse_fraction_free()
        } else {
            self.inverse_over_field()
        }
    }

    /// Inverse by Gauss–Jordan elimination over `k(x)`.
    pub(crate) fn inverse_over_field(&self) -> Result<RatMatrix, Singular> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for c in 0..n {
            // lowest-degree denominator and numerator keep entries small
            let p = (c..n)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by_key(|&i| {
                    let e = &a[(i, c)];
                    e.numer().deg() + e.denom().deg()
                })
                .ok_or(Singular)?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let piv = a[(c, c)].inv().expect("nonzero pivot");
            for j in 0..n {
                if !a[(c, j)].is_zero() {
                    a[(c, j)] = &a[(c, j)] * &piv;
                }
                if !inv[(c, j)].is_zero() {
                    inv[(c, j)] = &inv[(c, j)] * &piv;
                }
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    if !a[(c, j)].is_zero() {
                        a[(i, j)] = &a[(i, j)] - &(&f * &a[(c, j)]);
                    }
                    if !inv[(c, j)].is_zero() {
                        inv[(i, j)] = &inv[(i, j)] - &(&f * &inv[(c, j)]);
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Inverse by fraction-free Gauss–Jordan elimination on the cleared
    /// numerator: every division in the loop is exact over `k[x]`.
    pub(crate) fn inverse_fraction_free(&self) -> Result<RatMatrix, Singular> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        if self.is_identity() {
            return Ok(self.clone());
        }
        let n = self.rows;
        let (num, q) = self.clear_denominators();
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                let mut r = num.row(i);
                r.extend((0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }));
                r
            })
            .collect();
        let mut prev = Poly::one();
        for k in 0..n {
            let p = (k..n)
                .filter(|&i| !m[i][k].is_zero())
                .min_by_key(|&i| m[i][k].deg())
                .ok_or(Singular)?;
            m.swap(p, k);
            let (head, tail) = m.split_at_mut(k);
            let (pivot_row, rest) = tail.split_first_mut().expect("row k");
            for row in head.iter_mut().chain(rest.iter_mut()) {
                let f = row[k].clone();
                for (e, pk) in row.iter_mut().zip(pivot_row.iter()) {
                    let mut t = &pivot_row[k] * &*e;
                    if !f.is_zero() && !pk.is_zero() {
                        t = &t - &(&f * pk);
                    }
                    *e = if prev.is_one() {
                        t
                    } else {
                        t.div_exact(&prev).expect("Bareiss division is exact")
                    };
                }
            }
            prev = pivot_row[k].clone();
        }
        // the left block is now prev * I
        Ok(Matrix {
            rows: n,
            cols: n,
            data: m
                .into_iter()
                .flat_map(|r| r.into_iter().skip(n))
                .map(|e| RationalFunction::new(&q * &e, prev.clone()))
                .collect(),
        })
    }

    /// Determinant: the common denominator is cleared and Bareiss is used.
    pub fn det(&self) -> RationalFunction {
        let (num, den) = self.clear_denominators();
        let d = num.det();
        RationalFunction::new(d, den.pow(self.rows as u32))
    }

    /// `(N, q)` with `self = N / q` and `q` the monic lcm of the denominators.
    pub fn clear_denominators(&self) -> (PolyMatrix, Poly) {
        let q = self
            .data
            .iter()
            .fold(Poly::one(), |acc, e| acc.lcm(e.denom()));
        let n = self.map(|e| {
            if e.denom() == &q {
                e.numer().clone()
            } else {
                e.numer() * &q.div_exact(e.denom()).expect("lcm")
            }
        });
        (n, q)
    }

    pub fn is_polynomial(&self) -> bool {
        self.data.iter().all(RationalFunction::is_poly)
    }

    pub fn to_poly(&self) -> Option<PolyMatrix> {
        self.is_polynomial()
            .then(|| self.map(|e| e.numer().clone()))
    }

    /// Largest degree at infinity over the entries, `None` for zero.
    pub fn max_degree(&self) -> Option<i64> {
        self.data
            .iter()
            .filter(|e| !e.is_zero())
            .map(RationalFunction::degree)
            .max()
    }

    /// Degree at infinity of each column.
    pub fn col_degrees(&self) -> Vec<Option<i64>> {
        (0..self.cols)
            .map(|j| {
                self.col(j)
                    .iter()
                    .filter(|e| !e.is_zero())
                    .map(RationalFunction::degree)
                    .max()
            })
            .collect()
    }

    /// Entrywise evaluation, `None` if some entry has a pole at `a`.
    pub fn eval(&self, a: &Scalar) -> Option<Vec<Vec<Scalar>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.eval(a)).collect())
            .collect()
    }

    /// Substitution `x -> 1/x` in every entry.
    pub fn flip(&self) -> RatMatrix {
        self.map(RationalFunction::flip)
    }

    pub fn scale(&self, f: &RationalFunction) -> RatMatrix {
        self.map(|e| e * f)
    }

    pub fn in_field(&self, field: Field) -> RatMatrix {
        self.map(|e| e.in_field(field))
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn inverse_round_trip() {
        let m = PolyMatrix::from_rows(vec![
            vec![p(&[1, 0, 1]), p(&[0, 1])],
            vec![p(&[0, 1]), p(&[2])],
        ])
        .to_rat();
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(m.det(), RationalFunction::from(p(&[2, 0, 1])));
    }

    #[test]
    fn inversion_methods_agree() {
        let r = |n: &[i64], d: &[i64]| RationalFunction::new(p(n), p(d));
        let m = RatMatrix::from_rows(vec![
            vec![r(&[1, 2], &[0, 1]), r(&[3], &[1, 1]), r(&[0, 0, 1], &[1])],
            vec![r(&[5], &[1]), r(&[1, 0, 1], &[2, 1]), r(&[-1], &[0, 1])],
            vec![r(&[0, 1], &[1]), r(&[7], &[1]), r(&[1, 1], &[1, 1])],
        ]);
        let a = m.inverse_fraction_free().unwrap();
        assert_eq!(a, m.inverse_over_field().unwrap());
        assert!((&m * &a).is_identity());
        let z = RatMatrix::zeros(2, 2);
        assert_eq!(z.inverse_fraction_free(), Err(Singular));
        assert_eq!(z.inverse_over_field(), Err(Singular));
    }

    #[test]
    fn singular_detected() {
        let m = PolyMatrix::from_rows(vec![
            vec![p(&[0, 1]), p(&[0, 0, 1])],
            vec![p(&[1]), p(&[0, 1])],
        ])
        .to_rat();
        assert_eq!(m.inverse(), Err(Singular));
    }

    #[test]
    fn kronecker_shape() {
        let a = PolyMatrix::identity(2);
        let b = PolyMatrix::diagonal(vec![p(&[0, 1]), p(&[1])]);
        let k = a.kron(&b);
        assert_eq!((k.nrows(), k.ncols()), (4, 4));
        assert_eq!(k.det(), p(&[0, 0, 1]));
    }
}
