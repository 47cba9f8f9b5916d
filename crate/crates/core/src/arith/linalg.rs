//! Dense linear algebra over the ground field and determinants over `k[x]`.

use super::poly::Poly;
use super::scalar::Scalar;

/// Row echelon data for a dense matrix over `k`.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Reduced row echelon form (only the nonzero rows).
    pub rows: Vec<Vec<Scalar>>,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = -&row[free];
            }
            basis.push(v);
        }
        basis
    }
}

/// Gauss–Jordan elimination to reduced row echelon form.
pub fn echelon(matrix: &[Vec<Scalar>], cols: usize) -> Echelon {
    let mut rows: Vec<Vec<Scalar>> = matrix
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .cloned()
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        // prefer small entries to limit growth over Q
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].height())
        else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut().skip(c) {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !pv.is_zero() {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots, cols }
}

pub fn rank(matrix: &[Vec<Scalar>], cols: usize) -> usize {
    echelon(matrix, cols).rank()
}

/// Determinant of a square matrix over `k`.
pub fn det(matrix: &[Vec<Scalar>]) -> Scalar {
    let n = matrix.len();
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    let mut acc = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -&acc;
        }
        acc = &acc * &m[c][c];
        let inv = m[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
    }
    acc
}

/// Determinant over `k[x]` by fraction-free (Bareiss) elimination.
pub fn poly_det(matrix: &[Vec<Poly>]) -> Poly {
    let n = matrix.len();
    if n == 0 {
        return Poly::one();
    }
    let mut m: Vec<Vec<Poly>> = matrix.to_vec();
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from(v)
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![
            vec![s(1), s(2), s(3)],
            vec![s(2), s(4), s(6)],
            vec![s(0), s(1), s(1)],
        ];
        let e = echelon(&m, 3);
        assert_eq!(e.rank(), 2);
        let k = e.kernel();
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot = row
                .iter()
                .zip(&k[0])
                .fold(Scalar::zero(), |a, (x, y)| &a + &(x * y));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn determinants_agree() {
        let m = vec![
            vec![s(2), s(1), s(0)],
            vec![s(1), s(3), s(1)],
            vec![s(0), s(1), s(4)],
        ];
        assert_eq!(det(&m), s(18));
        let pm: Vec<Vec<Poly>> = m
            .iter()
            .map(|r| r.iter().map(|c| Poly::constant(c.clone())).collect())
            .collect();
        assert_eq!(poly_det(&pm), Poly::constant(s(18)));
        let x = Poly::x();
        let pm2 = vec![vec![&x * &x, &x * &x], vec![&x * &x, &(&x * &x) + &x]];
        assert_eq!(poly_det(&pm2), Poly::monomial(Scalar::one(), 3));
    }
}
