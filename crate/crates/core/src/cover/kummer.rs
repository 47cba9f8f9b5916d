//! Cyclic covers `y^d = p(x)`.

use num_integer::Integer;

use super::algebra::{CoverAlgebra, Provenance};
use super::CoverError;
use crate::arith::{Field, Poly, RationalFunction};
use crate::polymat::RatMatrix;

/// `k[x][y]/(y^d - p)` with basis `y^i / x^{ceil(i e / d)}` at infinity.
pub fn kummer_cover(d: usize, p: &Poly, field: Field) -> Result<CoverAlgebra, CoverError> {
    field.check_degree(d)?;
    let p = p.try_in_field(field)?;
    let e = p
        .degree()
        .filter(|&e| e >= 1)
        .ok_or(CoverError::NotSquarefree)?;
    if d < 2 {
        return Err(CoverError::Invalid(
            "Kummer covers need degree at least 2".into(),
        ));
    }
    if p.is_squarefree() != Some(true) {
        return Err(CoverError::NotSquarefree);
    }
    let mut mult = vec![vec![vec![Poly::zero(); d]; d]; d];
    for (i, row) in mult.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            if i + j < d {
                entry[i + j] = Poly::one();
            } else {
                entry[i + j - d] = p.clone();
            }
        }
    }
    let infinity = RatMatrix::diagonal(
        kummer_type(d, e)
            .into_iter()
            .map(|w| RationalFunction::x_pow(-w))
            .collect(),
    );
    CoverAlgebra::new(field, mult, infinity, Provenance::Kummer)
}

/// `(ceil(i e / d))` for `i = 0..d`; the entries after the first are the
/// Tschirnhausen splitting type.
pub fn kummer_type(d: usize, e: usize) -> Vec<i64> {
    (0..d)
        .map(|i| Integer::div_ceil(&((i * e) as i64), &(d as i64)))
        .collect()
}

/// Branch degree by Riemann–Hurwitz: total ramification over the `e`
/// roots of `p`, and `gcd(d, e)` points of index `d / gcd` over infinity.
pub fn kummer_branch_degree(d: usize, e: usize) -> i64 {
    let g = d.gcd(&e);
    (e * (d - 1) + (d - g)) as i64
}
