//! Normalizing an affine embedding of a cover into the total space of its
//! Tschirnhausen bundle.

use super::algebra::CoverAlgebra;
use super::CoverError;
use crate::arith::Poly;
use crate::bundle::Chart;
use crate::polymat::{PolyMatrix, RatMatrix};

/// The translation part `-alpha` of the normalizing affine map.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization {
    pub translation: Vec<Poly>,
}

/// Checks that `lambda` is an isomorphism of the dual Tschirnhausen bundle
/// of `target` on both charts, and returns the translation by `-alpha`
/// bringing the embedding to the canonical one.
pub fn normalize_affine_embedding(
    alpha: &[Poly],
    lambda_finite: &PolyMatrix,
    lambda_infinity: &RatMatrix,
    target: &CoverAlgebra,
) -> Result<Normalization, CoverError> {
    let r = target.degree() - 1;
    if alpha.len() != r
        || lambda_finite.nrows() != r
        || !lambda_finite.is_square()
        || lambda_infinity.nrows() != r
        || !lambda_infinity.is_square()
    {
        return Err(CoverError::Invalid(
            "embedding data has the wrong size".into(),
        ));
    }
    let det = lambda_finite.det();
    if det.is_zero() || !det.is_constant() {
        return Err(CoverError::NotAnIsomorphism(Chart::Finite));
    }
    let dual = target
        .tschirnhausen()?
        .dual
        .ok_or_else(|| CoverError::Invalid("degree one cover".into()))?;
    // lambda at infinity must preserve the lattice spanned by the basis there
    let g = dual.infinity();
    let conj = &(&g.inverse().map_err(|_| CoverError::DegenerateTrace)? * lambda_infinity) * g;
    let regular = conj.entries().all(|e| e.is_zero() || e.degree() <= 0);
    let det_inf = conj.det();
    if !regular || det_inf.is_zero() || det_inf.degree() != 0 {
        return Err(CoverError::NotAnIsomorphism(Chart::Infinity));
    }
    Ok(Normalization {
        translation: alpha.iter().map(|a| -a).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::cover::kummer_cover;

    #[test]
    fn identity_and_translations() {
        let c = kummer_cover(3, &Poly::from_ints(&[1, 1, 0, 0, 1]), Field::Rational).unwrap();
        let id = PolyMatrix::identity(2);
        let idr = RatMatrix::identity(2);
        let zero = vec![Poly::zero(), Poly::zero()];
        let n = normalize_affine_embedding(&zero, &id, &idr, &c).unwrap();
        assert_eq!(n.translation, zero);
        let alpha = vec![Poly::from_ints(&[1, 2]), Poly::from_ints(&[0, 0, 5])];
        let n = normalize_affine_embedding(&alpha, &id, &idr, &c).unwrap();
        assert_eq!(
            n.translation,
            vec![Poly::from_ints(&[-1, -2]), Poly::from_ints(&[0, 0, -5])]
        );
        let bad = PolyMatrix::diagonal(vec![Poly::x(), Poly::one()]);
        assert_eq!(
            normalize_affine_embedding(&alpha, &bad, &idr, &c),
            Err(CoverError::NotAnIsomorphism(Chart::Finite))
        );
    }
}
