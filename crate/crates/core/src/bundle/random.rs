//! Random presentations of split bundles, for testing that computations
//! depend only on the lattices and not on the chosen bases.

use rand::Rng;

use super::lattice::BundleLattice;
use crate::arith::{linalg, Field, Poly, Scalar};
use crate::polymat::{PolyMatrix, RatMatrix};
use crate::rng::{general_scalar, small_poly};

/// Product of random elementary matrices over `k[x]`.
pub fn random_unimodular<R: Rng + ?Sized>(
    rng: &mut R,
    r: usize,
    steps: usize,
    max_deg: usize,
    field: Field,
) -> PolyMatrix {
    let mut u = PolyMatrix::identity(r);
    if r < 2 {
        let c = field.int(rng.gen_range(1..=5));
        return PolyMatrix::diagonal(vec![Poly::constant(c)]);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..r);
        let mut j = rng.gen_range(0..r - 1);
        if j >= i {
            j += 1;
        }
        let deg = rng.gen_range(0..=max_deg);
        let f = small_poly(rng, deg, 3, field);
        // row_i += f * row_j
        let row: Vec<_> = u
            .row(i)
            .iter()
            .zip(u.row(j))
            .map(|(a, b)| a + &(&f * &b))
            .collect();
        u.set_row(i, row);
    }
    u
}

/// Random element of `GL_r(k[1/x])` with constant determinant.
pub fn random_unimodular_at_infinity<R: Rng + ?Sized>(
    rng: &mut R,
    r: usize,
    steps: usize,
    max_deg: usize,
    field: Field,
) -> RatMatrix {
    random_unimodular(rng, r, steps, max_deg, field)
        .to_rat()
        .flip()
}

/// A random presentation of `O(a_1) + ... + O(a_r)`.
pub fn random_presentation<R: Rng + ?Sized>(
    rng: &mut R,
    parts: &[i64],
    field: Field,
) -> BundleLattice {
    let r = parts.len();
    let ambient = random_unimodular(rng, r, 2 * r, 1, field).to_rat();
    let u_fin = random_unimodular(rng, r, 2 * r, 2, field).to_rat();
    let u_inf = random_unimodular_at_infinity(rng, r, 2 * r, 2, field);
    BundleLattice::standard(parts)
        .in_field(field)
        .presented(&ambient, &u_fin, &u_inf)
        .expect("unimodular changes of basis")
}

/// Random fiber vectors with small nonzero entries, linearly independent.
pub fn random_fiber_vectors<R: Rng + ?Sized>(
    rng: &mut R,
    r: usize,
    m: usize,
    field: Field,
) -> Vec<Vec<Scalar>> {
    loop {
        let vs: Vec<Vec<Scalar>> = (0..m)
            .map(|_| (0..r).map(|_| general_scalar(rng, field)).collect())
            .collect();
        if linalg::rank(&vs, r) == m {
            return vs;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::is_unimodular;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn presentations_keep_the_splitting() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for parts in [vec![-2, 0, 3], vec![1, 1], vec![-4, -1, 0, 2]] {
            let b = random_presentation(&mut rng, &parts, Field::Rational);
            assert_eq!(b.splitting_type().parts(), &parts[..]);
            assert_eq!(b.degree(), parts.iter().sum::<i64>());
        }
        let u = random_unimodular(&mut rng, 3, 6, 2, Field::Rational);
        assert!(is_unimodular(&u));
    }
}
