//! Deterministic per-trial random streams and "general" choices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Field, Poly, Scalar};

/// Bound for integers standing in for general elements of the field.
pub const GENERAL_BOUND: i64 = 10_000;

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent stream for one trial of a named suite.
pub fn trial_rng(suite: &str, seed: u64, trial: u64) -> ChaCha8Rng {
    let a = splitmix64(fnv1a(suite) ^ seed);
    let b = splitmix64(a ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    ChaCha8Rng::seed_from_u64(b)
}

pub fn general_int<R: Rng + ?Sized>(rng: &mut R) -> i64 {
    rng.gen_range(-GENERAL_BOUND..=GENERAL_BOUND)
}

pub fn general_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Scalar {
    field.int(general_int(rng))
}

/// Nonzero general scalar.
pub fn general_unit<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Scalar {
    loop {
        let s = general_scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Polynomial of degree at most `deg` with coefficients in `[-bound, bound]`.
pub fn small_poly<R: Rng + ?Sized>(rng: &mut R, deg: usize, bound: i64, field: Field) -> Poly {
    Poly::new(
        (0..=deg)
            .map(|_| field.int(rng.gen_range(-bound..=bound)))
            .collect(),
    )
}

/// `n` pairwise distinct general scalars avoiding `avoid`.
pub fn distinct_points<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    avoid: &[Scalar],
    field: Field,
) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    while out.len() < n {
        let s = general_scalar(rng, field);
        if !avoid.contains(&s) && !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = trial_rng("kummer", 1, 0).gen();
        let b: u64 = trial_rng("kummer", 1, 0).gen();
        let c: u64 = trial_rng("kummer", 1, 1).gen();
        let d: u64 = trial_rng("lingen", 1, 0).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }
}
