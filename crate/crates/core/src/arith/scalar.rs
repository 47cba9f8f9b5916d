//! Ground-field scalars.
//!
//! A [`Scalar`] is either an arbitrary-precision rational or a residue modulo
//! a prime. Integers and rationals built without a field context are stored
//! as rationals and are reduced on contact with a residue, so constants such
//! as `1`, `-1` or `1/d` can be used uniformly in either characteristic.
//! Mixing residues of two different primes is a programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Largest prime modulus accepted, so products of residues fit in `u128`
/// comfortably and residues fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 62) - 1;

/// Suggested prime for the large randomized suites.
pub const DEFAULT_PRIME: u64 = 10007;

/// The ground field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds a field from a characteristic; `0` means the rationals.
    pub fn from_characteristic(p: u64) -> Result<Self, ScalarError> {
        if p == 0 {
            return Ok(Field::Rational);
        }
        if p > MAX_PRIME || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Whether `1/n` exists for every `1 <= n <= d`.
    pub fn admits_degree(&self, d: usize) -> bool {
        match self {
            Field::Rational => true,
            Field::Prime(p) => (d as u64) < *p,
        }
    }

    pub fn check_degree(&self, d: usize) -> Result<(), ScalarError> {
        if self.admits_degree(d) {
            Ok(())
        } else {
            Err(ScalarError::CharacteristicTooSmall {
                characteristic: self.characteristic(),
                degree: d,
            })
        }
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.reduce(&Scalar::from(n))
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    /// Like [`Field::reduce`], but reports a denominator divisible by `p`
    /// instead of panicking.
    pub fn try_reduce(&self, s: &Scalar) -> Result<Scalar, ScalarError> {
        if let (Field::Prime(p), Scalar::Rat(r)) = (self, s) {
            if reduce_int(r.denom(), *p) == 0 {
                return Err(ScalarError::VanishingDenominator(*p));
            }
        }
        Ok(self.reduce(s))
    }

    /// Maps a scalar into this field. Rationals are reduced modulo `p`.
    pub fn reduce(&self, s: &Scalar) -> Scalar {
        match (self, s) {
            (Field::Rational, Scalar::Rat(_)) => s.clone(),
            (Field::Rational, Scalar::Mod(..)) => {
                panic!("cannot lift a residue to the rationals")
            }
            (Field::Prime(p), Scalar::Rat(r)) => Scalar::Mod(reduce_rational(r, *p), *p),
            (Field::Prime(p), Scalar::Mod(v, q)) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Mod(*v, *p)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("{0} is not a supported prime characteristic")]
    NotPrime(u64),
    #[error("characteristic {characteristic} does not exceed the cover degree {degree}")]
    CharacteristicTooSmall { characteristic: u64, degree: usize },
    #[error("a denominator vanishes modulo {0}")]
    VanishingDenominator(u64),
}

/// An exact element of the ground field.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    /// `Mod(value, p)` with `0 <= value < p`.
    Mod(u64, u64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    /// The field this scalar lives in, as far as it can tell.
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod(_, p) => Field::Prime(*p),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) if r.is_zero() => None,
            Scalar::Rat(r) => Some(Scalar::Rat(r.recip())),
            Scalar::Mod(0, _) => None,
            Scalar::Mod(v, p) => Some(Scalar::Mod(inv_mod(*v, *p), *p)),
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Whether the value is an integer (always true for residues).
    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_integer(),
            Scalar::Mod(..) => true,
        }
    }

    /// A rough size measure used for pivot selection.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Rat(r) => r.numer().bits() + r.denom().bits(),
            Scalar::Mod(..) => 1,
        }
    }

    /// Sign used when printing: residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod(..) => false,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rat(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::Rat(_) => None,
            Scalar::Mod(v, _) => i64::try_from(*v).ok(),
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        modp: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(rat(a, b)),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Mod(modp(*a, *b, *p), *p)
            }
            (Scalar::Mod(a, p), Scalar::Rat(b)) => {
                Scalar::Mod(modp(*a, reduce_rational(b, *p), *p), *p)
            }
            (Scalar::Rat(a), Scalar::Mod(b, p)) => {
                Scalar::Mod(modp(reduce_rational(a, *p), *b, *p), *p)
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::Rat(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rat(r)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) => p == q && a == b,
            (Scalar::Mod(a, p), Scalar::Rat(b)) | (Scalar::Rat(b), Scalar::Mod(a, p)) => {
                !divisible(b.denom(), *p) && reduce_rational(b, *p) == *a
            }
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a + b, add_mod)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a - b, |a, b, p| add_mod(a, p - b, p))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a * b, mul_mod)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Mod(0, p) => Scalar::Mod(0, *p),
            Scalar::Mod(v, p) => Scalar::Mod(p - v, *p),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Total order on rationals only; residues compare by representative.
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Some(a.cmp(b)),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => Some(a.cmp(b)),
            _ => None,
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(v: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, v as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "residue not invertible");
    t0.rem_euclid(p as i128) as u64
}

fn divisible(n: &BigInt, p: u64) -> bool {
    (n % BigInt::from(p)).is_zero()
}

fn reduce_int(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn reduce_rational(r: &BigRational, p: u64) -> u64 {
    let den = reduce_int(r.denom(), p);
    assert!(den != 0, "denominator {} vanishes modulo {p}", r.denom());
    mul_mod(reduce_int(r.numer(), p), inv_mod(den, p), p)
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_reports_vanishing_denominators() {
        let f = Field::Prime(7);
        assert_eq!(
            f.try_reduce(&Scalar::ratio(3, 7)),
            Err(ScalarError::VanishingDenominator(7))
        );
        assert_eq!(f.try_reduce(&Scalar::ratio(1, 2)), Ok(Scalar::Mod(4, 7)));
        assert_eq!(
            Field::Rational.try_reduce(&Scalar::ratio(3, 7)),
            Ok(Scalar::ratio(3, 7))
        );
    }

    #[test]
    fn rationals_are_lowest_terms() {
        let a = Scalar::ratio(6, -4);
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(&a + &Scalar::ratio(3, 2), Scalar::zero());
    }

    #[test]
    fn residues_promote_constants() {
        let f = Field::Prime(7);
        let three = f.int(3);
        assert_eq!(&three * &Scalar::from(5), f.int(1));
        assert_eq!(&three / &Scalar::from(3), Scalar::one());
        assert_eq!(Scalar::ratio(1, 2), f.int(4));
        assert_eq!(-&three, f.int(4));
    }

    #[test]
    fn prime_checks() {
        assert!(is_prime(10007));
        assert!(!is_prime(10005));
        assert!(Field::from_characteristic(9).is_err());
        assert_eq!(Field::from_characteristic(0).unwrap(), Field::Rational);
        assert!(!Field::Prime(3).admits_degree(3));
        assert!(Field::Prime(5).admits_degree(3));
    }

    #[test]
    fn inverse_mod() {
        let f = Field::Prime(10007);
        for n in 1..50 {
            let a = f.int(n);
            assert!((&a * &a.inv().unwrap()).is_one());
        }
    }
}
