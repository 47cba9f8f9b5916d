//! Rational functions in `x`, also used for Laurent polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::Poly;
use super::scalar::{Field, Scalar, ScalarError};

/// `numerator / denominator` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = d.leading();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RationalFunction { num: n, den: d }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from(Poly::one())
    }

    pub fn constant(c: Scalar) -> Self {
        RationalFunction::from(Poly::constant(c))
    }

    /// `c * x^k` for any integer `k`.
    pub fn monomial(c: Scalar, k: i64) -> Self {
        if k >= 0 {
            RationalFunction::from(Poly::monomial(c, k as usize))
        } else {
            RationalFunction::new(
                Poly::constant(c),
                Poly::monomial(Scalar::one(), (-k) as usize),
            )
        }
    }

    pub fn x_pow(k: i64) -> Self {
        RationalFunction::monomial(Scalar::one(), k)
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    /// Degree at infinity: `deg num - deg den`, `i64::MIN` for zero.
    pub fn degree(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.num.deg() - self.den.deg()
    }

    /// Regular at infinity: degree at most zero.
    pub fn is_regular_at_infinity(&self) -> bool {
        self.degree() <= 0
    }

    /// `Some((c, k))` when the function is `c * x^k`.
    pub fn as_monomial(&self) -> Option<(Scalar, i64)> {
        if self.is_zero() {
            return None;
        }
        let nlow = self.num.low_order()?;
        let ok = self.num.coeffs().len() == nlow + 1
            && self.den.coeffs().len() == self.den.low_order()? + 1;
        ok.then(|| (self.num.leading(), self.num.deg() - self.den.deg()))
    }

    /// Whether the function lies in `k[x, 1/x]`.
    pub fn is_laurent(&self) -> bool {
        self.den.coeffs().len() == self.den.low_order().map_or(0, |l| l + 1)
    }

    /// `(poly, shift)` with `self = poly * x^shift` when Laurent.
    pub fn as_laurent(&self) -> Option<(Poly, i64)> {
        if !self.is_laurent() {
            return None;
        }
        let s = self.den.deg();
        Some((self.num.clone(), -s))
    }

    pub fn eval(&self, a: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(a) / &d)
    }

    pub fn inv(&self) -> Option<RationalFunction> {
        if self.is_zero() {
            return None;
        }
        Some(RationalFunction::new(self.den.clone(), self.num.clone()))
    }

    pub fn derivative(&self) -> RationalFunction {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction::new(n, &self.den * &self.den)
    }

    pub fn scale(&self, c: &Scalar) -> RationalFunction {
        RationalFunction::new(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i64) -> RationalFunction {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = RationalFunction::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Substitution `x -> 1/x`.
    pub fn flip(&self) -> RationalFunction {
        if self.is_zero() {
            return RationalFunction::zero();
        }
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let n = dn.max(dd);
        RationalFunction::new(self.num.reversed(n), self.den.reversed(n))
    }

    pub fn in_field(&self, field: Field) -> RationalFunction {
        RationalFunction::new(self.num.in_field(field), self.den.in_field(field))
    }

    pub fn try_in_field(&self, field: Field) -> Result<RationalFunction, ScalarError> {
        let den = self.den.try_in_field(field)?;
        if den.is_zero() {
            return Err(ScalarError::VanishingDenominator(field.characteristic()));
        }
        Ok(RationalFunction::new(self.num.try_in_field(field)?, den))
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }
}

impl From<Scalar> for RationalFunction {
    fn from(c: Scalar) -> Self {
        RationalFunction::constant(c)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let den = if self.den.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({})", self.den)
        } else {
            self.den.to_string()
        };
        write!(f, "{num}/{den}")
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.is_poly() && rhs.is_poly() {
            return RationalFunction::from(&self.num * &rhs.num);
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_degree() {
        let f = RationalFunction::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-2, 2]));
        assert_eq!(
            f.numer(),
            &Poly::from_ints(&[1, 1]).scale(&Scalar::ratio(1, 2))
        );
        assert!(f.denom().is_one());
        assert_eq!(RationalFunction::x_pow(-3).degree(), -3);
        assert!(RationalFunction::x_pow(-3).is_laurent());
    }

    #[test]
    fn flip_and_derivative() {
        let f = RationalFunction::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[0, 0, 1]));
        // (x+1)/x^2 -> (1/x+1) x^2 = x + x^2
        assert_eq!(
            f.flip(),
            RationalFunction::from(Poly::from_ints(&[0, 1, 1]))
        );
        let g = RationalFunction::x_pow(-1);
        assert_eq!(
            g.derivative(),
            RationalFunction::x_pow(-2).scale(&Scalar::from(-1))
        );
        assert_eq!(
            RationalFunction::x_pow(-2).as_monomial(),
            Some((Scalar::one(), -2))
        );
    }

    #[test]
    fn field_arithmetic() {
        let a = RationalFunction::new(Poly::from_ints(&[1]), Poly::from_ints(&[-1, 1]));
        let b = RationalFunction::new(Poly::from_ints(&[1]), Poly::from_ints(&[1, 1]));
        let s = &a + &b;
        assert_eq!(
            s,
            RationalFunction::new(Poly::from_ints(&[0, 2]), Poly::from_ints(&[-1, 0, 1]))
        );
        assert_eq!(&(&s / &a) * &a, s);
        assert_eq!(&s - &s, RationalFunction::zero());
    }
}
