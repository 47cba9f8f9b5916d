//! Dense univariate polynomials in `x` over the ground field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{Field, Scalar, ScalarError};

/// A polynomial with coefficients in ascending degree and no trailing zeros.
/// The zero polynomial has no coefficients and degree `None`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Scalar::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn x() -> Self {
        Poly::monomial(Scalar::one(), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Scalar, n: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = c;
        Poly { coeffs }
    }

    /// `x - a`
    pub fn linear_root(a: &Scalar) -> Self {
        Poly::new(vec![-a, Scalar::one()])
    }

    /// `prod (x - a_i)`
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Scalar>) -> Self {
        roots
            .into_iter()
            .fold(Poly::one(), |acc, a| &acc * &Poly::linear_root(a))
    }

    /// Lagrange interpolation through `(points[i], values[i])`; the points
    /// must be distinct.
    pub fn interpolate(points: &[Scalar], values: &[Scalar]) -> Poly {
        assert_eq!(points.len(), values.len());
        let mut out = Poly::zero();
        for (i, (pi, vi)) in points.iter().zip(values).enumerate() {
            if vi.is_zero() {
                continue;
            }
            let others: Vec<&Scalar> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p)
                .collect();
            let denom = others
                .iter()
                .fold(Scalar::one(), |acc, pj| &acc * &(pi - *pj));
            let basis = Poly::from_roots(others);
            out = &out + &basis.scale(&(vi / &denom));
        }
        out
    }

    /// Distinct roots in the ground field, in increasing order. `None` when
    /// the search is out of reach: a prime above `10^6`, or rational
    /// coefficients whose extreme terms exceed `10^12` after clearing.
    pub fn roots_in_field(&self, field: Field) -> Option<Vec<Scalar>> {
        let f = self.in_field(field);
        f.coeffs.last()?;
        let mut roots = Vec::new();
        match field {
            Field::Prime(p) => {
                if p > 1_000_000 {
                    return None;
                }
                for v in 0..p {
                    let a = Scalar::Mod(v, p);
                    if f.eval(&a).is_zero() {
                        roots.push(a);
                    }
                }
            }
            Field::Rational => {
                // integer coefficients, then strip the root at zero
                let den = f.coeffs.iter().fold(BigInt::one(), |acc, c| match c {
                    Scalar::Rat(r) => acc.lcm(r.denom()),
                    Scalar::Mod(..) => acc,
                });
                let ints: Vec<BigInt> = f
                    .coeffs
                    .iter()
                    .map(|c| match c {
                        Scalar::Rat(r) => r.numer() * (&den / r.denom()),
                        Scalar::Mod(v, _) => BigInt::from(*v),
                    })
                    .collect();
                let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero");
                if low > 0 {
                    roots.push(Scalar::zero());
                }
                let (a0, an) = (ints[low].abs(), ints.last().expect("nonzero").abs());
                let limit = BigInt::from(1_000_000_000_000i64);
                if a0 > limit || an > limit {
                    return None;
                }
                let divisors = |n: &BigInt| -> Vec<i64> {
                    let n = n.to_i64().expect("bounded");
                    (1..)
                        .take_while(|d| d * d <= n)
                        .filter(|d| n % d == 0)
                        .flat_map(|d| [d, n / d])
                        .collect()
                };
                for num in divisors(&a0) {
                    for den in divisors(&an) {
                        for sign in [1, -1] {
                            let a = Scalar::ratio(sign * num, den);
                            if !roots.contains(&a) && f.eval(&a).is_zero() {
                                roots.push(a);
                            }
                        }
                    }
                }
                roots.sort_by(|a, b| match (a, b) {
                    (Scalar::Rat(x), Scalar::Rat(y)) => x.cmp(y),
                    _ => std::cmp::Ordering::Equal,
                });
            }
        }
        Some(roots)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer with `i64::MIN` standing in for `-inf`.
    pub fn deg(&self) -> i64 {
        self.degree().map_or(i64::MIN, |d| d as i64)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Order of vanishing at `x = 0`; `None` for the zero polynomial.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, a: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * a) + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient reversal `x^n f(1/x)` for `n >= deg f`.
    pub fn reversed(&self, n: usize) -> Poly {
        let d = self.degree().map_or(0, |d| d);
        assert!(n >= d || self.is_zero(), "reversal length below degree");
        let mut coeffs = vec![Scalar::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Poly::new(coeffs)
    }

    /// Maps every coefficient into `field`.
    pub fn in_field(&self, field: Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| field.reduce(c)).collect())
    }

    pub fn try_in_field(&self, field: Field) -> Result<Poly, ScalarError> {
        Ok(Poly::new(
            self.coeffs
                .iter()
                .map(|c| field.try_reduce(c))
                .collect::<Result<_, _>>()?,
        ))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = divisor
            .leading()
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &inv;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let t = &q * c;
                rem[i - dd + j] = &rem[i - dd + j] - &t;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            // keep remainders monic to slow coefficient growth over Q
            b = r.monic();
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().inv().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * &other.div_exact(&g).expect("gcd divides")).monic()
    }

    /// `gcd(f, f')` constant. The zero polynomial has no answer.
    pub fn is_squarefree(&self) -> Option<bool> {
        if self.is_zero() {
            return None;
        }
        Some(self.gcd(&self.derivative()).is_constant())
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &Scalar) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::linear_root(a);
        let mut f = self.clone();
        let mut m = 0;
        while let Some(q) = f.div_exact(&lin) {
            f = q;
            m += 1;
        }
        m
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * g) + &Poly::constant(c.clone())
        })
    }

    /// Writes the polynomial in the variable `var`.
    pub fn fmt_var(&self, var: &str) -> String {
        let terms: Vec<(Scalar, usize)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), i))
            .collect();
        format_terms(&terms, |i| monomial_text(var, i))
    }
}

pub(crate) fn monomial_text(var: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
    }
}

/// Joins `coeff * monomial` terms in the canonical text syntax.
pub(crate) fn format_terms<T: Copy>(terms: &[(Scalar, T)], mono: impl Fn(T) -> String) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (c, m)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = mono(*m);
        match (mono.is_empty(), abs.is_one()) {
            (true, _) => out.push_str(&abs.to_string()),
            (false, true) => out.push_str(&mono),
            (false, false) => {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                out[i + j] = &out[i + j] + &t;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Self {
        Poly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_found() {
        // (2x - 3)(x + 5) x
        let f = &(&Poly::from_ints(&[-3, 2]) * &Poly::from_ints(&[5, 1])) * &Poly::x();
        let want = vec![Scalar::from(-5), Scalar::zero(), Scalar::ratio(3, 2)];
        assert_eq!(f.roots_in_field(Field::Rational), Some(want));
        assert_eq!(
            Poly::from_ints(&[1, 0, 1]).roots_in_field(Field::Rational),
            Some(vec![])
        );
        let r = Poly::from_ints(&[1, 0, 1])
            .roots_in_field(Field::Prime(13))
            .unwrap();
        assert_eq!(r, vec![Scalar::Mod(5, 13), Scalar::Mod(8, 13)]);
    }

    #[test]
    fn interpolation_hits_values() {
        let pts = [Scalar::from(0), Scalar::from(2), Scalar::from(-1)];
        let vals = [Scalar::from(4), Scalar::from(7), Scalar::ratio(1, 2)];
        let f = Poly::interpolate(&pts, &vals);
        assert!(f.deg() <= 2);
        for (p, v) in pts.iter().zip(&vals) {
            assert_eq!(&f.eval(p), v);
        }
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        // (x^2-1, x^2-2x+1) -> x-1
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, -2, 1])), p(&[-1, 1]));
        // (f, 0) -> monic f
        assert_eq!(
            p(&[2, 4]).gcd(&Poly::zero()),
            Poly::new(vec![Scalar::ratio(1, 2), Scalar::one()])
        );
        // (x^3+x, x^2+1) -> x^2+1
        assert_eq!(p(&[0, 1, 0, 1]).gcd(&p(&[1, 0, 1])), p(&[1, 0, 1]));
        assert!(Poly::zero().gcd(&Poly::zero()).is_zero());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(p(&[-1, 0, 1]).is_squarefree(), Some(true));
        assert_eq!(p(&[1, -2, 1]).is_squarefree(), Some(false));
        assert_eq!(p(&[5]).is_squarefree(), Some(true));
        assert_eq!(Poly::zero().is_squarefree(), None);
    }

    #[test]
    fn division_and_xgcd() {
        let f = p(&[3, 0, 2, 1]);
        let g = p(&[1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(&(&q * &g) + &r, f);
        let (gg, s, t) = f.xgcd(&g);
        assert_eq!(&(&s * &f) + &(&t * &g), gg);
        assert!(gg.is_one());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 0, 0, 3]).to_string(), "3*x^4 - x + 1");
        assert_eq!(p(&[0, 0, -1]).to_string(), "-x^2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(
            Poly::new(vec![Scalar::ratio(3, 2), Scalar::zero(), Scalar::one()]).to_string(),
            "x^2 + 3/2"
        );
    }

    #[test]
    fn root_multiplicity_and_reverse() {
        let f = &p(&[-1, 1]).pow(3) * &p(&[2, 1]);
        assert_eq!(f.root_multiplicity(&Scalar::one()), 3);
        assert_eq!(p(&[1, 2]).reversed(3), p(&[0, 0, 2, 1]));
    }
}
