//! Text syntax for polynomials and rational functions in `x` and `y`.
//!
//! Grammar: sums and differences of products and quotients of powers of
//! `x`, `y`, integers and parenthesized expressions. Exponents are integer
//! literals, negative ones only for expressions free of `y`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::bivariate::BiPoly;
use super::poly::Poly;
use super::ratfun::RationalFunction;
use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    X,
    Y,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Divisor offset kept for error reporting.
    Div(Box<Expr>, Box<Expr>, usize),
    /// Base offset kept for error reporting.
    Pow(Box<Expr>, i64, usize),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            b'x' => Tok::X,
            b'y' => Tok::Y,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(
                    start,
                    format!("unexpected character '{ch}'"),
                ));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Tok::End => ParseError::new(self.offset(), "unexpected end of input"),
            t => ParseError::new(self.offset(), format!("unexpected token {t:?}")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = match self.peek() {
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let eoff = self.offset();
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.unexpected());
        };
        self.bump();
        let e: i64 = i64::try_from(&n)
            .ok()
            .filter(|e| *e <= 1_000_000)
            .ok_or_else(|| ParseError::new(eoff, "exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }, at))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::X => {
                self.bump();
                Ok(Expr::X)
            }
            Tok::Y => {
                self.bump();
                Ok(Expr::Y)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected());
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses text into an expression tree.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected());
    }
    Ok(e)
}

/// Value of an expression: a polynomial in `y` over `k(x)`.
#[derive(Clone, Debug, PartialEq)]
struct YPoly(Vec<RationalFunction>);

impl YPoly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(RationalFunction::is_zero) {
            self.0.pop();
        }
        self
    }

    fn constant(r: RationalFunction) -> Self {
        YPoly(vec![r]).trim()
    }

    fn y_free(&self) -> Option<RationalFunction> {
        match self.0.len() {
            0 => Some(RationalFunction::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    fn add(&self, o: &YPoly) -> YPoly {
        let n = self.0.len().max(o.0.len());
        let z = RationalFunction::zero();
        YPoly(
            (0..n)
                .map(|j| self.0.get(j).unwrap_or(&z) + o.0.get(j).unwrap_or(&z))
                .collect(),
        )
        .trim()
    }

    fn neg(&self) -> YPoly {
        YPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, o: &YPoly) -> YPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return YPoly(Vec::new());
        }
        let mut out = vec![RationalFunction::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        YPoly(out).trim()
    }
}

fn eval(e: &Expr) -> Result<YPoly, ParseError> {
    Ok(match e {
        Expr::Int(n) => YPoly::constant(RationalFunction::constant(Scalar::Rat(
            BigRational::from_integer(n.clone()),
        ))),
        Expr::X => YPoly::constant(RationalFunction::x_pow(1)),
        Expr::Y => YPoly(vec![RationalFunction::zero(), RationalFunction::one()]),
        Expr::Neg(a) => eval(a)?.neg(),
        Expr::Add(a, b) => eval(a)?.add(&eval(b)?),
        Expr::Sub(a, b) => eval(a)?.add(&eval(b)?.neg()),
        Expr::Mul(a, b) => eval(a)?.mul(&eval(b)?),
        Expr::Div(a, b, at) => {
            let d = eval(b)?
                .y_free()
                .ok_or_else(|| ParseError::new(*at, "division by an expression involving y"))?;
            let inv = d
                .inv()
                .ok_or_else(|| ParseError::new(*at, "division by zero"))?;
            eval(a)?.mul(&YPoly::constant(inv))
        }
        Expr::Pow(a, k, at) => {
            let base = eval(a)?;
            if *k < 0 {
                let r = base.y_free().ok_or_else(|| {
                    ParseError::new(*at, "negative power of an expression involving y")
                })?;
                if r.is_zero() {
                    return Err(ParseError::new(*at, "negative power of zero"));
                }
                YPoly::constant(r.pow(*k))
            } else {
                let mut acc = YPoly::constant(RationalFunction::one());
                for _ in 0..*k {
                    acc = acc.mul(&base);
                }
                acc
            }
        }
    })
}

/// Parses a rational function of `x`.
pub fn parse_rational_function(src: &str) -> Result<RationalFunction, ParseError> {
    let v = eval(&parse_expr(src)?)?;
    v.y_free()
        .ok_or_else(|| ParseError::new(0, "expected an expression in x only"))
}

/// Parses a polynomial in `x`.
pub fn parse_poly(src: &str) -> Result<Poly, ParseError> {
    let r = parse_rational_function(src)?;
    r.as_poly()
        .cloned()
        .ok_or_else(|| ParseError::new(0, "expected a polynomial in x"))
}

/// Parses a polynomial in `x` and `y`.
pub fn parse_bipoly(src: &str) -> Result<BiPoly, ParseError> {
    let v = eval(&parse_expr(src)?)?;
    let coeffs =
        v.0.iter()
            .map(|c| c.as_poly().cloned())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| ParseError::new(0, "expected a polynomial in x and y"))?;
    Ok(BiPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_canonical_text() {
        for s in ["3*x^4 - x + 1", "x^2 + 3/2", "-x", "0", "-7/3*x^5 + 2*x"] {
            assert_eq!(parse_poly(s).unwrap().to_string(), s);
        }
        for s in ["y^3 + 3*x*y - x + 1", "y^2 - x^3 - 1"] {
            assert_eq!(parse_bipoly(s).unwrap().to_string(), s);
        }
        for s in ["(x + 1)/x^2", "1/x", "-2/(x^2 + 1)"] {
            assert_eq!(parse_rational_function(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_poly("y^2 -").unwrap_err().offset, 5);
        assert_eq!(parse_poly("x + $").unwrap_err().offset, 4);
        assert_eq!(parse_poly("(x + 1").unwrap_err().offset, 6);
        assert!(parse_bipoly("x/y").is_err());
        assert!(parse_poly("x^-1").is_err());
        assert_eq!(
            parse_rational_function("x^-1").unwrap(),
            RationalFunction::x_pow(-1)
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_poly("-x^2").unwrap(), Poly::from_ints(&[0, 0, -1]));
        assert_eq!(
            parse_poly("2*(x+1)^2 - 1").unwrap(),
            Poly::from_ints(&[1, 4, 2])
        );
        assert_eq!(
            parse_poly("x/2").unwrap(),
            Poly::new(vec![Scalar::zero(), Scalar::ratio(1, 2)])
        );
    }
}
