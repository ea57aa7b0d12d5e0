//! Text format for univariate rational polynomials: sums and products of
//! integer or rational literals, one variable, `^` with nonnegative integer
//! exponents, and parentheses, e.g. `x^3-3*x^2+3` or `-1/2*(t+1)^2`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::poly::Poly;
use super::rational::{Rational, RationalPolynomial};
use crate::error::{Error, Result};

/// Largest exponent accepted by the parser.
const MAX_EXPONENT: u32 = 4096;

/// Parse a polynomial in any single variable name.
pub fn parse_poly(s: &str) -> Result<RationalPolynomial> {
    Ok(parse_poly_named(s)?.0)
}

/// Parse a polynomial and also return the variable name it used (if any).
pub fn parse_poly_named(s: &str) -> Result<(RationalPolynomial, Option<String>)> {
    let mut p = Parser { chars: s.chars().collect(), pos: 0, var: None };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty input"));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected character {:?}", p.chars[p.pos])));
    }
    Ok((poly, p.var))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    var: Option<String>,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<RationalPolynomial> {
        self.skip_ws();
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c.is_alphabetic() || c == '_' || c == '(')
    }

    fn term(&mut self) -> Result<RationalPolynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some('/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "division only by a nonzero constant".into(),
                        });
                    }
                    let inv = d.coeffs()[0].recip();
                    acc = acc.scale(&inv);
                }
                _ if self.starts_factor() => {
                    acc = acc * self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalPolynomial> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?;
            let e = e
                .to_u32()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| Error::Parse { pos: at, msg: "exponent out of range".into() })?;
            if e == 0 {
                return Ok(Poly::constant(Rational::from_integer(1.into())));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        Ok(text.parse().expect("digits parse as an integer"))
    }

    fn atom(&mut self) -> Result<RationalPolynomial> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match &self.var {
                    Some(v) if *v != name => Err(Error::Parse {
                        pos: start,
                        msg: format!("second variable {name:?} (already using {v:?})"),
                    }),
                    _ => {
                        self.var = Some(name);
                        Ok(Poly::monomial(Rational::from_integer(1.into()), 1))
                    }
                }
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => Err(self.error(&format!("unexpected character {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parse a comma-separated list of rationals such as `1,-1/2,0`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        let q = super::rational::parse_rational(part).ok_or_else(|| Error::Parse {
            pos: offset + part.len() - part.trim_start().len(),
            msg: format!("expected a rational number, found {:?}", part.trim()),
        })?;
        out.push(q);
        offset += part.chars().count() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{qpoly, rat};

    #[test]
    fn parses_standard_forms() {
        assert_eq!(parse_poly("x^3-3*x^2+3").unwrap(), qpoly(&[3, 0, -3, 1]));
        assert_eq!(parse_poly("3*x^4+12*x").unwrap(), qpoly(&[0, 12, 0, 0, 3]));
        assert_eq!(parse_poly(" -x ").unwrap(), qpoly(&[0, -1]));
        assert_eq!(parse_poly("x").unwrap(), qpoly(&[0, 1]));
        assert_eq!(parse_poly("(t+1)^2").unwrap(), qpoly(&[1, 2, 1]));
        assert_eq!(parse_poly("1/2*x").unwrap(), Poly::new(vec![rat(0, 1), rat(1, 2)]));
        assert_eq!(parse_poly("2x^2").unwrap(), qpoly(&[0, 0, 2]));
        assert_eq!(parse_poly("0").unwrap(), qpoly(&[]));
    }

    #[test]
    fn reports_positions() {
        match parse_poly("x^2+*3") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("x+y") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x/(x+1)").is_err());
        assert!(parse_poly("1/0").is_err());
    }

    #[test]
    fn rational_lists() {
        let v = parse_rational_list("1, -1/2,0").unwrap();
        assert_eq!(v, vec![rat(1, 1), rat(-1, 2), rat(0, 1)]);
        assert!(parse_rational_list("1,,2").is_err());
    }
}
