use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;

pub type Rational = BigRational;
pub type RationalPolynomial = Poly<Rational>;
pub type IntPoly = Poly<BigInt>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Rational polynomial from small integer coefficients, ascending degree.
pub fn qpoly(coeffs: &[i64]) -> RationalPolynomial {
    Poly::new(coeffs.iter().map(|&c| int(c)).collect())
}

pub fn zpoly(coeffs: &[i64]) -> IntPoly {
    Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

pub fn to_rational_poly(f: &IntPoly) -> RationalPolynomial {
    f.map(from_big)
}

/// Content of an integer polynomial, sign taken from the leading coefficient.
pub fn content(f: &IntPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in f.coeffs() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if f.leading().is_some_and(|l| l.is_negative()) {
        -g
    } else {
        g
    }
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(f: &IntPoly) -> IntPoly {
    if f.is_zero() {
        return Poly::zero();
    }
    let c = content(f);
    Poly::new(f.coeffs().iter().map(|a| a / &c).collect())
}

/// Write `f = scale * g` with `g` a primitive integer polynomial with positive
/// leading coefficient.
pub fn rational_to_primitive(f: &RationalPolynomial) -> (Rational, IntPoly) {
    if f.is_zero() {
        return (Rational::zero(), Poly::zero());
    }
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * from_big(&den)).to_integer()).collect();
    let g = Poly::new(ints);
    let c = content(&g);
    let prim = Poly::new(g.coeffs().iter().map(|a| a / &c).collect());
    (Rational::new(c, den), prim)
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

pub fn is_rational_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

/// Squarefree integer representing the class of a nonzero rational in
/// Q*/(Q*)^2.
pub fn squarefree_class(q: &Rational) -> BigInt {
    assert!(!q.is_zero(), "zero has no square class");
    let n = q.numer() * q.denom();
    squarefree_part(&n)
}

/// Squarefree part of a nonzero integer (sign kept).
///
/// Trial division until the cofactor has at most two prime factors; past
/// 10^7 the cofactor is only checked for being a perfect square.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "zero has no squarefree part");
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = 2u64;
    loop {
        let pb = BigInt::from(p);
        if &pb * &pb * &pb > m || p > 10_000_000 {
            break;
        }
        let mut odd = false;
        while (&m % &pb).is_zero() {
            m /= &pb;
            odd = !odd;
        }
        if odd {
            out *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if int_sqrt_exact(&m).is_some() {
        m = BigInt::one();
    }
    out * m * sign
}

pub fn lcm_of_denominators(f: &RationalPolynomial) -> BigInt {
    f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Parse `a` or `a/b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(n))
    }
}

pub fn rational_text(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_decomposition() {
        let f = Poly::new(vec![rat(1, 2), rat(3, 4), int(-3)]);
        let (c, g) = rational_to_primitive(&f);
        assert_eq!(g, zpoly(&[-2, -3, 12]));
        assert_eq!(to_rational_poly(&g).scale(&c), f);
    }

    #[test]
    fn squarefree_classes() {
        assert_eq!(squarefree_class(&int(-12)), BigInt::from(-3));
        assert_eq!(squarefree_class(&rat(5, 4)), BigInt::from(5));
        assert_eq!(squarefree_class(&rat(2, 3)), BigInt::from(6));
        assert_eq!(squarefree_class(&int(49)), BigInt::from(1));
        assert_eq!(squarefree_class(&int(2 * 7 * 7 * 13)), BigInt::from(26));
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(-9, 4)), None);
        assert_eq!(rational_sqrt(&int(8)), None);
    }
}
