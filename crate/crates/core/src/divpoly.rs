//! Division polynomials of short Weierstrass models y² = x³ + Ax + B.
//!
//! The recursion is run with y eliminated: write ψₙ = Fₙ for odd n and
//! ψₙ = 2y·Fₙ for even n. With Φ = 4(x³ + Ax + B) = (2y)² the standard
//! recursions become, for n = 2m + 1,
//!
//! * m even: F = Φ²·F_{m+2}·F_m³ − F_{m−1}·F_{m+1}³
//! * m odd:  F = F_{m+2}·F_m³ − Φ²·F_{m−1}·F_{m+1}³
//!
//! and F_{2m} = F_m·(F_{m+2}·F_{m−1}² − F_{m−2}·F_{m+1}²). Only the indices
//! reachable from the target are computed, so ψₙ costs O(log n) levels.
//!
//! Rational models are handled on the integral model (Au⁴, Bu⁶) and scaled
//! back with ψₙ^E(x) = u^{−(n²−1)}·ψₙ^{E_u}(u²x).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::intpoly;
use crate::arith::poly::Poly;
use crate::arith::rational::{from_big, IntPoly, Rational, RationalPolynomial};
use crate::arith::ring::{Field, Ring};
use crate::curve::{EllipticCurve, Point};
use crate::error::{Error, Result};

/// Smallest and largest odd index accepted by [`psi`].
pub const PSI_MIN: u64 = 3;
pub const PSI_MAX: u64 = 37;

/// ψₙ of a short model, as a polynomial in x.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisionPolynomial {
    pub n: u64,
    pub a: Rational,
    pub b: Rational,
    pub poly: RationalPolynomial,
}

/// Memoized y-free recursion over a coefficient ring with a pluggable
/// multiplication (so integer polynomials can use the fast kernel).
struct Recursion<T: Ring> {
    phi2: Poly<T>,
    memo: HashMap<u64, Poly<T>>,
    mul: fn(&Poly<T>, &Poly<T>) -> Poly<T>,
}

impl<T: Ring> Recursion<T> {
    fn new(a: T, b: T, mul: fn(&Poly<T>, &Poly<T>) -> Poly<T>) -> Self {
        let k = |n: i64| a.from_int_like(n);
        let zero = a.zero_like();
        let one = a.one_like();
        // Φ = 4x³ + 4Ax + 4B
        let phi = Poly::new(vec![k(4).mul_ref(&b), k(4).mul_ref(&a), zero.clone(), k(4)]);
        let phi2 = mul(&phi, &phi);
        let mut memo = HashMap::new();
        memo.insert(0, Poly::zero());
        memo.insert(1, Poly::constant(one.clone()));
        memo.insert(2, Poly::constant(one));
        let a2 = a.square();
        memo.insert(
            3,
            Poly::new(vec![-a2.clone(), k(12).mul_ref(&b), k(6).mul_ref(&a), zero.clone(), k(3)]),
        );
        // F₄ = 2(x⁶ + 5Ax⁴ + 20Bx³ − 5A²x² − 4ABx − 8B² − A³)
        let f4 = vec![
            -(k(8).mul_ref(&b.square())) - a2.mul_ref(&a),
            -(k(4).mul_ref(&a).mul_ref(&b)),
            -(k(5).mul_ref(&a2)),
            k(20).mul_ref(&b),
            k(5).mul_ref(&a),
            zero,
            k(1),
        ];
        memo.insert(4, Poly::new(f4).scale(&k(2)));
        Recursion { phi2, memo, mul }
    }

    fn cube(&self, f: &Poly<T>) -> Poly<T> {
        (self.mul)(&(self.mul)(f, f), f)
    }

    fn get(&mut self, n: u64) -> Poly<T> {
        if let Some(v) = self.memo.get(&n) {
            return v.clone();
        }
        let m = n / 2;
        let r = if n % 2 == 1 {
            let (fm2, fm, fm1, fp1) = (self.get(m + 2), self.get(m), self.get(m - 1), self.get(m + 1));
            let first = (self.mul)(&fm2, &self.cube(&fm));
            let second = (self.mul)(&fm1, &self.cube(&fp1));
            if m.is_multiple_of(2) {
                &(self.mul)(&self.phi2, &first) - &second
            } else {
                &first - &(self.mul)(&self.phi2, &second)
            }
        } else {
            let (fm, fm2, fm1, fmm2, fp1) =
                (self.get(m), self.get(m + 2), self.get(m - 1), self.get(m - 2), self.get(m + 1));
            let left = (self.mul)(&fm2, &(self.mul)(&fm1, &fm1));
            let right = (self.mul)(&fmm2, &(self.mul)(&fp1, &fp1));
            (self.mul)(&fm, &(&left - &right))
        };
        self.memo.insert(n, r.clone());
        r
    }
}

/// Fₙ over the integers for an integral short model (ψₙ for odd n,
/// ψₙ/(2y) for even n).
pub fn f_n_integral(a: &BigInt, b: &BigInt, n: u64) -> IntPoly {
    let mut rec = Recursion::new(a.clone(), b.clone(), intpoly::mul);
    rec.get(n)
}

/// A positive u with A·u⁴ and B·u⁶ integral: the lcm of the denominators.
fn integral_scale(a: &Rational, b: &Rational) -> BigInt {
    a.denom().lcm(b.denom())
}

/// Fₙ over ℚ for y² = x³ + Ax + B with rational A, B, any n ≥ 0.
pub fn f_n_rational(a: &Rational, b: &Rational, n: u64) -> RationalPolynomial {
    let u = integral_scale(a, b);
    if One::is_one(&u) {
        return f_n_integral(a.numer(), b.numer(), n).map(from_big);
    }
    let u2 = &u * &u;
    let ai = (a * from_big(&(&u2 * &u2))).to_integer();
    let bi = (b * from_big(&(&u2 * &u2 * &u2))).to_integer();
    let g = f_n_integral(&ai, &bi, n);
    // F^E(x) = u^{-e} · F^{E_u}(u² x) with e = n²−1 (odd n) or n²−4 (even n).
    let e = if n % 2 == 1 { n * n - 1 } else { n * n - 4 };
    let mut coeffs = Vec::with_capacity(g.coeffs().len());
    let mut upow = BigInt::one();
    for c in g.coeffs() {
        coeffs.push(Rational::new(c * &upow, num_traits::pow(u.clone(), e as usize)));
        upow *= &u2;
    }
    Poly::new(coeffs)
}

/// Fₙ over an arbitrary field (number fields, 𝔽ₚ), schoolbook products.
pub fn f_n_generic<F: Field>(a: &F, b: &F, n: u64) -> Poly<F> {
    fn mul<F: Field>(x: &Poly<F>, y: &Poly<F>) -> Poly<F> {
        x * y
    }
    let mut rec = Recursion::new(a.clone(), b.clone(), mul::<F>);
    rec.get(n)
}

fn check_index(n: u64) -> Result<()> {
    if n.is_multiple_of(2) || !(PSI_MIN..=PSI_MAX).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "division polynomial index must be odd and in [{PSI_MIN}, {PSI_MAX}], got {n}"
        )));
    }
    Ok(())
}

/// ψₙ of a short model over ℚ (odd 3 ≤ n ≤ 37).
pub fn psi(e: &EllipticCurve<Rational>, n: u64) -> Result<DivisionPolynomial> {
    check_index(n)?;
    if !e.is_short() {
        return Err(Error::InvalidInput("division polynomials need a short model".into()));
    }
    let (a, b) = (e.a4().clone(), e.a6().clone());
    let poly = f_n_rational(&a, &b, n);
    Ok(DivisionPolynomial { n, a, b, poly })
}

/// ψₙ for odd n of a short model given by coefficients, without range checks
/// beyond oddness (used for prime powers such as 25, 49 by the torsion engine).
pub fn psi_odd(a: &Rational, b: &Rational, n: u64) -> RationalPolynomial {
    assert!(n % 2 == 1, "odd index expected");
    f_n_rational(a, b, n)
}

/// ψₙ/ψ₂ for even n: its roots are the x-coordinates of points in E[n]
/// outside E[2].
pub fn psi_even_reduced(a: &Rational, b: &Rational, n: u64) -> RationalPolynomial {
    assert!(n.is_multiple_of(2) && n >= 2, "even index expected");
    f_n_rational(a, b, n)
}

/// Whether ψₙ(x₀) = 0 for a short model over ℚ and x₀ in any extension.
pub fn is_n_torsion_x<F: Field>(e: &EllipticCurve<Rational>, n: u64, x0: &F) -> Result<bool> {
    let dp = psi(e, n)?;
    let v = dp
        .poly
        .eval_with(x0, |c| x0.from_rational_like(c).expect("characteristic zero embedding"));
    Ok(v.is_zero())
}

/// Whether P has exact order n on E: nP = O and (n/q)P ≠ O for primes q | n.
pub fn certify_order<F: Field>(e: &EllipticCurve<F>, p: &Point<F>, n: u64) -> bool {
    e.has_order(p, n)
}

impl DivisionPolynomial {
    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    pub fn leading(&self) -> Rational {
        self.poly.leading().cloned().unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::fp::Fp;
    use crate::arith::rational::{int, qpoly};

    #[test]
    fn psi3_closed_form() {
        let e = EllipticCurve::from_ints(&[-7, 11]).unwrap();
        let p3 = psi(&e, 3).unwrap();
        assert_eq!(p3.poly, qpoly(&[-49, 132, -42, 0, 3]));
        let e = EllipticCurve::from_ints(&[0, 1]).unwrap();
        assert_eq!(psi(&e, 3).unwrap().poly, qpoly(&[0, 12, 0, 0, 3]));
    }

    #[test]
    fn degrees_and_leading() {
        let e = EllipticCurve::from_ints(&[-10395, 444150]).unwrap();
        for n in [3u64, 5, 7, 9, 11, 21] {
            let p = psi(&e, n).unwrap();
            assert_eq!(p.degree() as u64, (n * n - 1) / 2);
            assert_eq!(p.leading(), int(n as i64));
        }
        assert!(psi(&e, 4).is_err());
        assert!(psi(&e, 39).is_err());
        assert!(psi(&e, 1).is_err());
    }

    #[test]
    fn rational_coefficients_scale_correctly() {
        let a = Rational::new(BigInt::from(-3), BigInt::from(4));
        let b = Rational::new(BigInt::from(5), BigInt::from(8));
        for n in [3u64, 4, 5, 6, 7] {
            let direct = f_n_generic(&a, &b, n);
            assert_eq!(f_n_rational(&a, &b, n), direct, "index {n}");
        }
    }

    #[test]
    fn generic_matches_integral_mod_p() {
        let p = 101;
        let direct = f_n_generic(&Fp::from_i64(-7, p), &Fp::from_i64(11, p), 9);
        let over_z = f_n_integral(&BigInt::from(-7), &BigInt::from(11), 9);
        let reduced: Vec<u64> = over_z.coeffs().iter().map(|c| crate::arith::fp::reduce_bigint(c, p)).collect();
        let got: Vec<u64> = direct.coeffs().iter().map(|c| c.value()).collect();
        assert_eq!(got, reduced);
    }

    #[test]
    fn torsion_x_checks() {
        let e = EllipticCurve::from_ints(&[0, 1]).unwrap();
        assert!(!is_n_torsion_x(&e, 3, &int(17)).unwrap());
        assert!(is_n_torsion_x(&e, 3, &int(0)).unwrap());
    }
}
