//! Integer polynomial kernels: fast multiplication by Kronecker
//! substitution, exact division, reduction modulo an integer, and norms.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp::symmetric;
use super::poly::Poly;
use super::rational::IntPoly;

fn max_bits(c: &[BigInt]) -> u64 {
    c.iter().map(|v| v.bits()).max().unwrap_or(0)
}

/// Product of integer polynomials. Large inputs are packed into a single
/// big integer so the multiplication runs through the big-integer kernel.
pub fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let (la, lb) = (a.coeffs().len(), b.coeffs().len());
    if la.min(lb) < 16 {
        return a * b;
    }
    let slot = max_bits(a.coeffs()) + max_bits(b.coeffs()) + 64 - (la.min(lb) as u64).leading_zeros() as u64 + 2;
    let pa = pack(a.coeffs(), slot);
    let pb = pack(b.coeffs(), slot);
    unpack(&(pa * pb), slot, la + lb - 1)
}

pub fn square(a: &IntPoly) -> IntPoly {
    mul(a, a)
}

fn pack(c: &[BigInt], slot: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for v in c.iter().rev() {
        acc <<= slot as usize;
        acc += v;
    }
    acc
}

fn unpack(v: &BigInt, slot: u64, len: usize) -> IntPoly {
    let mut out = Vec::with_capacity(len);
    let negative = v.sign() == Sign::Minus;
    let mut mag = v.magnitude().clone();
    let half = num_bigint::BigUint::one() << (slot as usize - 1);
    let full = num_bigint::BigUint::one() << slot as usize;
    let mask = &full - 1u32;
    let mut carry = false;
    for _ in 0..len {
        let mut digit = &mag & &mask;
        mag >>= slot as usize;
        if carry {
            digit += 1u32;
        }
        carry = false;
        let val = if digit >= half {
            carry = true;
            BigInt::from_biguint(Sign::Minus, &full - &digit)
        } else {
            BigInt::from_biguint(Sign::Plus, digit)
        };
        out.push(if negative { -val } else { val });
    }
    Poly::new(out)
}

/// Exact quotient a / b over ℤ, `None` if b does not divide a.
pub fn div_exact(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let bl = b.leading().expect("division by the zero polynomial");
    if a.is_zero() {
        return Some(Poly::zero());
    }
    let (na, nb) = (a.coeffs().len(), b.coeffs().len());
    if na < nb {
        return None;
    }
    // Cheap necessary conditions first: leading and constant coefficients.
    if !a.leading().unwrap().is_multiple_of(bl) {
        return None;
    }
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    let mut q = vec![BigInt::zero(); na - nb + 1];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + nb - 1].div_rem(bl);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bc) in b.coeffs().iter().enumerate() {
                r[i + j] -= &c * bc;
            }
        }
        q[i] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(Poly::new(q))
    } else {
        None
    }
}

/// Coefficients reduced into the symmetric range modulo m.
pub fn sym_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    Poly::new(f.coeffs().iter().map(|c| symmetric(c, m)).collect())
}

/// Coefficients reduced into [0, m).
pub fn pos_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    Poly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Division with remainder by a monic polynomial, coefficients modulo m.
pub fn div_rem_monic_mod(a: &IntPoly, d: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    debug_assert!(d.leading().is_some_and(|l| l.is_one()));
    let nd = d.coeffs().len();
    if a.coeffs().len() < nd {
        return (Poly::zero(), pos_mod(a, m));
    }
    let mut r: Vec<BigInt> = a.coeffs().iter().map(|c| c.mod_floor(m)).collect();
    let mut q = vec![BigInt::zero(); r.len() - nd + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + nd - 1].mod_floor(m);
        if !c.is_zero() {
            for (j, dc) in d.coeffs().iter().enumerate() {
                r[i + j] -= &c * dc;
            }
        }
        q[i] = c;
    }
    r.truncate(nd - 1);
    let r = r.into_iter().map(|c| c.mod_floor(m)).collect();
    (Poly::new(q), Poly::new(r))
}

/// Product modulo m, coefficients in [0, m).
pub fn mul_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    pos_mod(&mul(a, b), m)
}

/// Squared Euclidean norm.
pub fn norm2_squared(f: &IntPoly) -> BigInt {
    f.coeffs().iter().map(|c| c * c).sum()
}

/// Largest absolute coefficient.
pub fn max_norm(f: &IntPoly) -> BigInt {
    f.coeffs().iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::zpoly;

    #[test]
    fn kronecker_matches_schoolbook() {
        let a = Poly::new((0..40).map(|i| BigInt::from((i * 7919 % 101) as i64 - 50) << (i % 5 * 20)).collect());
        let b = Poly::new((0..33).map(|i| BigInt::from((i * 104729 % 97) as i64 - 48)).collect());
        assert_eq!(mul(&a, &b), &a * &b);
        let c = Poly::new((0..20).map(|i| BigInt::from(-(i as i64) - 1)).collect());
        assert_eq!(mul(&c, &c), &c * &c);
    }

    #[test]
    fn exact_division() {
        let a = zpoly(&[-1, 0, 1]);
        assert_eq!(div_exact(&a, &zpoly(&[-1, 1])), Some(zpoly(&[1, 1])));
        assert_eq!(div_exact(&zpoly(&[1, 0, 1]), &zpoly(&[1, 1])), None);
        assert_eq!(div_exact(&zpoly(&[2, 4]), &zpoly(&[1, 2])), Some(zpoly(&[2])));
        assert_eq!(div_exact(&zpoly(&[1, 3]), &zpoly(&[1, 2])), None);
    }
}
