use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring element with value semantics.
///
/// Elements carry whatever context they need (a modulus, a parent field), so
/// the distinguished constants are produced from an existing element rather
/// than out of thin air.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_int_like(&self, n: i64) -> Self;
    /// Product without consuming either operand.
    fn mul_ref(&self, rhs: &Self) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn square(&self) -> Self {
        self.mul_ref(self)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul_ref(&r))
    }

    /// Embed a rational number; `None` when the denominator is not invertible
    /// (reduction modulo a prime dividing it).
    fn from_rational_like(&self, q: &BigRational) -> Option<Self> {
        let num = self.from_bigint_like(q.numer());
        let den = self.from_bigint_like(q.denom());
        num.div_ref(&den)
    }

    fn from_bigint_like(&self, n: &BigInt) -> Self;

    /// Characteristic of the field (0 for number fields).
    fn characteristic(&self) -> u64;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational_like(&self, q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Formatting hooks for coefficients printed inside polynomial text.
pub trait CoeffText {
    /// True for coefficients that print with a leading minus sign.
    fn is_negative_text(&self) -> bool;
    /// Text of the absolute value, parenthesised when it is not atomic.
    fn abs_text(&self) -> String;
    fn is_unit_text(&self) -> bool;
}

impl CoeffText for BigRational {
    fn is_negative_text(&self) -> bool {
        self.is_negative()
    }
    fn abs_text(&self) -> String {
        let a = self.abs();
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_unit_text(&self) -> bool {
        One::is_one(&self.abs())
    }
}

impl CoeffText for BigInt {
    fn is_negative_text(&self) -> bool {
        self.is_negative()
    }
    fn abs_text(&self) -> String {
        self.abs().to_string()
    }
    fn is_unit_text(&self) -> bool {
        One::is_one(&self.abs())
    }
}
