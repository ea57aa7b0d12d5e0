//! Elliptic curves in long Weierstrass form over an arbitrary field, the
//! chord–tangent group law, quadratic twists, short models, reduction modulo
//! primes and naive point counting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::fp::{legendre, reduce_rational, Fp};
use crate::arith::parse::parse_rational_list;
use crate::arith::rational::{rational_text, Rational};
use crate::arith::ring::Field;
use crate::error::{Error, Result};

/// Largest prime for which [`EllipticCurve::count_points`] enumerates.
pub const COUNT_POINTS_LIMIT: u64 = 1 << 20;

/// A point: the identity or an affine pair satisfying the curve equation.
#[derive(Clone, Debug, PartialEq)]
pub enum Point<F> {
    Infinity,
    Affine(F, F),
}

impl<F> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::Infinity => None,
            Point::Affine(_, y) => Some(y),
        }
    }
}

impl<F: fmt::Display> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// Admissible change of variables x = u²x' + r, y = u³y' + s·u²x' + t.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateChange<F> {
    pub u: F,
    pub r: F,
    pub s: F,
    pub t: F,
}

impl<F: Field> CoordinateChange<F> {
    pub fn identity(like: &F) -> Self {
        CoordinateChange { u: like.one_like(), r: like.zero_like(), s: like.zero_like(), t: like.zero_like() }
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one() && self.r.is_zero() && self.s.is_zero() && self.t.is_zero()
    }

    /// Image of a point of the old model on the new model.
    pub fn forward(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = self.u.square();
                let u3 = u2.mul_ref(&self.u);
                let xr = x.clone() - self.r.clone();
                let xn = xr.div_ref(&u2).expect("u is a unit");
                let yn = (y.clone() - self.s.mul_ref(&xr) - self.t.clone())
                    .div_ref(&u3)
                    .expect("u is a unit");
                Point::Affine(xn, yn)
            }
        }
    }

    /// Image of a point of the new model on the old model.
    pub fn backward(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = self.u.square();
                let u3 = u2.mul_ref(&self.u);
                let u2x = u2.mul_ref(x);
                let xo = u2x.clone() + self.r.clone();
                let yo = u3.mul_ref(y) + self.s.mul_ref(&u2x) + self.t.clone();
                Point::Affine(xo, yo)
            }
        }
    }

    /// Old x-coordinate from a new one.
    pub fn x_backward(&self, x: &F) -> F {
        self.u.square().mul_ref(x) + self.r.clone()
    }

    /// New x-coordinate from an old one.
    pub fn x_forward(&self, x: &F) -> F {
        (x.clone() - self.r.clone()).div_ref(&self.u.square()).expect("u is a unit")
    }
}

/// Elliptic curve y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆ with cached
/// invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticCurve<F> {
    a: [F; 5],
    b2: F,
    b4: F,
    b6: F,
    b8: F,
    c4: F,
    c6: F,
    disc: F,
    j: F,
}

impl<F: Field> EllipticCurve<F> {
    /// Curve from [a₁, a₂, a₃, a₄, a₆]; rejects singular models.
    pub fn new(a: [F; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = &a;
        let k = |n: i64| a1.from_int_like(n);
        let b2 = a1.square() + k(4).mul_ref(a2);
        let b4 = k(2).mul_ref(a4) + a1.mul_ref(a3);
        let b6 = a3.square() + k(4).mul_ref(a6);
        let b8 = a1.square().mul_ref(a6) + k(4).mul_ref(a2).mul_ref(a6)
            - a1.mul_ref(a3).mul_ref(a4)
            + a2.mul_ref(&a3.square())
            - a4.square();
        let c4 = b2.square() - k(24).mul_ref(&b4);
        let c6 = -(b2.square().mul_ref(&b2)) + k(36).mul_ref(&b2).mul_ref(&b4) - k(216).mul_ref(&b6);
        let disc = -(b2.square().mul_ref(&b8)) - k(8).mul_ref(&b4.square().mul_ref(&b4))
            - k(27).mul_ref(&b6.square())
            + k(9).mul_ref(&b2).mul_ref(&b4).mul_ref(&b6);
        if disc.is_zero() {
            return Err(Error::Singular);
        }
        let j = c4.square().mul_ref(&c4).div_ref(&disc).expect("nonzero discriminant");
        Ok(EllipticCurve { a, b2, b4, b6, b8, c4, c6, disc, j })
    }

    /// Short model y² = x³ + Ax + B.
    pub fn short(a: F, b: F) -> Result<Self> {
        let z = a.zero_like();
        EllipticCurve::new([z.clone(), z.clone(), z, a, b])
    }

    pub fn a_invariants(&self) -> &[F; 5] {
        &self.a
    }
    pub fn a1(&self) -> &F {
        &self.a[0]
    }
    pub fn a2(&self) -> &F {
        &self.a[1]
    }
    pub fn a3(&self) -> &F {
        &self.a[2]
    }
    pub fn a4(&self) -> &F {
        &self.a[3]
    }
    pub fn a6(&self) -> &F {
        &self.a[4]
    }
    pub fn b2(&self) -> &F {
        &self.b2
    }
    pub fn b4(&self) -> &F {
        &self.b4
    }
    pub fn b6(&self) -> &F {
        &self.b6
    }
    pub fn b8(&self) -> &F {
        &self.b8
    }
    pub fn c4(&self) -> &F {
        &self.c4
    }
    pub fn c6(&self) -> &F {
        &self.c6
    }
    pub fn discriminant(&self) -> &F {
        &self.disc
    }
    pub fn j_invariant(&self) -> &F {
        &self.j
    }

    pub fn is_short(&self) -> bool {
        self.a[0].is_zero() && self.a[1].is_zero() && self.a[2].is_zero()
    }

    fn k(&self, n: i64) -> F {
        self.a[0].from_int_like(n)
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let [a1, a2, a3, a4, a6] = &self.a;
                let lhs = y.square() + a1.mul_ref(x).mul_ref(y) + a3.mul_ref(y);
                let rhs = x.square().mul_ref(x) + a2.mul_ref(&x.square()) + a4.mul_ref(x) + a6.clone();
                lhs == rhs
            }
        }
    }

    /// Checked affine point constructor.
    pub fn point(&self, x: F, y: F) -> Result<Point<F>> {
        let p = Point::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::InvalidInput("point is not on the curve".into()))
        }
    }

    pub fn neg(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let ny = -(y.clone()) - self.a[0].mul_ref(x) - self.a[2].clone();
                Point::Affine(x.clone(), ny)
            }
        }
    }

    /// Chord–tangent addition on the long model.
    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, a6] = &self.a;
        let (lambda, nu);
        if x1 == x2 {
            // Either P = -Q or a doubling.
            let sum_y = y1.clone() + y2.clone() + a1.mul_ref(x2) + a3.clone();
            if sum_y.is_zero() {
                return Point::Infinity;
            }
            let num = self.k(3).mul_ref(&x1.square()) + self.k(2).mul_ref(a2).mul_ref(x1) + a4.clone()
                - a1.mul_ref(y1);
            let den = self.k(2).mul_ref(y1) + a1.mul_ref(x1) + a3.clone();
            lambda = num.div_ref(&den).expect("nonzero tangent denominator");
            let num_nu = -(x1.square().mul_ref(x1)) + a4.mul_ref(x1) + self.k(2).mul_ref(a6) - a3.mul_ref(y1);
            nu = num_nu.div_ref(&den).expect("nonzero tangent denominator");
        } else {
            let dx = x2.clone() - x1.clone();
            lambda = (y2.clone() - y1.clone()).div_ref(&dx).expect("distinct x");
            nu = (y1.mul_ref(x2) - y2.mul_ref(x1)).div_ref(&dx).expect("distinct x");
        }
        let x3 = lambda.square() + a1.mul_ref(&lambda) - a2.clone() - x1.clone() - x2.clone();
        let y3 = -((lambda.clone() + a1.clone()).mul_ref(&x3)) - nu - a3.clone();
        Point::Affine(x3, y3)
    }

    pub fn double(&self, p: &Point<F>) -> Point<F> {
        self.add(p, p)
    }

    pub fn sub(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        self.add(p, &self.neg(q))
    }

    /// n·P by double-and-add; negative n uses the negation formula.
    pub fn scalar_mul(&self, n: i64, p: &Point<F>) -> Point<F> {
        self.scalar_mul_big(&BigInt::from(n), p)
    }

    pub fn scalar_mul_big(&self, n: &BigInt, p: &Point<F>) -> Point<F> {
        let base = if n.is_negative() { self.neg(p) } else { p.clone() };
        let e = n.abs();
        let mut acc = Point::Infinity;
        for i in (0..e.bits()).rev() {
            acc = self.double(&acc);
            if e.bit(i) {
                acc = self.add(&acc, &base);
            }
        }
        acc
    }

    /// Exact order if it is at most `bound`, `None` otherwise.
    pub fn point_order(&self, p: &Point<F>, bound: u64) -> Option<u64> {
        let mut q = p.clone();
        for k in 1..=bound {
            if q.is_infinity() {
                return Some(k);
            }
            q = self.add(&q, p);
        }
        None
    }

    /// True iff P has exact order n: nP = O and (n/q)P ≠ O for primes q | n.
    pub fn has_order(&self, p: &Point<F>, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        if !self.scalar_mul_big(&BigInt::from(n), p).is_infinity() {
            return false;
        }
        prime_factors(n)
            .into_iter()
            .all(|q| !self.scalar_mul_big(&BigInt::from(n / q), p).is_infinity())
    }

    /// Coefficients (A, B) of the short model y² = x³ + Ax + B returned by
    /// [`Self::short_model`].
    pub fn short_coefficients(&self) -> (F, F) {
        if self.is_short() {
            (self.a[3].clone(), self.a[4].clone())
        } else {
            (-(self.k(27).mul_ref(&self.c4)), -(self.k(54).mul_ref(&self.c6)))
        }
    }

    /// Short model together with the change of variables from this model to
    /// it. Already-short models are returned unchanged with the identity
    /// change; otherwise the model is y² = x³ − 27c₄x − 54c₆.
    /// Requires characteristic other than 2 and 3.
    pub fn short_model(&self) -> (EllipticCurve<F>, CoordinateChange<F>) {
        let ch = self.a[0].characteristic();
        assert!(ch != 2 && ch != 3, "short models need characteristic other than 2, 3");
        if self.is_short() {
            return (self.clone(), CoordinateChange::identity(&self.a[0]));
        }
        let (a, b) = self.short_coefficients();
        let short = EllipticCurve::short(a, b).expect("isomorphic model is nonsingular");
        let u = self.k(1).div_ref(&self.k(6)).unwrap();
        let r = -(self.b2.div_ref(&self.k(12)).unwrap());
        let s = -(self.a[0].div_ref(&self.k(2)).unwrap());
        let t = -(self.a[0].mul_ref(&r).div_ref(&self.k(2)).unwrap()) - self.a[2].div_ref(&self.k(2)).unwrap();
        (short, CoordinateChange { u, r, s, t })
    }

    /// The quadratic twist by d, on the short model: y² = x³ + A·d²x + B·d³.
    pub fn quadratic_twist(&self, d: &F) -> Result<EllipticCurve<F>> {
        if d.is_zero() {
            return Err(Error::InvalidInput("twist parameter must be nonzero".into()));
        }
        let (a, b) = self.short_coefficients();
        EllipticCurve::short(a.mul_ref(&d.square()), b.mul_ref(&d.square()).mul_ref(d))
    }

    /// Apply a field map to the coefficients.
    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<Result<EllipticCurve<G>>> {
        let a: Option<Vec<G>> = self.a.iter().map(&f).collect();
        let a: [G; 5] = a?.try_into().ok()?;
        Some(EllipticCurve::new(a))
    }

    /// Right-hand side x³ + Ax + B of the short model as a polynomial
    /// evaluation: f(x).
    pub fn short_rhs(&self, x: &F) -> F {
        let (a, b) = self.short_coefficients();
        x.square().mul_ref(x) + a.mul_ref(x) + b
    }
}

impl EllipticCurve<Rational> {
    /// Curve from rational a-invariants.
    pub fn from_rationals(a: &[Rational]) -> Result<Self> {
        let arr: [Rational; 5] = match a.len() {
            5 => a.to_vec().try_into().unwrap(),
            2 => [Rational::zero(), Rational::zero(), Rational::zero(), a[0].clone(), a[1].clone()],
            n => return Err(Error::InvalidInput(format!("expected 2 or 5 coefficients, got {n}"))),
        };
        EllipticCurve::new(arr)
    }

    pub fn from_ints(a: &[i64]) -> Result<Self> {
        let q: Vec<Rational> = a.iter().map(|&v| Rational::from_integer(v.into())).collect();
        EllipticCurve::from_rationals(&q)
    }

    /// Reduction modulo an odd prime p.
    pub fn reduce_mod(&self, p: u64) -> Result<EllipticCurve<Fp>> {
        let mut a = Vec::with_capacity(5);
        for c in &self.a {
            a.push(Fp::new(reduce_rational(c, p).ok_or(Error::NotIntegral { p })?, p));
        }
        let a: [Fp; 5] = a.try_into().unwrap();
        EllipticCurve::new(a).map_err(|_| Error::BadReduction { p })
    }

    /// Whether p divides a denominator of some aᵢ or the discriminant.
    pub fn has_good_reduction_at(&self, p: u64) -> bool {
        self.reduce_mod(p).is_ok()
    }

    /// Literal form `[a1,a2,a3,a4,a6]`.
    pub fn literal(&self) -> String {
        let parts: Vec<String> = self.a.iter().map(rational_text).collect();
        format!("[{}]", parts.join(","))
    }

    /// Whether all a-invariants are integers.
    pub fn is_integral(&self) -> bool {
        self.a.iter().all(|c| c.is_integer())
    }
}

impl EllipticCurve<Fp> {
    /// #E(𝔽ₚ) including the point at infinity, by summing Legendre symbols
    /// of (2y + a₁x + a₃)² = 4x³ + b₂x² + 2b₄x + b₆.
    pub fn count_points(&self) -> Result<u64> {
        let p = self.a[0].modulus();
        if p >= COUNT_POINTS_LIMIT {
            return Err(Error::PrimeTooLarge { p });
        }
        let (b2, b4, b6) = (self.b2.value(), self.b4.value(), self.b6.value());
        let mut total: i64 = 1;
        for x in 0..p {
            // 4x³ + b₂x² + 2b₄x + b₆ evaluated with plain u128 arithmetic.
            let xx = x as u128;
            let pp = p as u128;
            let v = (4 * xx * xx % pp * xx + b2 as u128 * xx % pp * xx + 2 * b4 as u128 * xx + b6 as u128) % pp;
            total += 1 + legendre(v as u64, p) as i64;
        }
        Ok(total as u64)
    }

    /// All points of E(𝔽ₚ), affine points sorted by (x, y), infinity first.
    pub fn points(&self) -> Vec<Point<Fp>> {
        let p = self.a[0].modulus();
        let mut out = vec![Point::Infinity];
        for x in 0..p {
            let xf = Fp::new(x, p);
            // Solve y² + (a₁x + a₃)y − rhs = 0 by completing the square.
            let [a1, a2, a3, a4, a6] = &self.a;
            let lin = *a1 * xf + *a3;
            let rhs = xf * xf * xf + *a2 * xf * xf + *a4 * xf + *a6;
            let four = Fp::new(4, p);
            let dsc = lin * lin + four * rhs;
            if let Some(r) = dsc.sqrt() {
                let inv2 = Fp::new(2, p).inv().unwrap();
                let y1 = (-lin + r) * inv2;
                let y2 = (-lin - r) * inv2;
                let mut ys = vec![y1.value(), y2.value()];
                ys.sort_unstable();
                ys.dedup();
                for y in ys {
                    out.push(Point::Affine(xf, Fp::new(y, p)));
                }
            }
        }
        out
    }
}

impl<F: fmt::Display> fmt::Display for EllipticCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{},{}]", self.a[0], self.a[1], self.a[2], self.a[3], self.a[4])
    }
}

/// Parse a curve literal `[a1,a2,a3,a4,a6]` or the short form `[A,B]`.
pub fn parse_curve_literal(s: &str) -> Result<EllipticCurve<Rational>> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse { pos: lead, msg: "curve literal must look like [a1,a2,a3,a4,a6] or [A,B]".into() })?;
    let vals = parse_rational_list(inner).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + lead + 1, msg },
        other => other,
    })?;
    EllipticCurve::from_rationals(&vals)
}

/// Distinct prime factors of n (trial division).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant-factor presentation ℤ/mℤ ⊕ ℤ/nℤ with m | n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorsionGroup {
    pub m: u64,
    pub n: u64,
}

/// The fifteen torsion groups over ℚ.
pub const MAZUR_LIST: [(u64, u64); 15] = [
    (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8), (1, 9), (1, 10), (1, 12),
    (2, 2), (2, 4), (2, 6), (2, 8),
];

/// Torsion groups of rational elliptic curves over cubic fields.
pub const CUBIC_GROWTH_LIST: [(u64, u64); 20] = [
    (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8), (1, 9), (1, 10), (1, 12),
    (1, 13), (1, 14), (1, 18), (1, 21),
    (2, 2), (2, 4), (2, 6), (2, 8), (2, 14),
];

impl TorsionGroup {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 || !n.is_multiple_of(m) {
            return Err(Error::InvalidInput(format!("invalid invariant factors ({m}, {n})")));
        }
        if m > 4 {
            return Err(Error::Internal(format!("invariant factor m = {m} exceeds 4")));
        }
        Ok(TorsionGroup { m, n })
    }

    pub fn trivial() -> Self {
        TorsionGroup { m: 1, n: 1 }
    }

    pub fn cyclic(n: u64) -> Self {
        TorsionGroup { m: 1, n }
    }

    pub fn order(&self) -> u64 {
        self.m * self.n
    }

    pub fn exponent(&self) -> u64 {
        self.n
    }

    pub fn in_mazur_list(&self) -> bool {
        MAZUR_LIST.contains(&(self.m, self.n))
    }

    pub fn in_cubic_list(&self) -> bool {
        CUBIC_GROWTH_LIST.contains(&(self.m, self.n))
    }

    /// Number of elements of order dividing k.
    pub fn count_killed_by(&self, k: u64) -> u64 {
        self.m.gcd(&k) * self.n.gcd(&k)
    }

    /// The ℓ-primary part, as (ℓ^a, ℓ^b).
    pub fn sylow(&self, l: u64) -> TorsionGroup {
        let part = |mut v: u64| {
            let mut acc = 1;
            while v.is_multiple_of(l) {
                v /= l;
                acc *= l;
            }
            acc
        };
        TorsionGroup { m: part(self.m), n: part(self.n) }
    }
}

impl fmt::Display for TorsionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "Z/{}Z", self.n)
        } else {
            write!(f, "Z/{}Z x Z/{}Z", self.m, self.n)
        }
    }
}

impl std::str::FromStr for TorsionGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parse_one = |t: &str| -> Option<u64> {
            t.trim().strip_prefix("Z/")?.strip_suffix('Z')?.parse().ok()
        };
        let bad = || Error::Parse { pos: 0, msg: format!("not a torsion group: {s:?}") };
        let parts: Vec<&str> = s.split(['x', '⊕']).collect();
        match parts.as_slice() {
            [one] => Ok(TorsionGroup::cyclic(parse_one(one).ok_or_else(bad)?)),
            [a, b] => TorsionGroup::new(parse_one(a).ok_or_else(bad)?, parse_one(b).ok_or_else(bad)?),
            _ => Err(bad()),
        }
    }
}

/// The prime-to-p part of n.
pub fn prime_to_p_part(mut n: u64, p: u64) -> u64 {
    while n.is_multiple_of(p) && n > 0 {
        n /= p;
    }
    n
}

/// Convenience for tests and callers: a rational as u64 if it is a small
/// nonnegative integer.
pub fn rational_to_u64(q: &Rational) -> Option<u64> {
    if q.is_integer() {
        q.numer().to_u64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn q(n: i64) -> Rational {
        int(n)
    }

    #[test]
    fn invariants_of_x3_plus_1() {
        let e = EllipticCurve::from_ints(&[0, 0, 0, 0, 1]).unwrap();
        assert_eq!(*e.discriminant(), q(-432));
        assert_eq!(*e.j_invariant(), q(0));
        let c4 = e.c4().clone();
        let c6 = e.c6().clone();
        assert_eq!(q(1728) * e.discriminant(), &c4 * &c4 * &c4 - &c6 * &c6);
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(EllipticCurve::from_ints(&[0, 0, 0, 0, 0]), Err(Error::Singular));
    }

    #[test]
    fn group_law_examples() {
        let e = EllipticCurve::from_ints(&[0, 1]).unwrap();
        let p = e.point(q(2), q(3)).unwrap();
        assert_eq!(e.add(&p, &p), Point::Affine(q(0), q(1)));
        assert_eq!(e.add(&p, &Point::Infinity), p);
        let t = e.point(q(-1), q(0)).unwrap();
        assert!(e.add(&t, &t).is_infinity());
        assert!(e.scalar_mul(6, &p).is_infinity());
        assert!(e.scalar_mul(0, &p).is_infinity());
        assert_eq!(e.scalar_mul(-1, &p), Point::Affine(q(2), q(-3)));
        assert!(e.has_order(&p, 6));
        assert!(!e.has_order(&p, 3));
        assert!(e.has_order(&Point::Infinity, 1));
    }

    #[test]
    fn tate5_instance() {
        let e = EllipticCurve::from_ints(&[0, -1, -1, 0, 0]).unwrap();
        let p = e.point(q(0), q(0)).unwrap();
        assert!(e.scalar_mul(5, &p).is_infinity());
        assert_eq!(e.point_order(&p, 30), Some(5));
        assert_eq!(e.point_order(&Point::Infinity, 30), Some(1));
    }

    #[test]
    fn twists_and_short_models() {
        let e = EllipticCurve::from_ints(&[0, 1]).unwrap();
        assert_eq!(e.quadratic_twist(&q(1)).unwrap(), e);
        assert_eq!(e.quadratic_twist(&q(-3)).unwrap(), EllipticCurve::from_ints(&[0, -27]).unwrap());
        let (s, ch) = e.short_model();
        assert_eq!(s, e);
        assert!(ch.is_identity());
        let e = EllipticCurve::from_ints(&[1, 1, 1, -8, 6]).unwrap();
        let (s, ch) = e.short_model();
        assert_eq!(s, EllipticCurve::from_ints(&[0, 0, 0, -10395, 444150]).unwrap());
        assert_eq!(s.j_invariant(), e.j_invariant());
        let t5 = EllipticCurve::from_ints(&[0, -1, -1, 0, 0]).unwrap();
        let (s5, ch5) = t5.short_model();
        let p = Point::Affine(q(0), q(0));
        let img = ch5.forward(&p);
        assert!(s5.contains(&img));
        assert_eq!(ch5.backward(&img), p);
        let _ = ch;
        assert_eq!(e.quadratic_twist(&rat(1, 2)).unwrap().j_invariant(), e.j_invariant());
    }

    #[test]
    fn reduction_and_counting() {
        let e = EllipticCurve::from_ints(&[0, 1]).unwrap();
        let e5 = e.reduce_mod(5).unwrap();
        assert_eq!(e5.count_points().unwrap(), 6);
        assert_eq!(e5.points().len(), 6);
        assert_eq!(e.reduce_mod(3), Err(Error::BadReduction { p: 3 }));
        let e3 = EllipticCurve::new([Fp::new(0, 3), Fp::new(0, 3), Fp::new(0, 3), Fp::new(1, 3), Fp::new(0, 3)]).unwrap();
        assert_eq!(e3.count_points().unwrap(), 4);
        let b1 = EllipticCurve::from_ints(&[1, -1, 1, -5, 5]).unwrap();
        assert!(b1.reduce_mod(5).is_ok());
    }

    #[test]
    fn torsion_group_text() {
        let g: TorsionGroup = "Z/2Z x Z/8Z".parse().unwrap();
        assert_eq!(g, TorsionGroup { m: 2, n: 8 });
        assert_eq!(g.to_string(), "Z/2Z x Z/8Z");
        assert_eq!("Z/21Z".parse::<TorsionGroup>().unwrap(), TorsionGroup::cyclic(21));
        assert!(TorsionGroup::new(5, 5).is_err());
    }

    #[test]
    fn curve_literals() {
        let e = parse_curve_literal("[0,1]").unwrap();
        assert_eq!(e.literal(), "[0,0,0,0,1]");
        let e = parse_curve_literal(" [1,-1,1,-5,5] ").unwrap();
        assert_eq!(e.literal(), "[1,-1,1,-5,5]");
        assert!(matches!(parse_curve_literal("[1,2,x]"), Err(Error::Parse { .. })));
        assert_eq!(parse_curve_literal("[0,0,0,0,0]"), Err(Error::Singular));
    }
}
