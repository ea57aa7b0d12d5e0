//! Prime fields 𝔽ₚ (p an odd prime below 2⁶³) and polynomial factorization
//! over them: squarefree decomposition, distinct-degree and equal-degree
//! (Cantor–Zassenhaus) splitting.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use super::rational::{IntPoly, Rational, RationalPolynomial};
use super::ring::{Field, Ring};

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    if s >= p as u128 {
        (s - p as u128) as u64
    } else {
        s as u64
    }
}

#[inline]
pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
pub fn invmod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// Odd primes in increasing order starting at `start`.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    let first = if start <= 3 { 3 } else { start };
    (first..).filter(|&n| is_prime_u64(n))
}

/// Legendre symbol (a/p) as -1, 0 or 1.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if powmod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Square root modulo an odd prime by Tonelli–Shanks; the smaller root.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while legendre(z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = powmod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r.min(p - r))
}

/// Reduce a big integer into [0, p).
pub fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Reduce a rational modulo p; `None` when p divides the denominator.
pub fn reduce_rational(q: &Rational, p: u64) -> Option<u64> {
    let d = reduce_bigint(q.denom(), p);
    let inv = invmod(d, p)?;
    Some(mulmod(reduce_bigint(q.numer(), p), inv, p))
}

// ---------------------------------------------------------------------------
// Field elements
// ---------------------------------------------------------------------------

/// An element of 𝔽ₚ carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn from_i64(v: i64, p: u64) -> Self {
        Fp { v: (v as i128).rem_euclid(p as i128) as u64, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Square root in 𝔽ₚ, if one exists.
    pub fn sqrt(&self) -> Option<Fp> {
        sqrt_mod(self.v, self.p).map(|r| Fp { v: r, p: self.p })
    }

    pub fn is_square(&self) -> bool {
        legendre(self.v, self.p) >= 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

macro_rules! fp_binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr for Fp {
            type Output = Fp;
            fn $m(self, rhs: Fp) -> Fp {
                debug_assert_eq!(self.p, rhs.p);
                Fp { v: $f(self.v, rhs.v, self.p), p: self.p }
            }
        }
        impl<'a> $tr<&'a Fp> for Fp {
            type Output = Fp;
            fn $m(self, rhs: &'a Fp) -> Fp {
                debug_assert_eq!(self.p, rhs.p);
                Fp { v: $f(self.v, rhs.v, self.p), p: self.p }
            }
        }
    };
}

fp_binop!(Add, add, addmod);
fp_binop!(Sub, sub, submod);
fp_binop!(Mul, mul, mulmod);

impl<'a> AddAssign<&'a Fp> for Fp {
    fn add_assign(&mut self, rhs: &'a Fp) {
        self.v = addmod(self.v, rhs.v, self.p);
    }
}

impl<'a> SubAssign<&'a Fp> for Fp {
    fn sub_assign(&mut self, rhs: &'a Fp) {
        self.v = submod(self.v, rhs.v, self.p);
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { v: submod(0, self.v, self.p), p: self.p }
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn from_int_like(&self, n: i64) -> Self {
        Fp::from_i64(n, self.p)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        invmod(self.v, self.p).map(|v| Fp { v, p: self.p })
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Fp { v: reduce_bigint(n, self.p), p: self.p }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

// ---------------------------------------------------------------------------
// Polynomials over 𝔽ₚ
// ---------------------------------------------------------------------------

/// Dense polynomial over 𝔽ₚ with raw residues, ascending degree, no trailing
/// zeros. This is the workhorse representation for factorization.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(mut c: Vec<u64>, p: u64) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1] }
    }

    /// The polynomial `x`.
    pub fn x(p: u64) -> Self {
        FpPoly { p, c: vec![0, 1] }
    }

    pub fn from_i64s(c: &[i64], p: u64) -> Self {
        FpPoly::new(c.iter().map(|&v| Fp::from_i64(v, p).v).collect(), p)
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        FpPoly::new(f.coeffs().iter().map(|c| reduce_bigint(c, p)).collect(), p)
    }

    /// Reduce a rational polynomial; `None` if p divides a denominator.
    pub fn from_rational_poly(f: &RationalPolynomial, p: u64) -> Option<Self> {
        let c: Option<Vec<u64>> = f.coeffs().iter().map(|q| reduce_rational(q, p)).collect();
        c.map(|c| FpPoly::new(c, p))
    }

    pub fn to_poly(&self) -> Poly<Fp> {
        Poly::new(self.c.iter().map(|&v| Fp { v, p: self.p }).collect())
    }

    pub fn from_poly(f: &Poly<Fp>, p: u64) -> Self {
        FpPoly::new(f.coeffs().iter().map(|c| c.v).collect(), p)
    }

    /// Lift to integers with coefficients in [0, p).
    pub fn to_int_poly(&self) -> IntPoly {
        Poly::new(self.c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.c.iter().rev().fold(0, |acc, &c| addmod(mulmod(acc, x, p), c, p))
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| addmod(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0), p))
            .collect();
        FpPoly::new(c, p)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| submod(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0), p))
            .collect();
        FpPoly::new(c, p)
    }

    pub fn scale(&self, s: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(self.c.iter().map(|&c| mulmod(c, s, p)).collect(), p)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        // Accumulate in u128 and reduce lazily; each product is < p² < 2¹²⁶,
        // so at most 3 products fit before a reduction is forced.
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        let pp = p as u128;
        if p < (1 << 32) {
            // Products below 2⁶⁴: thousands can be summed safely.
            let limit = (u128::MAX / (pp * pp)).min(1 << 20) as usize;
            for (i, &a) in self.c.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in o.c.iter().enumerate() {
                    acc[i + j] += a as u128 * b as u128;
                }
                if (i + 1) % limit == 0 {
                    for v in acc.iter_mut() {
                        *v %= pp;
                    }
                }
            }
        } else {
            for (i, &a) in self.c.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in o.c.iter().enumerate() {
                    acc[i + j] = (acc[i + j] + a as u128 * b as u128) % pp;
                }
            }
        }
        FpPoly::new(acc.into_iter().map(|v| (v % pp) as u64).collect(), p)
    }

    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = invmod(d.lc(), p).expect("nonzero leading coefficient");
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mulmod(r[i + dd], inv, p);
            q[i] = c;
            if c != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    r[i + j] = submod(r[i + j], mulmod(c, dc, p), p);
                }
            }
        }
        r.truncate(dd);
        (FpPoly::new(q, p), FpPoly::new(r, p))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.lc(), self.p).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let c = self.c.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect();
        FpPoly::new(c, p)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·o = g monic.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = invmod(r0.lc(), p).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Distinct roots in [0, p), sorted.
    pub fn roots(&self) -> Vec<u64> {
        if self.is_zero() {
            return Vec::new();
        }
        let f = self.monic();
        if f.deg() == 0 {
            return Vec::new();
        }
        let p = self.p;
        // Split off the linear part: gcd(f, x^p - x).
        let xp = FpPoly::x(p).powmod(p, &f);
        let g = f.gcd(&xp.sub(&FpPoly::x(p)));
        if g.deg() == 0 {
            return Vec::new();
        }
        let mut rng = rng_for(&g);
        let mut out: Vec<u64> = equal_degree_split(&g, 1, None, &mut rng)
            .into_iter()
            .map(|l| submod(0, l.c[0], p))
            .collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q: RationalPolynomial = Poly::new(
            self.c.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect(),
        );
        write!(f, "{q}")
    }
}

/// Deterministic generator seeded by an FNV-1a hash of the polynomial.
fn rng_for(f: &FpPoly) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut feed = |v: u64| {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    feed(f.p);
    for &c in &f.c {
        feed(c);
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// Matrix of the Frobenius map h ↦ h^p on 𝔽ₚ[x]/(m): row i is x^{ip} mod m.
pub struct Frobenius {
    rows: Vec<FpPoly>,
    modulus: FpPoly,
}

impl Frobenius {
    pub fn new(m: &FpPoly) -> Self {
        let p = m.p;
        let n = m.deg();
        let xp = FpPoly::x(p).powmod(p, m);
        let mut rows = Vec::with_capacity(n);
        let mut cur = FpPoly::one(p).rem(m);
        for _ in 0..n {
            rows.push(cur.clone());
            cur = cur.mul(&xp).rem(m);
        }
        Frobenius { rows, modulus: m.clone() }
    }

    /// Restrict to a divisor of the modulus.
    pub fn restrict(&self, d: &FpPoly) -> Self {
        let rows = self.rows.iter().take(d.deg()).map(|r| r.rem(d)).collect();
        Frobenius { rows, modulus: d.clone() }
    }

    /// `h^p mod m` for h already reduced modulo m.
    pub fn apply(&self, h: &FpPoly) -> FpPoly {
        let p = self.modulus.p;
        let n = self.modulus.deg();
        let mut acc = vec![0u128; n];
        let pp = p as u128;
        for (i, &hc) in h.c.iter().enumerate() {
            if hc == 0 {
                continue;
            }
            for (j, &rc) in self.rows[i].c.iter().enumerate() {
                acc[j] = (acc[j] + hc as u128 * rc as u128) % pp;
            }
        }
        FpPoly::new(acc.into_iter().map(|v| v as u64).collect(), p)
    }
}

/// Squarefree decomposition of a monic polynomial over 𝔽ₚ:
/// pairs (g, i) with f = ∏ gᵢ^i, gᵢ squarefree, pairwise coprime.
pub fn squarefree_decomposition_mod_p(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let fd = f.derivative();
    if fd.is_zero() {
        // f = g(x^p) = g(x)^p since coefficients are fixed by Frobenius.
        let g = pth_root(f);
        for (h, m) in squarefree_decomposition_mod_p(&g) {
            out.push((h, m * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&fd);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.deg() > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.deg() > 0 {
        let g = pth_root(&c.monic());
        for (h, m) in squarefree_decomposition_mod_p(&g) {
            out.push((h, m * p as usize));
        }
    }
    out
}

fn pth_root(f: &FpPoly) -> FpPoly {
    let p = f.p as usize;
    FpPoly::new(f.c.iter().step_by(p).copied().collect(), f.p)
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// (g_d, d) where g_d is the product of all irreducible factors of degree d.
pub fn distinct_degree_factorization(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let frob = Frobenius::new(f);
    let x = FpPoly::x(p).rem(f);
    let mut h = x.clone();
    let mut rest = f.clone();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = frob.apply(&h);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            rest = rest.div_rem(&g).0;
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let dr = rest.deg();
        out.push((rest.monic(), dr));
    }
    out
}

/// Degrees of the irreducible factors of a squarefree polynomial (sorted).
pub fn factor_degrees_squarefree(f: &FpPoly) -> Vec<usize> {
    let mut degs = Vec::new();
    for (g, d) in distinct_degree_factorization(&f.monic()) {
        degs.extend(std::iter::repeat_n(d, g.deg() / d));
    }
    degs.sort_unstable();
    degs
}

/// Split a monic squarefree product of degree-d irreducibles.
fn equal_degree_split(
    g: &FpPoly,
    d: usize,
    frob: Option<&Frobenius>,
    rng: &mut ChaCha8Rng,
) -> Vec<FpPoly> {
    let p = g.p;
    let n = g.deg();
    if n == d {
        return vec![g.clone()];
    }
    if n == 0 {
        return Vec::new();
    }
    let own;
    let frob = match frob {
        Some(f) if d > 1 => Some(f.restrict(g)),
        None if d > 1 => {
            own = Frobenius::new(g);
            Some(own)
        }
        _ => None,
    };
    loop {
        let a = FpPoly::new((0..n).map(|_| rng.gen_range(0..p)).collect(), p);
        if a.deg() == 0 {
            continue;
        }
        // b = a^((p^d - 1)/2) = (a^(1+p+...+p^(d-1)))^((p-1)/2)
        let norm = match &frob {
            Some(fr) => {
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = fr.apply(&t);
                    acc = acc.mul(&t).rem(g);
                }
                acc
            }
            None => a.clone(),
        };
        let b = norm.powmod((p - 1) / 2, g);
        let s = g.gcd(&b.sub(&FpPoly::one(p)));
        if s.deg() > 0 && s.deg() < n {
            let other = g.div_rem(&s).0.monic();
            let mut out = equal_degree_split(&s, d, frob.as_ref(), rng);
            out.extend(equal_degree_split(&other, d, frob.as_ref(), rng));
            return out;
        }
    }
}

fn sort_key(f: &FpPoly) -> (usize, Vec<u64>) {
    (f.deg(), f.c.iter().rev().copied().collect())
}

/// Complete factorization over 𝔽ₚ: the leading coefficient and monic
/// irreducible factors with multiplicities, sorted by degree then
/// coefficients.
pub fn factor_mod_p(f: &FpPoly) -> (u64, Vec<(FpPoly, usize)>) {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let unit = f.lc();
    let mut rng = rng_for(f);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition_mod_p(&f.monic()) {
        for (h, d) in distinct_degree_factorization(&g) {
            for irr in equal_degree_split(&h, d, None, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by_key(|(g, _)| sort_key(g));
    (unit, out)
}

/// Monic irreducible factors of a monic squarefree polynomial.
pub fn factor_squarefree_mod_p(f: &FpPoly) -> Vec<FpPoly> {
    let mut rng = rng_for(f);
    let frob = Frobenius::new(f);
    let mut out = Vec::new();
    for (h, d) in distinct_degree_factorization(f) {
        out.extend(equal_degree_split(&h, d, Some(&frob), &mut rng));
    }
    out.sort_by_key(sort_key);
    out
}

/// Symmetric representative of a residue modulo `m`.
pub fn symmetric(v: &BigInt, m: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Whether |v| fits below a bit bound (used by lifting code).
pub fn bits_of(v: &BigInt) -> u64 {
    if Zero::is_zero(v) {
        0
    } else {
        v.abs().bits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(97));
        assert!(!is_prime_u64(91));
        assert!(is_prime_u64((1 << 61) - 1));
        assert_eq!(next_prime(100), 101);
    }

    #[test]
    fn square_roots() {
        for p in [7u64, 13, 17, 97, 101, 1_000_000_007] {
            for a in 0..50u64 {
                if let Some(r) = sqrt_mod(a, p) {
                    assert_eq!(mulmod(r, r, p), a % p);
                } else {
                    assert_eq!(legendre(a, p), -1);
                }
            }
        }
    }

    #[test]
    fn x2_plus_1_mod_5_and_7() {
        let (_, f5) = factor_mod_p(&FpPoly::from_i64s(&[1, 0, 1], 5));
        let got: Vec<Vec<u64>> = f5.iter().map(|(g, _)| g.coeffs().to_vec()).collect();
        assert_eq!(got, vec![vec![2, 1], vec![3, 1]]);
        let (_, f7) = factor_mod_p(&FpPoly::from_i64s(&[1, 0, 1], 7));
        assert_eq!(f7.len(), 1);
        assert_eq!(f7[0].0.deg(), 2);
    }

    #[test]
    fn cubic_mod_17_splits_completely() {
        let f = FpPoly::from_i64s(&[1, -3, 0, 1], 17);
        let (_, fac) = factor_mod_p(&f);
        assert_eq!(fac.len(), 3);
        let brute: Vec<u64> = (0..17).filter(|&x| f.eval(x) == 0).collect();
        assert_eq!(f.roots(), brute);
    }

    #[test]
    fn multiplicities_and_pth_powers() {
        let p = 3;
        // (x+1)^3 (x^2+1)^2 over F_3
        let a = FpPoly::from_i64s(&[1, 1], p);
        let b = FpPoly::from_i64s(&[1, 0, 1], p);
        let f = a.mul(&a).mul(&a).mul(&b).mul(&b).scale(2);
        let (u, fac) = factor_mod_p(&f);
        assert_eq!(u, 2);
        assert_eq!(fac, vec![(a, 3), (b, 2)]);
    }

    #[test]
    fn roots_large_prime() {
        let p = 1_000_000_007;
        let f = FpPoly::from_i64s(&[-6, 11, -6, 1], p);
        assert_eq!(f.roots(), vec![1, 2, 3]);
    }
}
