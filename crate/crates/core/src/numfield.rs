//! Number fields K = ℚ[t]/(g) for monic irreducible integer g of degree at
//! most six, with exact element arithmetic, norms, minimal polynomials,
//! square testing, root finding and residue maps at degree-one primes.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::factor::{factor_over_q, poly_gcd, to_primitive_int};
use crate::arith::fp::{self, primes_from, reduce_bigint, reduce_rational, FpPoly};
use crate::arith::lattice::{determinant, lattice_reduce_small};
use crate::arith::parse::parse_poly_named;
use crate::arith::poly::Poly;
use crate::arith::rational::{from_big, int, rational_sqrt, IntPoly, Rational, RationalPolynomial};
use crate::arith::ring::{CoeffText, Field, Ring};
use crate::error::{Error, Result};

/// Largest supported field degree.
pub const MAX_DEGREE: usize = 6;

/// Default cap on the p-adic precision used for coordinate reconstruction.
pub const DEFAULT_PRECISION_CAP_BITS: u64 = 1 << 16;

/// Precision at which reconstruction starts; doubled until success or cap.
const INITIAL_PRECISION_BITS: u64 = 64;

/// Number of degree-one primes consulted by the quadratic-residue filter in
/// [`is_square`].
const RESIDUE_TESTS: usize = 24;

/// A number field presented by a monic irreducible integer polynomial.
pub struct NumberField {
    g: RationalPolynomial,
    gi: IntPoly,
    var: String,
    disc: BigInt,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.g.to_text(&self.var))
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Validate `g` (monic, integral, irreducible, degree 1..=6) and build
    /// the field, printing elements in the variable `t`.
    pub fn new(g: &RationalPolynomial) -> Result<Arc<NumberField>> {
        Self::with_var(g, "t")
    }

    pub fn with_var(g: &RationalPolynomial, var: &str) -> Result<Arc<NumberField>> {
        let d = match g.degree() {
            Some(d) if (1..=MAX_DEGREE).contains(&d) => d,
            Some(d) => return Err(Error::InvalidField(format!("degree {d} outside 1..={MAX_DEGREE}"))),
            None => return Err(Error::InvalidField("zero polynomial".into())),
        };
        if !g.is_monic() {
            return Err(Error::InvalidField("defining polynomial must be monic".into()));
        }
        if g.coeffs().iter().any(|c| !c.is_integer()) {
            return Err(Error::InvalidField("defining polynomial must have integer coefficients".into()));
        }
        let fac = factor_over_q(g);
        if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
            return Err(Error::InvalidField(format!("{} is reducible over Q", g.to_text("x"))));
        }
        let gi = Poly::new(g.coeffs().iter().map(|c| c.numer().clone()).collect());
        let mut k = NumberField { g: g.clone(), gi, var: var.to_string(), disc: BigInt::one() };
        if d > 1 {
            // disc(g) = (−1)^{d(d−1)/2} · N(g′(t)) for monic g.
            let gprime = k.reduce_rat(k.g.derivative().coeffs().to_vec());
            let n = k.norm_of(&gprime);
            let sign = if (d * (d - 1) / 2) % 2 == 0 { 1 } else { -1 };
            k.disc = n.to_integer() * sign;
        }
        Ok(Arc::new(k))
    }

    /// Parse a field literal such as `x^3-3*x^2+3`. Elements print in the
    /// literal's variable unless it is `x`, which is reserved for curve
    /// coordinates; then `t` is used.
    pub fn parse(s: &str) -> Result<Arc<NumberField>> {
        let (g, var) = parse_poly_named(s)?;
        let var = match var.as_deref() {
            None | Some("x") => "t".to_string(),
            Some(v) => v.to_string(),
        };
        Self::with_var(&g, &var)
    }

    /// The field ℚ presented as ℚ[t]/(t).
    pub fn rationals() -> Arc<NumberField> {
        Self::new(&Poly::new(vec![Rational::zero(), Rational::one()])).expect("t is irreducible")
    }

    pub fn degree(&self) -> usize {
        self.g.deg()
    }

    pub fn defining_polynomial(&self) -> &RationalPolynomial {
        &self.g
    }

    pub fn integer_defining_polynomial(&self) -> &IntPoly {
        &self.gi
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Text of the defining polynomial in `x`.
    pub fn literal(&self) -> String {
        self.g.to_text("x")
    }

    /// Reduce rational coordinates of any length modulo g.
    fn reduce_rat(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        let g = self.g.coeffs();
        for i in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[i]);
            if !Zero::is_zero(&c) {
                for j in 0..d {
                    v[i - d + j] -= &c * &g[j];
                }
            }
        }
        v.truncate(d);
        v.resize(d, Rational::zero());
        v
    }

    /// Rows are the coordinates of v·t^j for integer coordinates v.
    fn int_mult_matrix(&self, v: &[BigInt]) -> Vec<Vec<BigInt>> {
        let d = self.degree();
        let g = self.gi.coeffs();
        let mut rows = Vec::with_capacity(d);
        let mut cur = v.to_vec();
        for _ in 0..d {
            rows.push(cur.clone());
            let top = cur[d - 1].clone();
            let mut next = vec![BigInt::zero(); d];
            for i in (1..d).rev() {
                next[i] = cur[i - 1].clone() - &top * &g[i];
            }
            next[0] = -(&top * &g[0]);
            cur = next;
        }
        rows
    }

    /// Norm of the element with the given power-basis coordinates.
    fn norm_of(&self, coords: &[Rational]) -> Rational {
        let (den, v) = integral_coords(coords);
        let det = determinant(&self.int_mult_matrix(&v));
        Rational::new(det, num_traits::pow(den, self.degree()))
    }

    /// Primes p ≥ `start` not dividing disc(g) at which g has a root, with
    /// the roots in increasing order.
    pub fn degree_one_primes(&self, start: u64) -> impl Iterator<Item = (u64, Vec<u64>)> + '_ {
        primes_from(start.max(3)).filter_map(move |p| {
            if reduce_bigint(&self.disc, p) == 0 {
                return None;
            }
            let roots = FpPoly::from_int_poly(&self.gi, p).roots();
            if roots.is_empty() {
                None
            } else {
                Some((p, roots))
            }
        })
    }
}

/// A residue map K → 𝔽ₚ sending t to a root r of g modulo p.
#[derive(Clone, Debug)]
pub struct ResidueMap {
    pub p: u64,
    pub r: u64,
    field: Arc<NumberField>,
}

impl ResidueMap {
    /// Image of an element, or `NotIntegral` when p divides a denominator.
    pub fn apply(&self, a: &FieldElement) -> Result<u64> {
        if !Arc::ptr_eq(&self.field, &a.k) && *self.field != *a.k {
            return Err(Error::MismatchedFields);
        }
        let mut acc = 0u64;
        for c in a.c.iter().rev() {
            let v = reduce_rational(c, self.p).ok_or(Error::NotIntegral { p: self.p })?;
            acc = fp::addmod(fp::mulmod(acc, self.r, self.p), v, self.p);
        }
        Ok(acc)
    }

    pub fn apply_rational(&self, q: &Rational) -> Result<u64> {
        reduce_rational(q, self.p).ok_or(Error::NotIntegral { p: self.p })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }
}

/// The residue map at the smallest root of g modulo an odd unramified p.
pub fn residue_map(k: &Arc<NumberField>, p: u64) -> Result<ResidueMap> {
    if p < 3 || !fp::is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    if reduce_bigint(&k.disc, p) == 0 {
        return Err(Error::Ramified { p });
    }
    let roots = FpPoly::from_int_poly(&k.gi, p).roots();
    match roots.first() {
        Some(&r) => Ok(ResidueMap { p, r, field: k.clone() }),
        None => Err(Error::NoRootModP { p }),
    }
}

/// Whether a cubic field is Galois (cyclic), i.e. disc(g) is a square.
pub fn is_galois_cubic(k: &NumberField) -> Result<bool> {
    if k.degree() != 3 {
        return Err(Error::InvalidField(format!("expected a cubic field, got degree {}", k.degree())));
    }
    Ok(!k.disc.is_negative() && crate::arith::rational::int_sqrt_exact(&k.disc).is_some())
}

/// Whether two fields are isomorphic: equal degrees and g₁ has a root in K₂.
pub fn fields_isomorphic(k1: &Arc<NumberField>, k2: &Arc<NumberField>) -> Result<bool> {
    if k1.degree() != k2.degree() {
        return Ok(false);
    }
    Ok(!root_in_field(&k1.g, k2)?.is_empty())
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// An element of a number field in the power basis 1, t, …, t^{d−1}.
#[derive(Clone)]
pub struct FieldElement {
    k: Arc<NumberField>,
    c: Vec<Rational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && (Arc::ptr_eq(&self.k, &other.k) || *self.k == *other.k)
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Lexicographic on coordinates from the top power down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.iter().rev().cmp(other.c.iter().rev())
    }
}

impl FieldElement {
    pub fn new(k: &Arc<NumberField>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != k.degree() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                k.degree(),
                coords.len()
            )));
        }
        Ok(FieldElement { k: k.clone(), c: coords })
    }

    /// The class of a polynomial in t modulo g.
    pub fn from_poly(k: &Arc<NumberField>, p: &RationalPolynomial) -> Self {
        FieldElement { k: k.clone(), c: k.reduce_rat(p.coeffs().to_vec()) }
    }

    pub fn from_rational(k: &Arc<NumberField>, q: &Rational) -> Self {
        let mut c = vec![Rational::zero(); k.degree()];
        c[0] = q.clone();
        FieldElement { k: k.clone(), c }
    }

    pub fn zero(k: &Arc<NumberField>) -> Self {
        Self::from_rational(k, &Rational::zero())
    }

    pub fn one(k: &Arc<NumberField>) -> Self {
        Self::from_rational(k, &Rational::one())
    }

    /// The class of t.
    pub fn generator(k: &Arc<NumberField>) -> Self {
        Self::from_poly(k, &Poly::monomial(Rational::one(), 1))
    }

    /// Parse an element written as a polynomial in the field's variable (or `t`).
    pub fn parse(k: &Arc<NumberField>, s: &str) -> Result<Self> {
        let (p, var) = parse_poly_named(s)?;
        if let Some(v) = var {
            if v != k.var && v != "t" {
                return Err(Error::InvalidInput(format!("unexpected variable {v}")));
            }
        }
        Ok(Self::from_poly(k, &p))
    }

    pub fn parent(&self) -> &Arc<NumberField> {
        &self.k
    }

    pub fn coords(&self) -> &[Rational] {
        &self.c
    }

    pub fn to_poly(&self) -> RationalPolynomial {
        Poly::new(self.c.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    fn same_parent(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.k, &other.k) || *self.k == *other.k
    }

    fn check_parent(&self, other: &Self) -> Result<()> {
        if self.same_parent(other) {
            Ok(())
        } else {
            Err(Error::MismatchedFields)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_parent(o)?;
        Ok(self.clone() + o)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check_parent(o)?;
        Ok(self.clone() - o)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_parent(o)?;
        Ok(self.mul_ref(o))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.check_parent(o)?;
        let inv = o.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.mul_ref(&inv))
    }

    /// N_{K/ℚ}(self) as the determinant of multiplication-by-self.
    pub fn norm(&self) -> Rational {
        self.k.norm_of(&self.c)
    }

    pub fn trace(&self) -> Rational {
        let d = self.k.degree();
        let (den, v) = integral_coords(&self.c);
        let m = self.k.int_mult_matrix(&v);
        let tr: BigInt = (0..d).map(|i| m[i][i].clone()).sum();
        Rational::new(tr, den)
    }

    /// Characteristic polynomial of multiplication-by-self (monic, degree d),
    /// by the Faddeev–LeVerrier recurrence.
    pub fn characteristic_polynomial(&self) -> RationalPolynomial {
        let d = self.k.degree();
        let (den, v) = integral_coords(&self.c);
        let dq = from_big(&den);
        let a: Vec<Vec<Rational>> = self
            .k
            .int_mult_matrix(&v)
            .into_iter()
            .map(|r| r.into_iter().map(|x| from_big(&x) / &dq).collect())
            .collect();
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[d] = Rational::one();
        let mut m = vec![vec![Rational::zero(); d]; d];
        for k in 1..=d {
            // M_k = A·M_{k−1} + c_{d−k+1} I, c_{d−k} = −tr(A·M_k)/k
            let mut mk = mat_mul(&a, &m);
            for (i, row) in mk.iter_mut().enumerate() {
                row[i] += &coeffs[d - k + 1];
            }
            let am = mat_mul(&a, &mk);
            let tr: Rational = (0..d).map(|i| am[i][i].clone()).sum();
            coeffs[d - k] = -tr / int(k as i64);
            m = mk;
        }
        Poly::new(coeffs)
    }

    /// Monic minimal polynomial over ℚ.
    pub fn minimal_polynomial(&self) -> RationalPolynomial {
        let chi = self.characteristic_polynomial();
        let g = poly_gcd(&chi, &chi.derivative());
        chi.div_exact(&g).expect("gcd divides").monic()
    }

    /// Evaluate a rational polynomial at this element.
    pub fn eval_poly(&self, f: &RationalPolynomial) -> FieldElement {
        f.eval_with(self, |c| FieldElement::from_rational(&self.k, c))
    }

    pub fn text(&self) -> String {
        self.to_poly().to_text(&self.k.var)
    }
}

/// Common denominator D and the integer coordinates of D·c.
fn integral_coords(c: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let v = c.iter().map(|x| (x * from_big(&den)).to_integer()).collect();
    (den, v)
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if Zero::is_zero(&a[i][k]) {
                continue;
            }
            for j in 0..n {
                if !Zero::is_zero(&b[k][j]) {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl CoeffText for FieldElement {
    fn is_negative_text(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_negative())
    }
    fn abs_text(&self) -> String {
        match self.to_rational() {
            Some(q) => q.abs_text(),
            None => format!("({})", self.text()),
        }
    }
    fn is_unit_text(&self) -> bool {
        self.to_rational().is_some_and(|q| One::is_one(&q.abs()))
    }
}

impl<'a> Add<&'a FieldElement> for FieldElement {
    type Output = FieldElement;
    fn add(mut self, rhs: &'a FieldElement) -> FieldElement {
        self += rhs;
        self
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self + &rhs
    }
}

impl<'a> Sub<&'a FieldElement> for FieldElement {
    type Output = FieldElement;
    fn sub(mut self, rhs: &'a FieldElement) -> FieldElement {
        self -= rhs;
        self
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self - &rhs
    }
}

impl<'a> Mul<&'a FieldElement> for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        self.mul_ref(rhs)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.mul_ref(&rhs)
    }
}

impl<'a> Div<&'a FieldElement> for FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero; see [`FieldElement::try_div`].
    fn div(self, rhs: &'a FieldElement) -> FieldElement {
        self.try_div(rhs).expect("field division")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        for c in self.c.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<'a> AddAssign<&'a FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &'a FieldElement) {
        assert!(self.same_parent(rhs), "mismatched number fields");
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }
}

impl<'a> SubAssign<&'a FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &'a FieldElement) {
        assert!(self.same_parent(rhs), "mismatched number fields");
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
    }
}

impl Ring for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(&self.k)
    }

    fn one_like(&self) -> Self {
        FieldElement::one(&self.k)
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    fn from_int_like(&self, n: i64) -> Self {
        FieldElement::from_rational(&self.k, &int(n))
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        assert!(self.same_parent(rhs), "mismatched number fields");
        let d = self.k.degree();
        if d == 1 {
            return FieldElement { k: self.k.clone(), c: vec![&self.c[0] * &rhs.c[0]] };
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !Zero::is_zero(b) {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement { k: self.k.clone(), c: self.k.reduce_rat(prod) }
    }

    fn is_one(&self) -> bool {
        One::is_one(&self.c[0]) && self.c[1..].iter().all(Zero::is_zero)
    }
}

impl Field for FieldElement {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        if self.k.degree() == 1 {
            return Some(FieldElement { k: self.k.clone(), c: vec![self.c[0].recip()] });
        }
        let (g, s, _) = self.to_poly().ext_gcd(&self.k.g);
        debug_assert_eq!(g.deg(), 0, "g is irreducible");
        Some(FieldElement::from_poly(&self.k, &s))
    }

    fn from_rational_like(&self, q: &Rational) -> Option<Self> {
        Some(FieldElement::from_rational(&self.k, q))
    }

    fn from_bigint_like(&self, n: &BigInt) -> Self {
        FieldElement::from_rational(&self.k, &from_big(n))
    }

    fn characteristic(&self) -> u64 {
        0
    }
}

// ---------------------------------------------------------------------------
// Interpolation and the Trager norm
// ---------------------------------------------------------------------------

/// The polynomial of degree < n through (i, ys[i]) for i = 0..n, by Newton
/// divided differences.
fn interpolate(ys: &[Rational]) -> RationalPolynomial {
    let n = ys.len();
    let mut dd: Vec<Rational> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / int(level as i64);
        }
    }
    // p(z) = Σ dd[i] ∏_{j<i} (z − j), evaluated by Horner from the top.
    let mut acc: RationalPolynomial = Poly::zero();
    for i in (0..n).rev() {
        let lin = Poly::new(vec![int(-(i as i64)), int(1)]);
        acc = &(&acc * &lin) + &Poly::constant(dd[i].clone());
    }
    acc
}

/// N(z) = N_{K/ℚ}(q(z − c·t)), a polynomial of degree deg(q)·d.
fn trager_norm(q: &RationalPolynomial, k: &Arc<NumberField>, c: i64) -> RationalPolynomial {
    let n = q.deg() * k.degree();
    let t = FieldElement::generator(k);
    let ct = t.mul_ref(&FieldElement::from_rational(k, &int(c)));
    let values: Vec<Rational> = (0..=n)
        .map(|z| {
            let arg = FieldElement::from_rational(k, &int(z as i64)) - &ct;
            arg.eval_poly(q).norm()
        })
        .collect();
    interpolate(&values)
}

/// Number of roots in K of an irreducible q over ℚ, together with the
/// ℚ-factors of the squarefree Trager norm corresponding to them.
fn trager_linear_factors(q: &RationalPolynomial, k: &Arc<NumberField>) -> (i64, Vec<RationalPolynomial>) {
    let d = k.degree();
    for c in 1..=64i64 {
        let n = trager_norm(q, k, c);
        if poly_gcd(&n, &n.derivative()).deg() != 0 {
            continue;
        }
        let lin = factor_over_q(&n).factors.into_iter().map(|(f, _)| f).filter(|f| f.deg() == d).collect();
        return (c, lin);
    }
    unreachable!("a shift making the norm squarefree exists among the first few integers")
}

/// Root of q in K from a linear factor: gcd over K of q(x) and N_i(x + c·t).
fn root_from_norm_factor(
    q: &RationalPolynomial,
    ni: &RationalPolynomial,
    k: &Arc<NumberField>,
    c: i64,
) -> Option<FieldElement> {
    let t = FieldElement::generator(k);
    let shift = Poly::new(vec![t.mul_ref(&FieldElement::from_rational(k, &int(c))), FieldElement::one(k)]);
    let lift = |f: &RationalPolynomial| f.map(|a| FieldElement::from_rational(k, a));
    let shifted = lift(ni).compose(&shift);
    let g = lift(q).gcd_euclid(&shifted);
    if g.deg() == 1 {
        Some(-g.coeffs()[0].clone())
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// p-adic lifting and lattice reconstruction
// ---------------------------------------------------------------------------

fn eval_mod(f: &IntPoly, x: &BigInt, m: &BigInt) -> BigInt {
    f.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Newton-lift a simple root r₀ of f modulo p to a root modulo `pk`.
fn hensel_root(f: &IntPoly, r0: u64, p: u64, pk: &BigInt) -> Option<BigInt> {
    let fd = f.derivative();
    let mut r = BigInt::from(r0);
    let mut m = BigInt::from(p);
    while &m < pk {
        m = (&m * &m).min(pk.clone());
        let fv = eval_mod(f, &r, &m);
        let dv = eval_mod(&fd, &r, &m);
        let inv = dv.modinv(&m)?;
        r = (&r - fv * inv).mod_floor(&m);
    }
    Some(r.mod_floor(pk))
}

/// Short lattice vectors (D, c₀, …, c_{d−1}) with Σ cⱼτʲ ≡ D·ρ (mod pᵏ),
/// turned into candidate elements c/D.
fn reconstruct(k: &Arc<NumberField>, tau: &BigInt, rho: &BigInt, pk: &BigInt) -> Result<Vec<FieldElement>> {
    let d = k.degree();
    let mut basis = Vec::with_capacity(d + 1);
    let mut row = vec![BigInt::zero(); d + 1];
    row[0] = BigInt::one();
    row[1] = rho.mod_floor(pk);
    basis.push(row);
    let mut tpow = BigInt::one();
    for j in 1..d {
        tpow = (&tpow * tau).mod_floor(pk);
        let mut row = vec![BigInt::zero(); d + 1];
        row[1] = (-&tpow).mod_floor(pk);
        row[j + 1] = BigInt::one();
        basis.push(row);
    }
    let mut row = vec![BigInt::zero(); d + 1];
    row[1] = pk.clone();
    basis.push(row);
    let reduced = lattice_reduce_small(&basis)?;
    let mut out = Vec::new();
    for v in reduced {
        if Zero::is_zero(&v[0]) {
            continue;
        }
        let den = from_big(&v[0]);
        let coords = v[1..].iter().map(|c| from_big(c) / &den).collect();
        out.push(FieldElement { k: k.clone(), c: coords });
    }
    Ok(out)
}

/// A degree-one prime suited to lifting roots of `q`: unramified in K, q
/// squarefree with p-integral coefficients, g with a simple root.
struct LiftPrime {
    p: u64,
    tau0: u64,
    q_roots: Vec<u64>,
}

fn choose_lift_prime(q: &IntPoly, k: &NumberField, want: usize) -> Option<LiftPrime> {
    let lc = q.leading().expect("nonzero");
    let mut best: Option<LiftPrime> = None;
    for (p, roots) in k.degree_one_primes(3).take(20) {
        if reduce_bigint(lc, p) == 0 {
            continue;
        }
        let qp = FpPoly::from_int_poly(q, p);
        if qp.gcd(&qp.derivative()).deg() != 0 {
            continue;
        }
        let q_roots = qp.roots();
        if q_roots.len() < want {
            continue;
        }
        let better = best.as_ref().is_none_or(|b| q_roots.len() < b.q_roots.len());
        if better {
            let exact = q_roots.len() == want;
            best = Some(LiftPrime { p, tau0: roots[0], q_roots });
            if exact {
                break;
            }
        }
    }
    best
}

/// Reconstruct `want` distinct elements x of K with pred(x), from p-adic
/// approximations of their images under t ↦ τ. `image(pk, tau)` returns
/// the candidate residues modulo pᵏ.
fn padic_search(
    k: &Arc<NumberField>,
    p: u64,
    tau0: u64,
    want: usize,
    cap_bits: u64,
    mut image: impl FnMut(&BigInt, &BigInt) -> Vec<BigInt>,
    pred: impl Fn(&FieldElement) -> bool,
) -> Result<Vec<FieldElement>> {
    let mut found: Vec<FieldElement> = Vec::new();
    let log_p = (p as f64).log2();
    let mut bits = INITIAL_PRECISION_BITS.max(16 * k.degree() as u64);
    while bits <= cap_bits {
        let e = ((bits as f64) / log_p).ceil() as u32;
        let pk = num_traits::pow(BigInt::from(p), e as usize);
        let tau = hensel_root(&k.gi, tau0, p, &pk).ok_or_else(|| Error::Internal("ramified lifting prime".into()))?;
        for rho in image(&pk, &tau) {
            for cand in reconstruct(k, &tau, &rho, &pk)? {
                if !found.contains(&cand) && pred(&cand) {
                    found.push(cand);
                }
            }
            if found.len() >= want {
                return Ok(found);
            }
        }
        bits *= 2;
    }
    Ok(found)
}

// ---------------------------------------------------------------------------
// Roots and squares
// ---------------------------------------------------------------------------

/// All roots of h lying in K, sorted.
pub fn root_in_field(h: &RationalPolynomial, k: &Arc<NumberField>) -> Result<Vec<FieldElement>> {
    root_in_field_with_cap(h, k, DEFAULT_PRECISION_CAP_BITS)
}

/// [`root_in_field`] with an explicit p-adic precision cap in bits.
pub fn root_in_field_with_cap(h: &RationalPolynomial, k: &Arc<NumberField>, cap_bits: u64) -> Result<Vec<FieldElement>> {
    if h.is_zero() {
        return Err(Error::InvalidInput("roots of the zero polynomial".into()));
    }
    let d = k.degree();
    let mut roots = Vec::new();
    for (q, _) in factor_over_q(h).factors {
        let m = q.deg();
        if m == 1 {
            roots.push(FieldElement::from_rational(k, &(-q.coeffs()[0].clone())));
        } else if d.is_multiple_of(m) {
            roots.extend(roots_of_irreducible(&q, k, cap_bits)?);
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Roots in K of a monic irreducible q of degree m | d, m ≥ 2.
fn roots_of_irreducible(q: &RationalPolynomial, k: &Arc<NumberField>, cap_bits: u64) -> Result<Vec<FieldElement>> {
    let qi = to_primitive_int(q);
    // Cheap obstruction: distinct roots in K stay distinct modulo a degree-one
    // prime where q is squarefree, so a prime with no root of q proves none.
    let lc = qi.leading().unwrap().clone();
    for (p, _) in k.degree_one_primes(3).take(6) {
        if reduce_bigint(&lc, p) == 0 {
            continue;
        }
        let qp = FpPoly::from_int_poly(&qi, p);
        if qp.gcd(&qp.derivative()).deg() == 0 && qp.roots().is_empty() {
            return Ok(Vec::new());
        }
    }
    // Exact count from the Trager norm.
    let (c, linear) = trager_linear_factors(q, k);
    let want = linear.len();
    if want == 0 {
        return Ok(Vec::new());
    }
    let is_root = |x: &FieldElement| Ring::is_zero(&x.eval_poly(q));
    if let Some(lp) = choose_lift_prime(&qi, k, want) {
        let found = padic_search(
            k,
            lp.p,
            lp.tau0,
            want,
            cap_bits,
            |pk, _tau| lp.q_roots.iter().filter_map(|&r| hensel_root(&qi, r, lp.p, pk)).collect(),
            is_root,
        )?;
        if found.len() == want {
            return Ok(found);
        }
    }
    // The precision cap was reached: recover the roots from the norm factors
    // by a gcd over K, which is exact but slower.
    let mut out = Vec::new();
    for ni in &linear {
        let r = root_from_norm_factor(q, ni, k, c)
            .ok_or_else(|| Error::Internal("norm factor did not yield a linear factor".into()))?;
        if !is_root(&r) {
            return Err(Error::Internal("reconstructed root failed verification".into()));
        }
        out.push(r);
    }
    Ok(out)
}

/// Decide whether a is a square in its field; the witness s satisfies s² = a.
pub fn is_square(a: &FieldElement) -> (bool, Option<FieldElement>) {
    let k = a.parent().clone();
    if Ring::is_zero(a) {
        return (true, Some(a.clone()));
    }
    if let Some(q) = a.to_rational() {
        if let Some(s) = rational_sqrt(&q) {
            return (true, Some(FieldElement::from_rational(&k, &s)));
        }
        if k.degree() % 2 == 1 {
            // A rational non-square stays a non-square in odd degree.
            return (false, None);
        }
    }
    if k.degree() == 1 {
        return (false, None);
    }
    if rational_sqrt(&a.norm()).is_none() {
        return (false, None);
    }
    // Quadratic residue filter at degree-one primes; remember a prime where
    // a is a nonzero residue for the constructive search.
    let mut lift: Option<(u64, u64, u64)> = None;
    let mut tested = 0;
    for (p, roots) in k.degree_one_primes(3) {
        if tested >= RESIDUE_TESTS {
            break;
        }
        for r in roots {
            let rm = ResidueMap { p, r, field: k.clone() };
            let Ok(v) = rm.apply(a) else { continue };
            if v == 0 {
                continue;
            }
            tested += 1;
            match fp::sqrt_mod(v, p) {
                None => return (false, None),
                Some(s) => {
                    if lift.is_none() {
                        lift = Some((p, r, s));
                    }
                }
            }
        }
    }
    let check = |s: &FieldElement| s.square() == *a;
    if let Some((p, r, s0)) = lift {
        let (den, num) = integral_coords(a.coords());
        let found = padic_search(
            &k,
            p,
            r,
            1,
            DEFAULT_PRECISION_CAP_BITS / 16,
            |pk, tau| {
                // Image of a at τ, then the Newton-lifted square root of it.
                let mut av = BigInt::zero();
                for c in num.iter().rev() {
                    av = (av * tau + c).mod_floor(pk);
                }
                let dinv = den.modinv(pk).expect("p does not divide the denominator");
                let av = (av * dinv).mod_floor(pk);
                let f = Poly::new(vec![-av, BigInt::zero(), BigInt::one()]);
                hensel_root(&f, s0, p, pk).into_iter().collect()
            },
            check,
        );
        if let Ok(found) = found {
            if let Some(s) = found.into_iter().next() {
                return (true, Some(s));
            }
        }
    }
    // Complete fallback: square roots of a are roots of μ_a(z²) in K.
    let mu = a.minimal_polynomial();
    let mut sq = vec![Rational::zero(); 2 * mu.deg() + 1];
    for (i, c) in mu.coeffs().iter().enumerate() {
        sq[2 * i] = c.clone();
    }
    match root_in_field(&Poly::new(sq), &k) {
        Ok(cands) => match cands.into_iter().find(|s| check(s)) {
            Some(s) => (true, Some(s)),
            None => (false, None),
        },
        Err(_) => (false, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_poly;
    use crate::arith::rational::{qpoly, rat};

    fn field(s: &str) -> Arc<NumberField> {
        NumberField::parse(s).unwrap()
    }

    fn el(k: &Arc<NumberField>, s: &str) -> FieldElement {
        FieldElement::parse(k, s).unwrap()
    }

    #[test]
    fn validation() {
        assert!(NumberField::parse("x^2-4").is_err());
        assert!(NumberField::parse("2*x^2-3").is_err());
        assert!(NumberField::parse("x^2-1/2").is_err());
        assert!(NumberField::parse("x^7-2").is_err());
        assert!(NumberField::parse("5").is_err());
        assert_eq!(NumberField::parse("x^3-3*x^2+3").unwrap().degree(), 3);
    }

    #[test]
    fn arithmetic_examples() {
        let k = field("t^2-5");
        let t = FieldElement::generator(&k);
        assert_eq!(t.square(), FieldElement::from_rational(&k, &int(5)));
        let k = field("x^3-3*x^2+3");
        let t = FieldElement::generator(&k);
        let u = t.inv().unwrap();
        assert!(t.mul_ref(&u).is_one());
        // t·(t² − 3t) = t³ − 3t² = −3, so t⁻¹ = −(t² − 3t)/3.
        assert_eq!(u, el(&k, "-t^2/3+t"));
        assert_eq!(FieldElement::zero(&k).inv(), None);
        let other = field("x^2-5");
        assert_eq!(t.try_add(&FieldElement::generator(&other)), Err(Error::MismatchedFields));
        assert_eq!(t.try_div(&FieldElement::zero(&k)), Err(Error::DivisionByZero));
    }

    #[test]
    fn discriminants_and_galois() {
        let k = field("x^3-3*x^2+3");
        assert_eq!(*k.discriminant(), BigInt::from(81));
        assert!(is_galois_cubic(&k).unwrap());
        assert_eq!(*field("x^3-2").discriminant(), BigInt::from(-108));
        assert!(!is_galois_cubic(&field("x^3-2")).unwrap());
        assert!(is_galois_cubic(&field("x^3+x^2-2*x-1")).unwrap());
        assert!(is_galois_cubic(&field("x^2-5")).is_err());
        assert_eq!(*field("x^2-5").discriminant(), BigInt::from(20));
    }

    #[test]
    fn minimal_polynomials() {
        let k = field("x^3-3*x^2+3");
        assert_eq!(FieldElement::from_rational(&k, &int(3)).minimal_polynomial(), qpoly(&[-3, 1]));
        assert_eq!(FieldElement::generator(&k).minimal_polynomial(), qpoly(&[3, 0, -3, 1]));
        let k = field("x^2-5");
        assert_eq!(el(&k, "t^2").minimal_polynomial(), qpoly(&[-5, 1]));
        let k = field("x^4-10*x^2+1");
        // t = √2+√3; t² = 5 + 2√6 has minimal polynomial x² − 10x + 1.
        assert_eq!(el(&k, "t^2").minimal_polynomial(), qpoly(&[1, -10, 1]));
    }

    #[test]
    fn norms() {
        let k = field("x^2-5");
        assert_eq!(FieldElement::generator(&k).norm(), int(-5));
        assert_eq!(el(&k, "t/2+1/2").norm(), int(-1));
        let k = field("x^3-2");
        assert_eq!(el(&k, "t+1").norm(), int(3));
        assert_eq!(el(&k, "t+1").trace(), int(3));
    }

    #[test]
    fn squares() {
        let k = field("x^3-3*x^2+3");
        let (ok, w) = is_square(&FieldElement::from_rational(&k, &int(9)));
        assert!(ok);
        assert_eq!(w.unwrap().square(), FieldElement::from_rational(&k, &int(9)));
        let k2 = field("x^2-5");
        assert_eq!(is_square(&FieldElement::generator(&k2)), (false, None));
        let a = el(&k, "2*t^2-7*t+1/3");
        let (ok, w) = is_square(&a.square());
        assert!(ok);
        assert_eq!(w.unwrap().square(), a.square());
        assert!(!is_square(&FieldElement::from_rational(&k, &int(2))).0);
        assert!(!is_square(&el(&k, "t")).0);
    }

    #[test]
    fn roots() {
        let k = field("x^2-5");
        let r = root_in_field(&qpoly(&[-5, 0, 1]), &k).unwrap();
        assert_eq!(r, vec![-FieldElement::generator(&k), FieldElement::generator(&k)]);
        let c = field("x^3-3*x^2+3");
        assert!(root_in_field(&qpoly(&[1, 0, 1]), &c).unwrap().is_empty());
        // The cyclic cubic contains all three roots of its own polynomial.
        let all = root_in_field(c.defining_polynomial(), &c).unwrap();
        assert_eq!(all.len(), 3);
        for r in &all {
            assert!(Ring::is_zero(&r.eval_poly(c.defining_polynomial())));
        }
        // x³ − 2 has exactly one root in ℚ(∛2).
        let k = field("x^3-2");
        assert_eq!(root_in_field(&qpoly(&[-2, 0, 0, 1]), &k).unwrap().len(), 1);
        // Rational roots come through in any field.
        assert_eq!(root_in_field(&qpoly(&[-1, 0, 1]), &k).unwrap().len(), 2);
    }

    #[test]
    fn roots_without_lifting_agree() {
        let c = field("x^3-3*x^2+3");
        let h = parse_poly("x^3-3*x+1").unwrap();
        let a = root_in_field(&h, &c).unwrap();
        let b = root_in_field_with_cap(&h, &c, 1).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a, b);
    }

    #[test]
    fn isomorphism() {
        let a = field("x^3-3*x^2+3");
        let b = field("x^3-3*x+1");
        assert!(fields_isomorphic(&a, &b).unwrap());
        assert!(!fields_isomorphic(&a, &field("x^3+x^2-2*x-1")).unwrap());
    }

    #[test]
    fn residue_maps() {
        let k = field("x^2-5");
        let rm = residue_map(&k, 11).unwrap();
        assert_eq!(rm.r, 4);
        assert_eq!(residue_map(&k, 5).unwrap_err(), Error::Ramified { p: 5 });
        assert_eq!(residue_map(&k, 7).unwrap_err(), Error::NoRootModP { p: 7 });
        let q = NumberField::rationals();
        let rm = residue_map(&q, 13).unwrap();
        assert_eq!(rm.apply(&FieldElement::from_rational(&q, &rat(1, 2))).unwrap(), 7);
        let c = field("x^3-3*x^2+3");
        match residue_map(&c, 17) {
            Ok(rm) => assert_eq!(FpPoly::from_int_poly(c.integer_defining_polynomial(), 17).eval(rm.r), 0),
            Err(e) => assert_eq!(e, Error::NoRootModP { p: 17 }),
        }
        let rm = residue_map(&k, 11).unwrap();
        assert_eq!(rm.apply(&el(&k, "t/11")), Err(Error::NotIntegral { p: 11 }));
    }

    #[test]
    fn sextic_arithmetic() {
        let f6 = parse_poly(
            "x^6-3150*x^5+796635*x^4-75770100*x^3+3111596775*x^2-44606598750*x-85333003875",
        )
        .unwrap();
        let k = NumberField::with_var(&f6, "w").unwrap();
        let w = FieldElement::generator(&k);
        let delta = w.pow(3) - &w.mul_ref(&w.from_int_like(10395)) + &w.from_int_like(444150);
        assert!(!Ring::is_zero(&delta));
        assert!(delta.mul_ref(&delta.inv().unwrap()).is_one());
        assert_eq!(delta.text(), "w^3-10395*w+444150");
    }
}
