//! Torsion subgroups of elliptic curves over ℚ and over explicit number
//! fields, the division polynomial method, twist search and the quadratic
//! decomposition check.
//!
//! The torsion computation works one prime ℓ at a time. Reductions at
//! degree-one primes p ≥ 5 of good reduction bound the group order by the
//! gcd of the prime-to-p parts of #Ẽ(𝔽ₚ). For each ℓ dividing the bound,
//! points of exact order ℓ^j are found level by level as roots in K of the
//! primitive division polynomial of index ℓ^j whose y-coordinate is also in
//! K. The level counts determine the ℓ-Sylow subgroup, and explicit points
//! of maximal order provide the generators.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factor::{divides, factor_over_q, rational_roots, to_primitive_int};
use crate::arith::fp::{primes_from, reduce_bigint, FpPoly};
use crate::arith::poly::Poly;
use crate::arith::rational::{
    from_big, lcm_of_denominators, rational_sqrt, rational_text, squarefree_class, Rational, RationalPolynomial,
};
use crate::arith::ring::{Field, Ring};
use crate::curve::{prime_factors, prime_to_p_part, EllipticCurve, Point, TorsionGroup};
use crate::divpoly::{f_n_rational, psi_odd};
use crate::error::{Error, Result};
use crate::numfield::{is_square, root_in_field, FieldElement, NumberField};

/// Number of reduction primes combined into the torsion bound.
pub const BOUND_PRIMES: usize = 3;

/// Upper limit on reduction primes tried before giving up on a usable bound.
pub const MAX_BOUND_PRIMES: usize = 40;

/// Largest odd prime power whose primitive division polynomial is searched.
pub const MAX_ODD_LEVEL: u64 = 37;

/// Largest power of two whose primitive division polynomial is searched.
pub const MAX_TWO_LEVEL: u64 = 16;

/// Division polynomial method and twist search accept odd n in this range.
pub const METHOD_MIN_N: u64 = 3;
pub const METHOD_MAX_N: u64 = 21;

// ---------------------------------------------------------------------------
// Base fields
// ---------------------------------------------------------------------------

/// A field over which torsion of a rational curve is computed.
pub trait BaseField {
    type Elem: Field + fmt::Display;

    fn degree(&self) -> usize;
    /// Defining polynomial in `x` (`x` for ℚ).
    fn literal(&self) -> String;
    fn embed(&self, q: &Rational) -> Self::Elem;
    /// All roots in the field of a rational polynomial.
    fn roots(&self, h: &RationalPolynomial) -> Result<Vec<Self::Elem>>;
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Primes p ≥ 5 with a degree-one prime of the field above them.
    fn reduction_primes(&self) -> Box<dyn Iterator<Item = u64> + '_>;
    fn text(&self, a: &Self::Elem) -> String;
    /// Write a = r·s² with r a preferred representative of its square class.
    fn square_class(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl BaseField for Rationals {
    type Elem = Rational;

    fn degree(&self) -> usize {
        1
    }

    fn literal(&self) -> String {
        "x".to_string()
    }

    fn embed(&self, q: &Rational) -> Rational {
        q.clone()
    }

    fn roots(&self, h: &RationalPolynomial) -> Result<Vec<Rational>> {
        if h.is_zero() {
            return Err(Error::InvalidInput("roots of the zero polynomial".into()));
        }
        Ok(rational_roots(h))
    }

    fn sqrt(&self, a: &Rational) -> Option<Rational> {
        rational_sqrt(a)
    }

    fn reduction_primes(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        Box::new(primes_from(5))
    }

    fn text(&self, a: &Rational) -> String {
        rational_text(a)
    }

    fn square_class(&self, a: &Rational) -> (Rational, Rational) {
        let r = from_big(&squarefree_class(a));
        match rational_sqrt(&(a / &r)) {
            Some(s) => (r, s),
            None => (a.clone(), Rational::one()),
        }
    }
}

impl BaseField for Arc<NumberField> {
    type Elem = FieldElement;

    fn degree(&self) -> usize {
        NumberField::degree(self)
    }

    fn literal(&self) -> String {
        NumberField::literal(self)
    }

    fn embed(&self, q: &Rational) -> FieldElement {
        FieldElement::from_rational(self, q)
    }

    fn roots(&self, h: &RationalPolynomial) -> Result<Vec<FieldElement>> {
        root_in_field(h, self)
    }

    fn sqrt(&self, a: &FieldElement) -> Option<FieldElement> {
        is_square(a).1
    }

    fn reduction_primes(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        Box::new(self.degree_one_primes(5).map(|(p, _)| p))
    }

    fn text(&self, a: &FieldElement) -> String {
        a.text()
    }

    fn square_class(&self, a: &FieldElement) -> (FieldElement, FieldElement) {
        if let Some(q) = a.to_rational() {
            let (r, s) = Rationals.square_class(&q);
            return (self.embed(&r), self.embed(&s));
        }
        (a.clone(), FieldElement::one(self))
    }
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

/// One reduction used for the torsion bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRecord {
    pub p: u64,
    /// #Ẽ(𝔽ₚ).
    pub count: u64,
    /// Prime-to-p part of the count.
    pub prime_to_p: u64,
}

/// The torsion subgroup of a rational curve over a field, with generator
/// witnesses on the input model and the reduction audit trail.
#[derive(Clone, Debug)]
pub struct TorsionComputation<E> {
    pub curve: EllipticCurve<Rational>,
    /// The input curve with coefficients in the field.
    pub curve_over_field: EllipticCurve<E>,
    pub field: String,
    pub group: TorsionGroup,
    /// Generators with their orders: one for cyclic groups (none when
    /// trivial), two for non-cyclic ones (order n first, then order m).
    pub generators: Vec<(Point<E>, u64)>,
    pub audit: Vec<ReductionRecord>,
    pub bound: u64,
}

impl<E: Field> TorsionComputation<E> {
    /// Re-check every witness: exact orders, and that the generated subgroup
    /// has the claimed invariant factors.
    pub fn recertify(&self) -> bool {
        let e = &self.curve_over_field;
        if !self.generators.iter().all(|(p, n)| e.contains(p) && e.has_order(p, *n)) {
            return false;
        }
        match self.generators.as_slice() {
            [] => self.group.order() == 1,
            [(_, n)] => self.group.m == 1 && self.group.n == *n,
            [(p, n), (q, m)] => {
                if self.group.n != *n || self.group.m != *m {
                    return false;
                }
                // ⟨P⟩ ∩ ⟨Q⟩ = 0 iff no element of prime order of ⟨Q⟩ lies in ⟨P⟩.
                prime_factors(*m).into_iter().all(|l| {
                    let q1 = e.scalar_mul((*m / l) as i64, q);
                    let p1 = e.scalar_mul((*n / l) as i64, p);
                    (1..l).all(|k| e.scalar_mul(k as i64, &p1) != q1)
                })
            }
            _ => false,
        }
    }

    /// Every element of the group: i·P + j·Q over the generators.
    pub fn points(&self) -> Vec<Point<E>> {
        let e = &self.curve_over_field;
        let multiples = |p: &Point<E>, k: u64| -> Vec<Point<E>> {
            let mut out = vec![Point::Infinity];
            for _ in 1..k {
                let next = e.add(out.last().expect("nonempty"), p);
                out.push(next);
            }
            out
        };
        let mut out = vec![Point::Infinity];
        for (g, k) in &self.generators {
            let mult = multiples(g, *k);
            out = out.iter().flat_map(|a| mult.iter().map(move |b| e.add(a, b))).collect();
        }
        out
    }
}

/// Text and JSON form of a torsion computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub curve: String,
    pub field: String,
    pub group: String,
    pub invariants: [u64; 2],
    pub generators: Vec<WitnessText>,
    pub bound: u64,
    pub audit: Vec<ReductionRecord>,
}

/// A point of a given order with coordinates in text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessText {
    pub order: u64,
    pub x: String,
    pub y: String,
}

impl<E: Field + fmt::Display> TorsionComputation<E> {
    pub fn report<B: BaseField<Elem = E>>(&self, bf: &B) -> TorsionReport {
        TorsionReport {
            curve: self.curve.literal(),
            field: self.field.clone(),
            group: self.group.to_string(),
            invariants: [self.group.m, self.group.n],
            generators: self
                .generators
                .iter()
                .map(|(p, n)| WitnessText {
                    order: *n,
                    x: p.x().map_or_else(|| "inf".into(), |v| bf.text(v)),
                    y: p.y().map_or_else(|| "inf".into(), |v| bf.text(v)),
                })
                .collect(),
            bound: self.bound,
            audit: self.audit.clone(),
        }
    }
}

impl TorsionReport {
    /// Line-delimited `key: value` form; see [`TorsionReport::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("curve: {}\n", self.curve));
        out.push_str(&format!("field: {}\n", self.field));
        out.push_str(&format!("group: {}\n", self.group));
        out.push_str(&format!("invariants: {} {}\n", self.invariants[0], self.invariants[1]));
        for g in &self.generators {
            out.push_str(&format!("generator: order={} x={} y={}\n", g.order, g.x, g.y));
        }
        out.push_str(&format!("bound: {}\n", self.bound));
        for r in &self.audit {
            out.push_str(&format!("reduction: p={} count={} prime_to_p={}\n", r.p, r.count, r.prime_to_p));
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let bad = |line: usize, msg: &str| Error::Parse { pos: line, msg: msg.to_string() };
        let mut rep = TorsionReport {
            curve: String::new(),
            field: String::new(),
            group: String::new(),
            invariants: [0, 0],
            generators: Vec::new(),
            bound: 0,
            audit: Vec::new(),
        };
        for (i, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line.split_once(": ").ok_or_else(|| bad(i, "expected `key: value`"))?;
            let fields = |v: &str| -> std::collections::HashMap<String, String> {
                v.split_whitespace()
                    .filter_map(|kv| kv.split_once('=').map(|(a, b)| (a.to_string(), b.to_string())))
                    .collect()
            };
            let num = |v: &str| v.trim().parse::<u64>().map_err(|_| bad(i, "expected an integer"));
            match key {
                "curve" => rep.curve = value.to_string(),
                "field" => rep.field = value.to_string(),
                "group" => rep.group = value.to_string(),
                "invariants" => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    if parts.len() != 2 {
                        return Err(bad(i, "expected two invariant factors"));
                    }
                    rep.invariants = [num(parts[0])?, num(parts[1])?];
                }
                "generator" => {
                    let f = fields(value);
                    let get = |k: &str| f.get(k).cloned().ok_or_else(|| bad(i, &format!("missing {k}")));
                    rep.generators.push(WitnessText { order: num(&get("order")?)?, x: get("x")?, y: get("y")? });
                }
                "bound" => rep.bound = num(value)?,
                "reduction" => {
                    let f = fields(value);
                    let get = |k: &str| f.get(k).cloned().ok_or_else(|| bad(i, &format!("missing {k}")));
                    rep.audit.push(ReductionRecord {
                        p: num(&get("p")?)?,
                        count: num(&get("count")?)?,
                        prime_to_p: num(&get("prime_to_p")?)?,
                    });
                }
                other => return Err(bad(i, &format!("unknown key {other}"))),
            }
        }
        Ok(rep)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })
    }
}

impl FromStr for TorsionReport {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_text(s)
    }
}

// ---------------------------------------------------------------------------
// The bound
// ---------------------------------------------------------------------------

fn level_reachable(l: u64, pk: u64) -> bool {
    if l == 2 {
        pk <= MAX_TWO_LEVEL
    } else {
        pk <= MAX_ODD_LEVEL
    }
}

fn bound_reachable(b: u64) -> bool {
    prime_factors(b).into_iter().all(|l| level_reachable(l, l_part(b, l)))
}

fn l_part(mut n: u64, l: u64) -> u64 {
    let mut acc = 1;
    while n.is_multiple_of(l) {
        n /= l;
        acc *= l;
    }
    acc
}

/// Combine reductions into a bound on the torsion order: the ℓ-part is the
/// smallest ℓ-part of #Ẽ(𝔽ₚ) over the recorded primes p ≠ ℓ (reduction is
/// injective on prime-to-p torsion). Needs at least two records.
pub fn combine_bound(audit: &[ReductionRecord]) -> u64 {
    let mut primes: Vec<u64> = audit.iter().flat_map(|r| prime_factors(r.prime_to_p)).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut bound = 1u64;
    for l in primes {
        let part = audit
            .iter()
            .filter(|r| r.p != l)
            .map(|r| l_part(r.count, l))
            .min()
            .unwrap_or(1);
        bound *= part;
    }
    bound
}

/// Torsion bound from the smallest usable reduction primes, with the
/// records used.
fn reduction_bound<B: BaseField>(e: &EllipticCurve<Rational>, bf: &B) -> Result<(u64, Vec<ReductionRecord>)> {
    let mut audit = Vec::new();
    for p in bf.reduction_primes() {
        if audit.len() >= BOUND_PRIMES && bound_reachable(combine_bound(&audit)) {
            return Ok((combine_bound(&audit), audit));
        }
        if audit.len() >= MAX_BOUND_PRIMES {
            break;
        }
        let Ok(ep) = e.reduce_mod(p) else { continue };
        let count = ep.count_points()?;
        let prime_to_p = prime_to_p_part(count, p);
        audit.push(ReductionRecord { p, count, prime_to_p });
    }
    Err(Error::NoUsablePrimes { cap: MAX_BOUND_PRIMES as u64 })
}

// ---------------------------------------------------------------------------
// Level-by-level search
// ---------------------------------------------------------------------------

/// Short model data shared by the searches.
struct ShortData<B: BaseField> {
    a: Rational,
    b: Rational,
    /// f(x) = x³ + Ax + B.
    f: RationalPolynomial,
    curve: EllipticCurve<B::Elem>,
}

impl<B: BaseField> ShortData<B> {
    fn new(e: &EllipticCurve<Rational>, bf: &B) -> Result<Self> {
        let (a, b) = e.short_coefficients();
        let f = Poly::new(vec![b.clone(), a.clone(), Rational::zero(), Rational::one()]);
        let curve = EllipticCurve::short(bf.embed(&a), bf.embed(&b))?;
        Ok(ShortData { a, b, f, curve })
    }

    fn rhs(&self, bf: &B, x: &B::Elem) -> B::Elem {
        self.f.eval_with(x, |c| bf.embed(c))
    }
}

/// Roots in the field of `h`, after a cheap modular obstruction: a root in
/// K reduces to a root modulo any degree-one prime not dividing the leading
/// coefficient of the primitive integer form of h.
fn field_roots<B: BaseField>(bf: &B, h: &RationalPolynomial) -> Result<Vec<B::Elem>> {
    if h.deg() > 24 {
        let hi = to_primitive_int(h);
        let lc = hi.leading().unwrap().clone();
        for p in bf.reduction_primes().take(4) {
            if reduce_bigint(&lc, p) == 0 {
                continue;
            }
            if FpPoly::from_int_poly(&hi, p).roots().is_empty() {
                return Ok(Vec::new());
            }
        }
    }
    bf.roots(h)
}

/// Polynomial whose roots are the x-coordinates of points of exact order ℓ^j.
fn primitive_division_polynomial(sd: &ShortDataQ, l: u64, j: u32) -> RationalPolynomial {
    let n = l.pow(j);
    if l == 2 {
        return match j {
            1 => sd.f.clone(),
            2 => f_n_rational(&sd.a, &sd.b, 4),
            _ => f_n_rational(&sd.a, &sd.b, n)
                .div_exact(&f_n_rational(&sd.a, &sd.b, n / 2))
                .expect("F_{2^(j-1)} divides F_{2^j}"),
        };
    }
    let top = psi_odd(&sd.a, &sd.b, n);
    if j == 1 {
        top
    } else {
        top.div_exact(&psi_odd(&sd.a, &sd.b, n / l)).expect("ψ_{n/l} divides ψ_n")
    }
}

/// The rational data needed to build division polynomials.
struct ShortDataQ {
    a: Rational,
    b: Rational,
    f: RationalPolynomial,
}

/// Points of exact order ℓ^j on the short model.
fn points_of_level<B: BaseField>(
    bf: &B,
    sd: &ShortData<B>,
    sq: &ShortDataQ,
    l: u64,
    j: u32,
) -> Result<Vec<Point<B::Elem>>> {
    let h = primitive_division_polynomial(sq, l, j);
    let mut out = Vec::new();
    for x in field_roots(bf, &h)? {
        if l == 2 && j == 1 {
            out.push(Point::Affine(x.clone(), x.zero_like()));
            continue;
        }
        let fx = sd.rhs(bf, &x);
        if let Some(y) = bf.sqrt(&fx) {
            let p = Point::Affine(x.clone(), y.clone());
            out.push(p.clone());
            out.push(Point::Affine(x, -y));
        }
    }
    Ok(out)
}

/// The ℓ-Sylow subgroup Z/ℓ^a × Z/ℓ^b (a ≤ b) with generators on the short
/// model.
struct Sylow<E> {
    a: u32,
    b: u32,
    p: Option<Point<E>>,
    q: Option<Point<E>>,
}

fn sylow_subgroup<B: BaseField>(
    bf: &B,
    sd: &ShortData<B>,
    sq: &ShortDataQ,
    l: u64,
    bound: u64,
) -> Result<Sylow<B::Elem>> {
    let max_level = {
        let mut v = 0u32;
        let mut b = bound;
        while b.is_multiple_of(l) {
            b /= l;
            v += 1;
        }
        v
    };
    let mut counts = vec![1u64];
    let mut levels: Vec<Vec<Point<B::Elem>>> = vec![Vec::new()];
    for j in 1..=max_level {
        if !level_reachable(l, l.pow(j)) {
            return Err(Error::Internal(format!("level {l}^{j} is beyond the search range")));
        }
        let pts = points_of_level(bf, sd, sq, l, j)?;
        let found = pts.len() as u64;
        counts.push(counts[j as usize - 1] + found);
        levels.push(pts);
        if found == 0 || l_part(bound, l) <= *counts.last().unwrap() {
            break;
        }
    }
    // #E[ℓ^j] = ℓ^{min(j,a) + min(j,b)}: the ratio between consecutive
    // levels is ℓ² while j ≤ a, ℓ while a < j ≤ b, 1 afterwards.
    let (mut a, mut b) = (0u32, 0u32);
    for w in counts.windows(2) {
        if w[1] % w[0] != 0 {
            return Err(Error::Internal(format!("inconsistent {l}-power torsion counts {counts:?}")));
        }
        match w[1] / w[0] {
            1 => {}
            r if r == l => b += 1,
            r if r == l * l && a == b => {
                a += 1;
                b += 1;
            }
            _ => return Err(Error::Internal(format!("inconsistent {l}-power torsion counts {counts:?}"))),
        }
    }
    if b == 0 {
        return Ok(Sylow { a, b, p: None, q: None });
    }
    let e = &sd.curve;
    let p = levels[b as usize][0].clone();
    let q = if a == 0 {
        None
    } else {
        // Q of order ℓ^a with ℓ^{a−1}Q outside ⟨ℓ^{b−1}P⟩.
        let p1 = e.scalar_mul(l.pow(b - 1) as i64, &p);
        let small: Vec<Point<B::Elem>> = (1..l).map(|k| e.scalar_mul(k as i64, &p1)).collect();
        let q = levels[a as usize]
            .iter()
            .find(|q| {
                let q1 = e.scalar_mul(l.pow(a - 1) as i64, q);
                !small.contains(&q1)
            })
            .cloned()
            .ok_or_else(|| Error::Internal(format!("no independent {l}-power point found")))?;
        Some(q)
    };
    Ok(Sylow { a, b, p: Some(p), q })
}

/// E(F)_tors for a rational curve over a base field.
pub fn torsion_over<B: BaseField>(e: &EllipticCurve<Rational>, bf: &B) -> Result<TorsionComputation<B::Elem>> {
    let (bound, audit) = reduction_bound(e, bf)?;
    let sd = ShortData::new(e, bf)?;
    let sq = ShortDataQ { a: sd.a.clone(), b: sd.b.clone(), f: sd.f.clone() };
    let (_, change) = e.short_model();
    let change_k = crate::curve::CoordinateChange {
        u: bf.embed(&change.u),
        r: bf.embed(&change.r),
        s: bf.embed(&change.s),
        t: bf.embed(&change.t),
    };
    let (mut m, mut n) = (1u64, 1u64);
    let mut gen_p: Point<B::Elem> = Point::Infinity;
    let mut gen_q: Point<B::Elem> = Point::Infinity;
    for l in prime_factors(bound) {
        let s = sylow_subgroup(bf, &sd, &sq, l, bound)?;
        m *= l.pow(s.a);
        n *= l.pow(s.b);
        if let Some(p) = s.p {
            gen_p = sd.curve.add(&gen_p, &p);
        }
        if let Some(q) = s.q {
            gen_q = sd.curve.add(&gen_q, &q);
        }
    }
    let group = TorsionGroup::new(m, n)?;
    let curve_over_field = e
        .map_coefficients(|c| Some(bf.embed(c)))
        .expect("embedding is total")?;
    let mut generators = Vec::new();
    if n > 1 {
        generators.push((change_k.backward(&gen_p), n));
    }
    if m > 1 {
        generators.push((change_k.backward(&gen_q), m));
    }
    let tc = TorsionComputation { curve: e.clone(), curve_over_field, field: bf.literal(), group, generators, audit, bound };
    if !tc.recertify() {
        return Err(Error::Internal("torsion witnesses failed re-certification".into()));
    }
    Ok(tc)
}

/// E(ℚ)_tors; the result is checked against Mazur's list.
pub fn torsion_over_q(e: &EllipticCurve<Rational>) -> Result<TorsionComputation<Rational>> {
    let tc = torsion_over(e, &Rationals)?;
    if !tc.group.in_mazur_list() {
        return Err(Error::Internal(format!("{} is not a torsion group over Q", tc.group)));
    }
    Ok(tc)
}

/// E(K)_tors for a rational curve and an explicit number field.
pub fn torsion_over_k(e: &EllipticCurve<Rational>, k: &Arc<NumberField>) -> Result<TorsionComputation<FieldElement>> {
    torsion_over(e, k)
}

// ---------------------------------------------------------------------------
// Division polynomial method
// ---------------------------------------------------------------------------

/// One field F′ in which an order-n point appears.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthEntry {
    /// Defining polynomial of F′ in `x`.
    pub field: String,
    pub degree: usize,
    /// Degree of the field generated by the x-coordinate.
    pub x_degree: usize,
    /// `None` when the point lies on E itself; otherwise the twist parameter
    /// δ ∈ F such that E^δ(F) has the point (the y-coordinate lies in a
    /// quadratic extension of F).
    pub twist: Option<String>,
    /// Point of exact order n on E (or on E^δ when twisted), short model.
    pub x: String,
    pub y: String,
}

/// Output of the division polynomial method for one curve and index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub curve: String,
    pub short_model: String,
    pub n: u64,
    pub d: usize,
    pub entries: Vec<GrowthEntry>,
}

/// Monic integer model c^l·q(z/c) of a monic rational q, with c.
fn integral_model(q: &RationalPolynomial) -> (RationalPolynomial, BigInt) {
    let c = lcm_of_denominators(q);
    let l = q.deg();
    let cq = from_big(&c);
    let coeffs = q
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| a * num_traits::pow(cq.clone(), l - i))
        .collect();
    (Poly::new(coeffs), c)
}

fn check_method_index(n: u64) -> Result<()> {
    if n.is_multiple_of(2) || !(METHOD_MIN_N..=METHOD_MAX_N).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "n must be odd and in [{METHOD_MIN_N}, {METHOD_MAX_N}], got {n}"
        )));
    }
    Ok(())
}

/// Irreducible factors of ψₙ whose roots are x-coordinates of points of
/// exact order n (not of any proper divisor).
fn primitive_factors(a: &Rational, b: &Rational, n: u64) -> Vec<RationalPolynomial> {
    let psi = psi_odd(a, b, n);
    let smaller: Vec<RationalPolynomial> = prime_factors(n).into_iter().filter(|&l| l < n).map(|l| psi_odd(a, b, n / l)).collect();
    factor_over_q(&psi)
        .factors
        .into_iter()
        .map(|(f, _)| f)
        .filter(|f| !smaller.iter().any(|s| s.deg() > 0 && divides(f, s)))
        .collect()
}

/// The division polynomial method: fields of degree dividing d over which
/// E or a quadratic twist of E gains a point of order n.
pub fn division_polynomial_method(e: &EllipticCurve<Rational>, n: u64, d: usize) -> Result<GrowthReport> {
    check_method_index(n)?;
    if !(1..=3).contains(&d) {
        return Err(Error::InvalidInput(format!("degree budget must be 1, 2 or 3, got {d}")));
    }
    let (short, _) = e.short_model();
    let (a, b) = (short.a4().clone(), short.a6().clone());
    let f = Poly::new(vec![b.clone(), a.clone(), Rational::zero(), Rational::one()]);
    let mut entries = Vec::new();
    for q in primitive_factors(&a, &b, n) {
        let l = q.deg();
        if !d.is_multiple_of(l) {
            continue;
        }
        // Rational roots live in ℚ itself, presented as ℚ[t]/(t).
        let (k, x0) = if l == 1 {
            let k = NumberField::rationals();
            let x0 = FieldElement::from_rational(&k, &-q.coeffs()[0].clone());
            (k, x0)
        } else {
            let (g, c) = integral_model(&q);
            let k = NumberField::new(&g)?;
            let x0 = FieldElement::generator(&k).mul_ref(&FieldElement::from_rational(&k, &Rational::new(BigInt::one(), c)));
            (k, x0)
        };
        let fx = x0.eval_poly(&f);
        let ek = EllipticCurve::short(k.embed(&a), k.embed(&b))?;
        match is_square(&fx) {
            (true, Some(y)) => {
                let pt = Point::Affine(x0.clone(), y.clone());
                if !ek.has_order(&pt, n) {
                    return Err(Error::Internal("division polynomial root failed order check".into()));
                }
                entries.push(GrowthEntry {
                    field: k.literal(),
                    degree: l,
                    x_degree: l,
                    twist: None,
                    x: x0.text(),
                    y: y.text(),
                });
            }
            _ => {
                // The twist by δ = f(x₀) carries (δx₀, δ²).
                let tw = ek.quadratic_twist(&fx)?;
                let pt = Point::Affine(fx.mul_ref(&x0), fx.square());
                if !tw.has_order(&pt, n) {
                    return Err(Error::Internal("twisted point failed order check".into()));
                }
                let (xt, yt) = (pt.x().unwrap().text(), pt.y().unwrap().text());
                entries.push(GrowthEntry {
                    field: k.literal(),
                    degree: l,
                    x_degree: l,
                    twist: Some(fx.text()),
                    x: xt,
                    y: yt,
                });
                if d.is_multiple_of(2 * l) {
                    // l = 1: F′ = ℚ(√D) with f(x₀) = D·s².
                    let fxq = fx.to_rational().expect("rational x-coordinate gives a rational value");
                    let dcls = squarefree_class(&fxq);
                    let kq = NumberField::new(&Poly::new(vec![from_big(&-&dcls), Rational::zero(), Rational::one()]))?;
                    let s = rational_sqrt(&(&fxq / from_big(&dcls))).expect("square class quotient is a square");
                    let x0q = kq.embed(&x0.to_rational().unwrap());
                    let y = FieldElement::generator(&kq).mul_ref(&kq.embed(&s));
                    let eq = EllipticCurve::short(kq.embed(&a), kq.embed(&b))?;
                    let pt = Point::Affine(x0q.clone(), y.clone());
                    if !eq.has_order(&pt, n) {
                        return Err(Error::Internal("quadratic point failed order check".into()));
                    }
                    entries.push(GrowthEntry {
                        field: kq.literal(),
                        degree: 2,
                        x_degree: 1,
                        twist: None,
                        x: x0q.text(),
                        y: y.text(),
                    });
                }
            }
        }
    }
    Ok(GrowthReport { curve: e.literal(), short_model: short.literal(), n, d, entries })
}

// ---------------------------------------------------------------------------
// Twist search
// ---------------------------------------------------------------------------

/// A square class δ with an order-n point on E^δ over the base field.
#[derive(Clone, Debug)]
pub struct TwistClass<E> {
    /// Class representative δ.
    pub delta: E,
    /// The twist y² = x³ + Aδ²x + Bδ³.
    pub twist: EllipticCurve<E>,
    /// A point of exact order n on the twist.
    pub point: Point<E>,
    /// x-coordinate on the short model of E giving rise to the class.
    pub x0: E,
}

/// Square classes δ for which E^δ has a point of exact order n over the
/// base field. Classes are returned in the order their first root appears.
pub fn twist_search<B: BaseField>(e: &EllipticCurve<Rational>, bf: &B, n: u64) -> Result<Vec<TwistClass<B::Elem>>> {
    check_method_index(n)?;
    let (short, _) = e.short_model();
    let (a, b) = (short.a4().clone(), short.a6().clone());
    let f = Poly::new(vec![b.clone(), a.clone(), Rational::zero(), Rational::one()]);
    let ek = EllipticCurve::short(bf.embed(&a), bf.embed(&b))?;
    let mut classes: Vec<TwistClass<B::Elem>> = Vec::new();
    for q in primitive_factors(&a, &b, n) {
        if !bf.degree().is_multiple_of(q.deg()) {
            continue;
        }
        for x0 in field_roots(bf, &q)? {
            let fx = f.eval_with(&x0, |c| bf.embed(c));
            let (r, s) = bf.square_class(&fx);
            let known = classes.iter().any(|c| bf.sqrt(&c.delta.mul_ref(&r)).is_some());
            if known {
                continue;
            }
            // On E^r: (r·x₀)³ + A r³ x₀ + B r³ = r³·f(x₀) = r⁴s², so y = r²s.
            let twist = ek.quadratic_twist(&r)?;
            let point = Point::Affine(r.mul_ref(&x0), r.square().mul_ref(&s));
            if !twist.has_order(&point, n) {
                return Err(Error::Internal("twist witness failed order check".into()));
            }
            classes.push(TwistClass { delta: r, twist, point, x0 });
        }
    }
    Ok(classes)
}

// ---------------------------------------------------------------------------
// Quadratic decomposition
// ---------------------------------------------------------------------------

/// Order and exponent of the n-torsion of a group.
fn n_part(g: &TorsionGroup, n: u64) -> (u64, u64) {
    let (a, b) = (g.m.gcd(&n), g.n.gcd(&n));
    (a * b, a.lcm(&b).max(1))
}

/// Compare E(ℚ(√d))[n] with E(ℚ)[n] ⊕ E^d(ℚ)[n] by order and exponent.
/// For d = 1 the field is ℚ itself, the twist summand is absent, and the
/// check compares the number-field path with the rational path.
pub fn quadratic_decomposition_check(e: &EllipticCurve<Rational>, d: &BigInt, n: u64) -> Result<bool> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::InvalidInput(format!("n must be odd and at least 3, got {n}")));
    }
    if Zero::is_zero(d) || squarefree_class(&from_big(d)) != *d {
        return Err(Error::InvalidInput(format!("{d} is not a squarefree nonzero integer")));
    }
    let over_q = torsion_over_q(e)?.group;
    if One::is_one(d) {
        let k = NumberField::rationals();
        let left = torsion_over_k(e, &k)?.group;
        return Ok(n_part(&left, n) == n_part(&over_q, n));
    }
    let k = NumberField::new(&Poly::new(vec![from_big(&-d), Rational::zero(), Rational::one()]))?;
    let left = n_part(&torsion_over_k(e, &k)?.group, n);
    let twist = e.quadratic_twist(&from_big(d))?;
    let over_twist = torsion_over_q(&twist)?.group;
    let (o1, e1) = n_part(&over_q, n);
    let (o2, e2) = n_part(&over_twist, n);
    Ok(left == (o1 * o2, e1.lcm(&e2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;
    use crate::curve::parse_curve_literal;

    fn curve(s: &str) -> EllipticCurve<Rational> {
        parse_curve_literal(s).unwrap()
    }

    #[test]
    fn torsion_over_q_examples() {
        let tc = torsion_over_q(&curve("[0,-1,-1,0,0]")).unwrap();
        assert_eq!(tc.group, TorsionGroup::cyclic(5));
        let tc = torsion_over_q(&curve("[0,1]")).unwrap();
        assert_eq!(tc.group, TorsionGroup::cyclic(6));
        let tc = torsion_over_q(&curve("[0,-27]")).unwrap();
        assert_eq!(tc.group, TorsionGroup::cyclic(2));
        assert_eq!(tc.generators[0].0, Point::Affine(int(3), int(0)));
        let tc = torsion_over_q(&curve("[0,0,0,-1,0]")).unwrap();
        assert_eq!(tc.group, TorsionGroup::new(2, 2).unwrap());
        assert!(tc.recertify());
    }

    #[test]
    fn enumerated_points() {
        let tc = torsion_over_q(&curve("[0,0,0,-1,0]")).unwrap();
        let pts = tc.points();
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|p| tc.curve.contains(p) && tc.curve.has_order(p, 2) || p.is_infinity()));
        let tc = torsion_over_q(&curve("[0,27]")).unwrap();
        let texts: Vec<String> = tc.points().iter().map(|p| p.to_string()).collect();
        assert_eq!(texts, ["O", "(-3, 0)"]);
    }

    #[test]
    fn degree_one_field_matches_rationals() {
        let k = NumberField::rationals();
        for lit in ["[0,-1,-1,0,0]", "[0,1]", "[0,-27]", "[0,0,0,-1,0]", "[1,0,1,-1,-2]"] {
            let e = curve(lit);
            assert_eq!(torsion_over_q(&e).unwrap().group, torsion_over_k(&e, &k).unwrap().group, "{lit}");
        }
    }

    #[test]
    fn report_round_trips() {
        let tc = torsion_over_q(&curve("[0,1]")).unwrap();
        let rep = tc.report(&Rationals);
        assert_eq!(TorsionReport::from_text(&rep.to_text()).unwrap(), rep);
        assert_eq!(TorsionReport::from_json(&rep.to_json()).unwrap(), rep);
        assert_eq!(rep.group, "Z/6Z");
    }

    #[test]
    fn twist_search_examples() {
        let classes = twist_search(&curve("[0,1]"), &Rationals, 3).unwrap();
        assert!(classes.iter().any(|c| c.delta == int(1)));
    }

    #[test]
    fn decomposition_examples() {
        let e = curve("[0,1]");
        assert!(quadratic_decomposition_check(&e, &BigInt::from(-3), 3).unwrap());
        assert!(quadratic_decomposition_check(&e, &BigInt::from(1), 3).unwrap());
        assert!(quadratic_decomposition_check(&e, &BigInt::from(12), 3).is_err());
    }

    #[test]
    fn growth_over_rationals() {
        let rep = division_polynomial_method(&curve("[0,-1,-1,0,0]"), 5, 1).unwrap();
        assert!(rep.entries.iter().any(|g| g.field == "x" && g.twist.is_none()));
        assert!(division_polynomial_method(&curve("[0,1]"), 4, 1).is_err());
        assert!(division_polynomial_method(&curve("[0,1]"), 23, 1).is_err());
    }
}
