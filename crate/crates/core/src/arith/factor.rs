//! Polynomial gcd, squarefree decomposition and complete factorization over
//! ℚ by the Zassenhaus method: factor modulo a good prime, Hensel-lift the
//! modular factors quadratically past a Mignotte-type coefficient bound, and
//! recombine them by subset search.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp::{
    factor_degrees_squarefree, factor_squarefree_mod_p, invmod, is_prime_u64, primes_from,
    reduce_bigint, FpPoly,
};
use super::intpoly::{self, div_exact, div_rem_monic_mod, mul_mod, pos_mod, sym_mod};
use super::poly::Poly;
use super::rational::{
    primitive_part, rational_to_primitive, to_rational_poly, IntPoly, Rational,
    RationalPolynomial,
};

/// How many good primes are examined before choosing the factorization
/// prime; their degree patterns also prune the recombination search.
const CANDIDATE_PRIMES: usize = 10;

/// A factorization `unit · ∏ factorᵢ^multᵢ` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(RationalPolynomial, usize)>,
}

impl Factorization {
    /// Multiply the factorization back out.
    pub fn expand(&self) -> RationalPolynomial {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * f;
            }
        }
        acc
    }

    /// Degrees of the irreducible factors, with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.deg(), *m))
            .collect();
        out.sort_unstable();
        out
    }
}

// ---------------------------------------------------------------------------
// gcd
// ---------------------------------------------------------------------------

/// Large primes just below 2⁶² used for modular gcd computations.
fn gcd_primes() -> impl Iterator<Item = u64> {
    let mut c = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime_u64(c) {
            c -= 2;
        }
        let p = c;
        c -= 2;
        Some(p)
    })
}

fn content_of(f: &IntPoly) -> BigInt {
    f.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// gcd of integer polynomials: primitive part with positive leading
/// coefficient, times the gcd of the contents. gcd(0, 0) = 0.
pub fn int_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return if b.is_zero() { Poly::zero() } else { sign_normalize(b) };
    }
    if b.is_zero() {
        return sign_normalize(a);
    }
    let cont = content_of(a).gcd(&content_of(b));
    let a = primitive_part(a);
    let b = primitive_part(b);
    if a.deg() == 0 || b.deg() == 0 {
        return Poly::constant(cont);
    }
    let gamma = a.leading().unwrap().gcd(b.leading().unwrap());
    let mut modulus = BigInt::one();
    let mut acc: Option<IntPoly> = None;
    let mut acc_deg = usize::MAX;
    let mut last_candidate: Option<IntPoly> = None;
    for p in gcd_primes() {
        if reduce_bigint(&gamma, p) == 0 {
            continue;
        }
        let ap = FpPoly::from_int_poly(&a, p);
        let bp = FpPoly::from_int_poly(&b, p);
        let gp = ap.gcd(&bp);
        let d = gp.deg();
        if d == 0 {
            return Poly::constant(cont);
        }
        let gp = gp.scale(reduce_bigint(&gamma, p)).to_int_poly();
        match d.cmp(&acc_deg) {
            Ordering::Greater => continue,
            Ordering::Less => {
                acc = Some(gp);
                acc_deg = d;
                modulus = BigInt::from(p);
                last_candidate = None;
                continue;
            }
            Ordering::Equal => {
                let prev = acc.take().unwrap();
                let combined = crt_poly(&prev, &modulus, &gp, p);
                modulus *= p;
                acc = Some(combined);
            }
        }
        let candidate = primitive_part(&sym_mod(acc.as_ref().unwrap(), &modulus));
        if last_candidate.as_ref() == Some(&candidate)
            && div_exact(&a, &candidate).is_some()
            && div_exact(&b, &candidate).is_some()
        {
            return candidate.scale(&cont);
        }
        last_candidate = Some(candidate);
    }
    unreachable!("prime iterator is infinite")
}

fn sign_normalize(f: &IntPoly) -> IntPoly {
    if f.leading().is_some_and(|l| l.is_negative()) {
        -f.clone()
    } else {
        f.clone()
    }
}

/// Combine residues modulo m (coefficients in [0, m)) and modulo p.
fn crt_poly(a: &IntPoly, m: &BigInt, b: &IntPoly, p: u64) -> IntPoly {
    let minv = BigInt::from(invmod(reduce_bigint(m, p), p).expect("coprime moduli"));
    let pb = BigInt::from(p);
    let n = a.coeffs().len().max(b.coeffs().len());
    let zero = BigInt::zero();
    let coeffs = (0..n)
        .map(|i| {
            let x = a.coeff(i).unwrap_or(&zero);
            let y = b.coeff(i).unwrap_or(&zero);
            let t = ((y - x) * &minv).mod_floor(&pb);
            x + m * t
        })
        .collect();
    Poly::new(coeffs)
}

/// Monic gcd over ℚ; gcd(0, 0) = 0.
pub fn poly_gcd(a: &RationalPolynomial, b: &RationalPolynomial) -> RationalPolynomial {
    if a.is_zero() && b.is_zero() {
        return Poly::zero();
    }
    let (_, ai) = rational_to_primitive(a);
    let (_, bi) = rational_to_primitive(b);
    to_rational_poly(&int_gcd(&ai, &bi)).monic()
}

/// Whether `f` divides `g` exactly over ℚ.
pub fn divides(f: &RationalPolynomial, g: &RationalPolynomial) -> bool {
    assert!(!f.is_zero(), "divisibility by the zero polynomial");
    if g.is_zero() {
        return true;
    }
    let (_, fi) = rational_to_primitive(f);
    let (_, gi) = rational_to_primitive(g);
    div_exact(&gi, &fi).is_some()
}

// ---------------------------------------------------------------------------
// Squarefree decomposition
// ---------------------------------------------------------------------------

/// Whether a primitive integer polynomial is squarefree, decided cheaply
/// when some small prime keeps it squarefree.
fn squarefree_by_reduction(f: &IntPoly) -> bool {
    let lc = f.leading().unwrap();
    primes_from(3)
        .take(12)
        .filter(|&p| reduce_bigint(lc, p) != 0)
        .any(|p| {
            let fp = FpPoly::from_int_poly(f, p);
            fp.gcd(&fp.derivative()).deg() == 0
        })
}

/// Squarefree decomposition of a primitive integer polynomial with positive
/// leading coefficient (Yun): pairs (aᵢ, i) with f = ∏ aᵢ^i up to sign.
pub fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    if f.deg() == 0 {
        return Vec::new();
    }
    if squarefree_by_reduction(f) {
        return vec![(f.clone(), 1)];
    }
    let fd = f.derivative();
    let g = int_gcd(f, &fd);
    if g.deg() == 0 {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut b = div_exact(f, &g).expect("gcd divides f");
    let c = div_exact(&fd, &g).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.deg() > 0 {
        let a = primitive_part(&int_gcd(&b, &d));
        b = div_exact(&b, &a).expect("gcd divides b");
        let c = div_exact(&d, &a).expect("gcd divides d");
        d = &c - &b.derivative();
        if a.deg() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Hensel lifting
// ---------------------------------------------------------------------------

/// Binary factor tree for multifactor Hensel lifting. The left spine carries
/// the leading coefficient of the polynomial being lifted; every other node
/// is monic.
struct HenselNode {
    poly: IntPoly,
    children: Option<Box<(HenselNode, HenselNode)>>,
    s: IntPoly,
    t: IntPoly,
}

fn build_tree(factors: &[FpPoly], lc: u64, p: u64) -> HenselNode {
    if factors.len() == 1 {
        let f = factors[0].scale(lc);
        return HenselNode { poly: f.to_int_poly(), children: None, s: Poly::zero(), t: Poly::zero() };
    }
    // Split into halves of roughly equal total degree.
    let total: usize = factors.iter().map(FpPoly::deg).sum();
    let mut acc = 0;
    let mut cut = 1;
    for (i, f) in factors.iter().enumerate() {
        acc += f.deg();
        if 2 * acc >= total {
            cut = (i + 1).clamp(1, factors.len() - 1);
            break;
        }
    }
    let left = build_tree(&factors[..cut], lc, p);
    let right = build_tree(&factors[cut..], 1, p);
    let g = FpPoly::from_int_poly(&left.poly, p);
    let h = FpPoly::from_int_poly(&right.poly, p);
    let (one, s, t) = g.ext_gcd(&h);
    debug_assert!(one.is_one(), "modular factors must be coprime");
    let poly = g.mul(&h).to_int_poly();
    HenselNode { poly, children: Some(Box::new((left, right))), s: s.to_int_poly(), t: t.to_int_poly() }
}

/// One quadratic Hensel step (f ≡ g·h, s·g + t·h ≡ 1 mod m ⇒ mod m²),
/// applied recursively through the tree. `f` is the node's target modulo m².
fn lift_node(node: &mut HenselNode, f: IntPoly, m2: &BigInt) {
    let Some(children) = node.children.as_mut() else {
        node.poly = f;
        return;
    };
    let (left, right) = &mut **children;
    let g = &left.poly;
    let h = &right.poly;
    let (s, t) = (&node.s, &node.t);
    let e = pos_mod(&(&f - &intpoly::mul(g, h)), m2);
    let (q, r) = div_rem_monic_mod(&mul_mod(s, &e, m2), h, m2);
    let g_new = pos_mod(&(&(g + &intpoly::mul(t, &e)) + &intpoly::mul(&q, g)), m2);
    let h_new = pos_mod(&(h + &r), m2);
    let one = Poly::constant(BigInt::one());
    let b = pos_mod(&(&(&intpoly::mul(s, &g_new) + &intpoly::mul(t, &h_new)) - &one), m2);
    let (c, d) = div_rem_monic_mod(&mul_mod(s, &b, m2), &h_new, m2);
    let s_new = pos_mod(&(s - &d), m2);
    let t_new = pos_mod(&(&(t - &intpoly::mul(t, &b)) - &intpoly::mul(&c, &g_new)), m2);
    node.s = s_new;
    node.t = t_new;
    node.poly = f;
    lift_node(left, g_new, m2);
    lift_node(right, h_new, m2);
}

fn collect_leaves(node: HenselNode, out: &mut Vec<IntPoly>) {
    match node.children {
        None => out.push(node.poly),
        Some(children) => {
            let (l, r) = *children;
            collect_leaves(l, out);
            collect_leaves(r, out);
        }
    }
}

/// Lift the monic modular factorization `f ≡ lc(f)·∏ factors (mod p)` to a
/// monic factorization modulo the returned power of p, which is at least
/// `bound`.
fn hensel_lift(f: &IntPoly, factors: &[FpPoly], p: u64, bound: &BigInt) -> (Vec<IntPoly>, BigInt) {
    let lc = f.leading().unwrap();
    let lcp = reduce_bigint(lc, p);
    let mut tree = build_tree(factors, lcp, p);
    let mut m = BigInt::from(p);
    while &m < bound {
        let m2 = &m * &m;
        lift_node(&mut tree, pos_mod(f, &m2), &m2);
        m = m2;
    }
    let mut leaves = Vec::new();
    collect_leaves(tree, &mut leaves);
    // Normalize the leftmost leaf (which carries lc) to be monic.
    let lc_inv = lc.modinv(&m).expect("p does not divide the leading coefficient");
    leaves[0] = pos_mod(&leaves[0].scale(&lc_inv), &m);
    (leaves, m)
}

// ---------------------------------------------------------------------------
// Zassenhaus
// ---------------------------------------------------------------------------

/// All subset sums of a multiset of degrees.
fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let total: usize = degs.iter().sum();
    let mut reach = vec![false; total + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=total).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach.iter().enumerate().filter(|(_, &r)| r).map(|(i, _)| i).collect()
}

/// Coefficient bound for factors (scaled to leading coefficient lc(f)).
fn factor_bound(f: &IntPoly) -> BigInt {
    let lc = f.leading().unwrap().abs();
    let norm = intpoly::norm2_squared(f).sqrt() + 1;
    (lc * norm) << f.deg()
}

/// Irreducible factors over ℤ of a primitive squarefree polynomial with
/// positive leading coefficient, sorted.
pub fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    // Pull out the factor x if present: it would only waste recombination.
    if f.coeffs()[0].is_zero() {
        let rest = Poly::new(f.coeffs()[1..].to_vec());
        let mut out = vec![Poly::new(vec![BigInt::zero(), BigInt::one()])];
        out.extend(factor_squarefree(&rest));
        sort_int_factors(&mut out);
        return out;
    }
    let lc = f.leading().unwrap().clone();
    // Examine several good primes; keep the one with fewest factors.
    let mut best: Option<(usize, u64)> = None;
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut examined = 0;
    for p in primes_from(3).take(200) {
        if reduce_bigint(&lc, p) == 0 {
            continue;
        }
        let fp = FpPoly::from_int_poly(f, p);
        if fp.gcd(&fp.derivative()).deg() > 0 {
            continue;
        }
        let degs = factor_degrees_squarefree(&fp);
        if degs.len() == 1 {
            return vec![f.clone()];
        }
        let sums = subset_sums(&degs);
        allowed = Some(match allowed {
            None => sums,
            Some(a) => a.intersection(&sums).copied().collect(),
        });
        if best.is_none_or(|(k, _)| degs.len() < k) {
            best = Some((degs.len(), p));
        }
        examined += 1;
        if examined == CANDIDATE_PRIMES {
            break;
        }
    }
    let allowed = allowed.expect("squarefree polynomials have good primes");
    if !allowed.iter().any(|&d| d > 0 && d < n) {
        return vec![f.clone()];
    }
    let (_, p) = best.unwrap();
    let fp = FpPoly::from_int_poly(f, p).monic();
    let modular = factor_squarefree_mod_p(&fp);
    let bound = factor_bound(f) * 2 + 1;
    let (lifted, modulus) = hensel_lift(f, &modular, p, &bound);
    let mut out = recombine(f.clone(), lifted, &modulus, &factor_bound(f), &allowed);
    sort_int_factors(&mut out);
    out
}

fn recombine(
    mut f: IntPoly,
    mut pool: Vec<IntPoly>,
    m: &BigInt,
    bound: &BigInt,
    allowed: &BTreeSet<usize>,
) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= pool.len() {
        let r = pool.len();
        let lc = f.leading().unwrap().clone();
        let f0 = f.coeffs()[0].clone();
        let lc_f0 = &lc * &f0;
        // Per-factor data for cheap filters.
        let consts: Vec<BigInt> = pool.iter().map(|g| g.coeffs()[0].clone()).collect();
        let subs: Vec<BigInt> = pool
            .iter()
            .map(|g| g.coeffs()[g.deg() - 1].clone())
            .collect();
        let degs: Vec<usize> = pool.iter().map(IntPoly::deg).collect();
        let total_deg = f.deg();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let dsum: usize = idx.iter().map(|&i| degs[i]).sum();
            let complement_ok = allowed.contains(&dsum) || allowed.contains(&(total_deg - dsum));
            if complement_ok {
                // Second-highest coefficient: lc · Σ (sub-leading terms).
                let tr: BigInt = idx.iter().map(|&i| &subs[i]).sum::<BigInt>() * &lc;
                let tr = super::fp::symmetric(&tr, m);
                if &tr.abs() <= bound {
                    let c0 = idx.iter().fold(lc.clone(), |acc, &i| (acc * &consts[i]).mod_floor(m));
                    let c0 = super::fp::symmetric(&c0, m);
                    if !c0.is_zero() && (f0.is_zero() || lc_f0.is_multiple_of(&c0)) {
                        let mut g = Poly::constant(lc.clone());
                        for &i in &idx {
                            g = mul_mod(&g, &pool[i], m);
                        }
                        let g = primitive_part(&sym_mod(&g, m));
                        if let Some(q) = div_exact(&f, &g) {
                            found.push(g);
                            f = primitive_part(&q);
                            let mut keep = Vec::with_capacity(r - s);
                            for (i, g) in pool.into_iter().enumerate() {
                                if !idx.contains(&i) {
                                    keep.push(g);
                                }
                            }
                            pool = keep;
                            continue 'outer;
                        }
                    }
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        s += 1;
    }
    if f.deg() > 0 {
        found.push(f);
    }
    found
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn cmp_coeffs_desc<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

fn sort_int_factors(v: &mut [IntPoly]) {
    v.sort_by(|a, b| cmp_coeffs_desc(a.coeffs(), b.coeffs()));
}

/// Complete factorization over ℚ with monic irreducible factors sorted by
/// degree, then by coefficients from the top down.
pub fn factor_over_q(f: &RationalPolynomial) -> Factorization {
    if f.is_zero() {
        return Factorization { unit: Rational::zero(), factors: Vec::new() };
    }
    let unit = f.leading().unwrap().clone();
    let (_, g) = rational_to_primitive(f);
    let mut factors = Vec::new();
    for (a, mult) in squarefree_decomposition(&g) {
        for h in factor_squarefree(&a) {
            factors.push((to_rational_poly(&h).monic(), mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| cmp_coeffs_desc(a.coeffs(), b.coeffs()));
    Factorization { unit, factors }
}

// ---------------------------------------------------------------------------
// Rational roots
// ---------------------------------------------------------------------------

/// All rational roots (without multiplicity), ascending.
///
/// Roots are found modulo a good prime and Newton-lifted; if r = a/b is a
/// root then lc·r is an integer bounded by the Cauchy bound, so a symmetric
/// residue modulo a large enough prime power determines it.
pub fn rational_roots(f: &RationalPolynomial) -> Vec<Rational> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    if f.deg() == 0 {
        return Vec::new();
    }
    let (_, g) = rational_to_primitive(f);
    let mut roots = BTreeSet::new();
    for (a, _) in squarefree_decomposition(&g) {
        for r in squarefree_rational_roots(&a) {
            roots.insert(r);
        }
    }
    roots.into_iter().collect()
}

fn squarefree_rational_roots(f: &IntPoly) -> Vec<Rational> {
    let n = f.deg();
    if n == 0 {
        return Vec::new();
    }
    let lc = f.leading().unwrap().clone();
    if n == 1 {
        return vec![Rational::new(-f.coeffs()[0].clone(), lc)];
    }
    let mut out = Vec::new();
    if f.coeffs()[0].is_zero() {
        out.push(Rational::zero());
        let rest = Poly::new(f.coeffs()[1..].to_vec());
        out.extend(squarefree_rational_roots(&rest));
        return out;
    }
    let height = intpoly::max_norm(f);
    let bound = (&lc.abs() + &height) * 2 + 1;
    let p = primes_from(3)
        .find(|&p| {
            if reduce_bigint(&lc, p) == 0 {
                return false;
            }
            let fp = FpPoly::from_int_poly(f, p);
            fp.gcd(&fp.derivative()).deg() == 0
        })
        .expect("squarefree polynomials have good primes");
    let fp = FpPoly::from_int_poly(f, p);
    let fd = f.derivative();
    for r in fp.roots() {
        let (root, m) = newton_lift(f, &fd, BigInt::from(r), p, &bound);
        let num = super::fp::symmetric(&(&root * &lc), &m);
        let cand = Rational::new(num, lc.clone());
        if eval_int_poly_at(f, &cand).is_zero() {
            out.push(cand);
        }
    }
    out
}

fn newton_lift(f: &IntPoly, fd: &IntPoly, mut r: BigInt, p: u64, bound: &BigInt) -> (BigInt, BigInt) {
    let mut m = BigInt::from(p);
    while &m < bound {
        m = &m * &m;
        let fv = eval_mod(f, &r, &m);
        let dv = eval_mod(fd, &r, &m);
        let inv = dv.modinv(&m).expect("simple root modulo p");
        r = (&r - fv * inv).mod_floor(&m);
    }
    (r, m)
}

fn eval_mod(f: &IntPoly, x: &BigInt, m: &BigInt) -> BigInt {
    f.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Evaluate an integer polynomial at a rational point.
pub fn eval_int_poly_at(f: &IntPoly, x: &Rational) -> Rational {
    // Homogenized Horner to stay in integers: Σ cᵢ a^i b^(n-i).
    let (a, b) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    for c in f.coeffs().iter().rev() {
        acc = acc * a + c * &bpow;
        bpow *= b;
    }
    let denom = num_traits::pow(b.clone(), f.deg());
    Rational::new(acc, denom)
}

/// Convenience: primitive integer version of a rational polynomial.
pub fn to_primitive_int(f: &RationalPolynomial) -> IntPoly {
    rational_to_primitive(f).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, qpoly, rat, zpoly};

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&qpoly(&[-1, 0, 1]), &qpoly(&[-1, 1])), qpoly(&[-1, 1]));
        assert_eq!(poly_gcd(&qpoly(&[1, 0, 1]), &qpoly(&[-1, 1])), qpoly(&[1]));
        assert_eq!(poly_gcd(&qpoly(&[]), &qpoly(&[])), qpoly(&[]));
        assert_eq!(poly_gcd(&qpoly(&[]), &qpoly(&[2, 4])), Poly::new(vec![rat(1, 2), int(1)]));
    }

    #[test]
    fn int_gcd_with_content() {
        let a = zpoly(&[-6, 0, 6]); // 6(x-1)(x+1)
        let b = zpoly(&[-4, 4]); // 4(x-1)
        assert_eq!(int_gcd(&a, &b), zpoly(&[-2, 2]));
    }

    #[test]
    fn x4_minus_1() {
        let f = qpoly(&[-1, 0, 0, 0, 1]);
        let fac = factor_over_q(&f);
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors[0].0, qpoly(&[-1, 1]));
        assert_eq!(fac.factors[1].0, qpoly(&[1, 1]));
        assert_eq!(fac.factors[2].0, qpoly(&[1, 0, 1]));
    }

    #[test]
    fn psi3_of_x3_plus_1() {
        let f = qpoly(&[0, 12, 0, 0, 3]);
        let fac = factor_over_q(&f);
        assert_eq!(fac.unit, int(3));
        let polys: Vec<_> = fac.factors.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(polys, vec![qpoly(&[0, 1]), qpoly(&[4, 0, 0, 1])]);
    }

    #[test]
    fn repeated_factors() {
        // 2 (x-1)^3 (x^2+2)^2 (3x+1)
        let a = qpoly(&[-1, 1]);
        let b = qpoly(&[2, 0, 1]);
        let c = qpoly(&[1, 3]);
        let f = (&(&(&a * &a) * &(&a * &b)) * &(&b * &c)).scale(&int(2));
        let fac = factor_over_q(&f);
        assert_eq!(fac.expand(), f);
        let mults: Vec<usize> = fac.factors.iter().map(|(_, m)| *m).collect();
        // x-1 sorts before x+1/3 (coefficients compared from the top down).
        assert_eq!(mults, vec![3, 1, 2]);
        assert_eq!(fac.factors[1].0, Poly::new(vec![rat(1, 3), int(1)]));
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // (x^4 - 10x^2 + 1)(x^4 + 1): both irreducible but split a lot mod p.
        let a = qpoly(&[1, 0, -10, 0, 1]);
        let b = qpoly(&[1, 0, 0, 0, 1]);
        let f = &a * &b;
        let fac = factor_over_q(&f);
        assert_eq!(fac.degrees(), vec![4, 4]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn roots_and_divisibility() {
        assert_eq!(rational_roots(&qpoly(&[-1, 0, 1])), vec![int(-1), int(1)]);
        assert!(rational_roots(&qpoly(&[1, 0, 1])).is_empty());
        assert_eq!(rational_roots(&qpoly(&[1, -3, 2])), vec![rat(1, 2), int(1)]);
        assert_eq!(rational_roots(&qpoly(&[0, 0, -1, 1])), vec![int(0), int(1)]);
        assert!(divides(&qpoly(&[-1, 1]), &qpoly(&[-1, 0, 1])));
        assert!(!divides(&qpoly(&[1, 1]), &qpoly(&[1, 0, 1])));
    }
}
