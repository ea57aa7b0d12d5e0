//! Parametrized curve families, curves with prescribed j-invariant, the
//! two-division field construction, the degree-6 point of order 37, and the
//! labeled-curve database.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::factor::{divides, factor_over_q};
use crate::arith::parse::{parse_poly, parse_rational_list};
use crate::arith::poly::Poly;
use crate::arith::rational::{int, lcm_of_denominators, from_big, Rational, RationalPolynomial};
use crate::arith::ring::Ring;
use crate::curve::{EllipticCurve, Point};
use crate::divpoly::psi;
use crate::error::{Error, Result};
use crate::numfield::{FieldElement, NumberField};

/// Environment variable overriding the curve database path.
pub const CURVE_DB_ENV: &str = "TORSION_CURVE_DB";

/// The database shipped with the crate.
pub const DEFAULT_CURVE_DB: &str = include_str!("../data/curves.db");

/// The degree-6 factor of ψ₃₇ for y² = x³ − 10395x + 444150.
pub const F6: &str = "x^6-3150*x^5+796635*x^4-75770100*x^3+3111596775*x^2-44606598750*x-85333003875";

/// Short model coefficients of 1225H1.
pub const SPORADIC_37_A: i64 = -10395;
pub const SPORADIC_37_B: i64 = 444150;

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

/// The parametrized families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    /// y² + (1−t)xy − ty = x³ − tx², with (0,0) of order 5.
    Tate5,
    /// y² + (−t²+t+1)xy + (−t³+t²)y = x³ + (−t³+t²)x², with (0,0) of order 7.
    Tate7,
    /// j = (t¹² − 72t⁹ + 1728t⁶ − 13824t³)/(t³ − 27): curves with a 9-isogeny.
    Isog9J,
    /// j = (t² + 5t + 13)(t⁴ + 7t³ + 20t² + 19t + 1)³/t: curves with a 13-isogeny.
    Isog13J,
}

impl FamilySpec {
    pub const ALL: [FamilySpec; 4] = [FamilySpec::Tate5, FamilySpec::Tate7, FamilySpec::Isog9J, FamilySpec::Isog13J];

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Tate5 => "tate5",
            FamilySpec::Tate7 => "tate7",
            FamilySpec::Isog9J => "isog9_j",
            FamilySpec::Isog13J => "isog13_j",
        }
    }

    /// Parameter values excluded from the family.
    pub fn excluded(&self) -> &'static [i64] {
        match self {
            FamilySpec::Tate5 => &[0],
            FamilySpec::Tate7 => &[0, 1],
            FamilySpec::Isog9J => &[0, 3],
            FamilySpec::Isog13J => &[0],
        }
    }

    /// Whether the family yields j-invariants rather than curves.
    pub fn is_j_family(&self) -> bool {
        matches!(self, FamilySpec::Isog9J | FamilySpec::Isog13J)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilySpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilySpec::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown family {s:?} (expected tate5, tate7, isog9_j or isog13_j)")))
    }
}

/// A family member: a curve, or a j-invariant for the j-families.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyValue {
    Curve(EllipticCurve<Rational>),
    J(Rational),
}

fn check_admissible(fam: FamilySpec, t: &Rational) -> Result<()> {
    if fam.excluded().iter().any(|&v| *t == int(v)) {
        return Err(Error::Inadmissible {
            family: fam.name().to_string(),
            reason: format!("t = {t} is excluded (t must avoid {:?})", fam.excluded()),
        });
    }
    Ok(())
}

/// The Tate normal form of order 5 at t.
pub fn tate5(t: &Rational) -> Result<EllipticCurve<Rational>> {
    check_admissible(FamilySpec::Tate5, t)?;
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    EllipticCurve::new([&one - t, -t.clone(), -t.clone(), zero.clone(), zero]).map_err(|_| inadmissible_singular(FamilySpec::Tate5, t))
}

/// The Tate normal form of order 7 at t.
pub fn tate7(t: &Rational) -> Result<EllipticCurve<Rational>> {
    check_admissible(FamilySpec::Tate7, t)?;
    let t2 = t * t;
    let t3 = &t2 * t;
    let zero = Rational::from_integer(0.into());
    let a1 = -t2.clone() + t + int(1);
    let a23 = -t3 + &t2;
    EllipticCurve::new([a1, a23.clone(), a23, zero.clone(), zero]).map_err(|_| inadmissible_singular(FamilySpec::Tate7, t))
}

fn inadmissible_singular(fam: FamilySpec, t: &Rational) -> Error {
    Error::Inadmissible { family: fam.name().to_string(), reason: format!("the model is singular at t = {t}") }
}

/// j-invariant of the 9-isogeny family at t.
pub fn isog9_j(t: &Rational) -> Result<Rational> {
    check_admissible(FamilySpec::Isog9J, t)?;
    let t3 = t * t * t;
    let t6 = &t3 * &t3;
    let t9 = &t6 * &t3;
    let t12 = &t9 * &t3;
    Ok((t12 - int(72) * t9 + int(1728) * t6 - int(13824) * &t3) / (t3 - int(27)))
}

/// j-invariant of the 13-isogeny family at t.
pub fn isog13_j(t: &Rational) -> Result<Rational> {
    check_admissible(FamilySpec::Isog13J, t)?;
    let a = t * t + int(5) * t + int(13);
    let t2 = t * t;
    let b = &t2 * &t2 + int(7) * &t2 * t + int(20) * &t2 + int(19) * t + int(1);
    Ok(a * &b * &b * &b / t)
}

/// The family member at t.
pub fn family_curve(fam: FamilySpec, t: &Rational) -> Result<FamilyValue> {
    match fam {
        FamilySpec::Tate5 => tate5(t).map(FamilyValue::Curve),
        FamilySpec::Tate7 => tate7(t).map(FamilyValue::Curve),
        FamilySpec::Isog9J => isog9_j(t).map(FamilyValue::J),
        FamilySpec::Isog13J => isog13_j(t).map(FamilyValue::J),
    }
}

/// A curve with the given j-invariant: y² = x³ + 1 for j = 0, y² = x³ + x
/// for j = 1728, and y² = x³ + 3j(1728−j)x + 2j(1728−j)² otherwise.
pub fn curve_from_j(j: &Rational) -> EllipticCurve<Rational> {
    let coeffs = if *j == int(0) {
        [int(0), int(1)]
    } else if *j == int(1728) {
        [int(1), int(0)]
    } else {
        let k = int(1728) - j;
        [int(3) * j * &k, int(2) * j * &k * &k]
    };
    EllipticCurve::from_rationals(&coeffs).expect("j-model is nonsingular for j ∉ {0, 1728}")
}

/// K = ℚ[x]/(f) for the short model y² = f(x) of a curve whose 2-division
/// cubic is irreducible. The generator is scaled to an integral root when
/// the short model has non-integral coefficients.
pub fn two_division_field(e: &EllipticCurve<Rational>) -> Result<Arc<NumberField>> {
    let (a, b) = e.short_coefficients();
    let f: RationalPolynomial = Poly::new(vec![b, a, int(0), int(1)]);
    let fac = factor_over_q(&f);
    if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
        return Err(Error::ReducibleCubic);
    }
    // c³·f(z/c) is monic with integer coefficients.
    let c = from_big(&lcm_of_denominators(&f));
    let scaled = Poly::new(vec![&f.coeffs()[0] * &c * &c * &c, &f.coeffs()[1] * &c * &c, int(0), int(1)]);
    NumberField::new(&scaled)
}

// ---------------------------------------------------------------------------
// The degree-6 point of order 37
// ---------------------------------------------------------------------------

/// A twist E^δ over F = ℚ[w]/(f₆) with a point of order n.
#[derive(Clone, Debug)]
pub struct SporadicWitness {
    pub base: EllipticCurve<Rational>,
    pub field: Arc<NumberField>,
    pub delta: FieldElement,
    pub twist: EllipticCurve<FieldElement>,
    pub point: Point<FieldElement>,
    pub n: u64,
}

impl SporadicWitness {
    /// Re-run every check: f₆ | ψₙ, the point lies on E^δ, exact order n.
    pub fn verify(&self) -> Result<bool> {
        let psi_n = psi(&self.base, self.n)?;
        Ok(divides(self.field.defining_polynomial(), &psi_n.poly)
            && self.twist.contains(&self.point)
            && self.twist.has_order(&self.point, self.n))
    }
}

/// Build and certify the sporadic point of degree 6 on X₁(37): the twist of
/// y² = x³ − 10395x + 444150 by δ = w³ − 10395w + 444150 over ℚ[w]/(f₆)
/// has the point (δw, δ²) of order 37.
pub fn build_sporadic_37() -> Result<SporadicWitness> {
    let n = 37;
    let base = EllipticCurve::from_ints(&[SPORADIC_37_A, SPORADIC_37_B])?;
    let f6 = parse_poly(F6)?;
    let psi37 = psi(&base, n)?;
    if !divides(&f6, &psi37.poly) {
        return Err(Error::Internal("f6 does not divide psi_37".into()));
    }
    let field = NumberField::with_var(&f6, "w")?;
    let w = FieldElement::generator(&field);
    let delta = w.pow(3) + w.mul_ref(&w.from_int_like(SPORADIC_37_A)) + w.from_int_like(SPORADIC_37_B);
    let base_k = EllipticCurve::short(w.from_int_like(SPORADIC_37_A), w.from_int_like(SPORADIC_37_B))?;
    let twist = base_k.quadratic_twist(&delta)?;
    // δ = f(w), so (δw)³ + Aδ²(δw) + Bδ³ = δ³f(w) = δ⁴.
    let point = Point::Affine(delta.mul_ref(&w), delta.square());
    let witness = SporadicWitness { base, field, delta, twist, point, n };
    if !witness.twist.contains(&witness.point) || !witness.twist.has_order(&witness.point, n) {
        return Err(Error::Internal("the twisted point does not have order 37".into()));
    }
    Ok(witness)
}

// ---------------------------------------------------------------------------
// Curve database
// ---------------------------------------------------------------------------

/// One labeled curve.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRecord {
    pub label: String,
    pub curve: EllipticCurve<Rational>,
    pub provenance: String,
}

/// Labeled curves keyed by label.
#[derive(Clone, Debug, Default)]
pub struct CurveDb {
    records: BTreeMap<String, CurveRecord>,
    source: String,
}

impl CurveDb {
    /// Parse database text; `source` names it in error messages.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut records = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Database(format!("{source}:{}: {msg}", i + 1));
            let parts: Vec<&str> = line.splitn(3, '|').collect();
            let [label, coeffs, provenance] = parts.as_slice() else {
                return Err(err("expected `label|a1,a2,a3,a4,a6|provenance`".into()));
            };
            let label = label.trim();
            if label.is_empty() {
                return Err(err("empty label".into()));
            }
            let a = parse_rational_list(coeffs).map_err(|e| err(e.to_string()))?;
            if a.len() != 5 {
                return Err(err(format!("expected 5 coefficients, got {}", a.len())));
            }
            let curve = EllipticCurve::from_rationals(&a).map_err(|e| err(e.to_string()))?;
            let rec = CurveRecord { label: label.to_string(), curve, provenance: provenance.trim().to_string() };
            if records.insert(label.to_string(), rec).is_some() {
                return Err(err(format!("duplicate label {label}")));
            }
        }
        Ok(CurveDb { records, source: source.to_string() })
    }

    /// The shipped database.
    pub fn builtin() -> Self {
        Self::parse(DEFAULT_CURVE_DB, "builtin curves.db").expect("shipped database is valid")
    }

    /// The database named by the environment override, or the shipped one.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CURVE_DB_ENV) {
            Some(path) => {
                let path = std::path::PathBuf::from(path);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Database(format!("{}: {e}", path.display())))?;
                Self::parse(&text, &path.display().to_string())
            }
            None => Ok(Self::builtin()),
        }
    }

    pub fn get(&self, label: &str) -> Result<&CurveRecord> {
        self.records.get(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.records.contains_key(label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.records.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

static GLOBAL_DB: OnceLock<std::result::Result<CurveDb, Error>> = OnceLock::new();

/// The process-wide database, loaded once from the override path or the
/// shipped file.
pub fn global_db() -> Result<&'static CurveDb> {
    GLOBAL_DB.get_or_init(CurveDb::from_env).as_ref().map_err(Clone::clone)
}

/// Look up a label in the process-wide database.
pub fn curve_db_lookup(label: &str) -> Result<CurveRecord> {
    global_db()?.get(label).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::curve::{parse_curve_literal, TorsionGroup};

    #[test]
    fn tate_examples() {
        let e = tate5(&int(1)).unwrap();
        assert_eq!(e.literal(), "[0,-1,-1,0,0]");
        let e = tate7(&int(2)).unwrap();
        assert_eq!(e.literal(), "[-1,-4,-4,0,0]");
        let p = Point::Affine(int(0), int(0));
        assert!(e.has_order(&p, 7));
        assert!(matches!(tate5(&int(0)), Err(Error::Inadmissible { .. })));
        assert!(matches!(tate7(&int(1)), Err(Error::Inadmissible { .. })));
    }

    #[test]
    fn j_families() {
        assert_eq!(isog9_j(&int(1)).unwrap(), rat(12167, 26));
        assert!(isog9_j(&int(3)).is_err());
        assert!(isog9_j(&int(0)).is_err());
        assert!(isog13_j(&int(0)).is_err());
        // t = 1: 19 · 48³ / 1.
        assert_eq!(isog13_j(&int(1)).unwrap(), int(19 * 48 * 48 * 48));
        assert!(matches!(family_curve(FamilySpec::Isog9J, &int(2)).unwrap(), FamilyValue::J(_)));
        assert_eq!("tate7".parse::<FamilySpec>().unwrap(), FamilySpec::Tate7);
        assert!("tate6".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn curves_from_j() {
        assert_eq!(curve_from_j(&int(0)).literal(), "[0,0,0,0,1]");
        assert_eq!(curve_from_j(&int(1728)).literal(), "[0,0,0,1,0]");
        for j in [rat(-121945, 32), rat(46969655, 32768), rat(-25, 2), int(5)] {
            assert_eq!(*curve_from_j(&j).j_invariant(), j);
        }
    }

    #[test]
    fn two_division_fields() {
        let k = two_division_field(&parse_curve_literal("[0,-2]").unwrap()).unwrap();
        assert_eq!(k.literal(), "x^3-2");
        let e = parse_curve_literal("[0,-1,0,1,-1]").unwrap();
        assert_eq!(two_division_field(&e).unwrap_err(), Error::ReducibleCubic);
    }

    #[test]
    fn sporadic_37() {
        let w = build_sporadic_37().unwrap();
        assert_eq!(w.field.degree(), 6);
        assert_eq!(w.n, 37);
        assert_eq!(w.delta.text(), "w^3-10395*w+444150");
        assert!(w.verify().unwrap());
    }

    #[test]
    fn tate7_gains_14_torsion() {
        use crate::torsion::torsion_over_k;
        let e = tate7(&int(2)).unwrap();
        let k = two_division_field(&e).unwrap();
        let g = torsion_over_k(&e, &k).unwrap();
        assert_eq!(g.group, TorsionGroup::cyclic(14));
    }

    #[test]
    fn database() {
        let db = CurveDb::builtin();
        let r = db.get("1225H1").unwrap();
        let (short, _) = r.curve.short_model();
        assert_eq!(short.literal(), "[0,0,0,-10395,444150]");
        assert!(matches!(db.get("nosuchlabel"), Err(Error::UnknownLabel(_))));
        assert!(CurveDb::parse("x|1,2|p", "t").is_err());
        assert!(CurveDb::parse("a|0,0,0,0,0|p", "t").is_err());
        assert!(CurveDb::parse("a|0,0,0,0,1|p\na|0,0,0,0,1|p", "t").is_err());
        assert!(CurveDb::parse("# only a comment\n\n", "t").unwrap().is_empty());
    }
}
