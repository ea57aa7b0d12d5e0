//! Claim manifest types and the check implementations behind each kind.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use torsion_core::arith::factor::{divides, factor_over_q};
use torsion_core::arith::parse::parse_poly;
use torsion_core::arith::poly::Poly;
use torsion_core::arith::rational::{parse_rational, squarefree_class, Rational};
use torsion_core::curve::{EllipticCurve, TorsionGroup};
use torsion_core::divpoly::psi;
use torsion_core::families::{build_sporadic_37, curve_from_j, family_curve, two_division_field, CurveDb, FamilySpec, FamilyValue};
use torsion_core::numfield::{fields_isomorphic, is_galois_cubic, NumberField};
use torsion_core::torsion::{
    division_polynomial_method, quadratic_decomposition_check, torsion_over_k, torsion_over_q, twist_search, Rationals,
};
use torsion_core::{Error, Result};

use crate::{is_label, resolve_curve};

/// The manifest shipped with the binary.
pub const DEFAULT_MANIFEST: &str = include_str!("../claims.toml");

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Manifest {
    #[serde(rename = "claim")]
    pub claims: Vec<Claim>,
}

/// One checkable statement: identity, provenance, and the check itself.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Claim {
    pub id: String,
    pub group: String,
    pub anchor: String,
    pub description: String,
    pub check: Check,
}

/// The check kinds. Expected results are part of the data.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Check {
    /// Torsion of a curve over a field; optionally the exact point set
    /// (input model) when the field is ℚ.
    Torsion { curve: String, field: String, expect: String, points: Option<Vec<String>> },
    /// Whether a cubic field is Galois.
    GaloisCubic { field: String, expect: bool },
    /// Whether a polynomial divides ψₙ of a curve's short model.
    DividesPsi { curve: String, n: u64, poly: String, expect: bool },
    /// The degree-6 point of order 37.
    Sporadic37,
    /// The short model of a curve.
    ShortModel { curve: String, expect: String },
    /// From j alone: a twist with an order-n point and a further twist by d
    /// with an order-m point combine to the expected group over ℚ(√d).
    TwistTorsion { j: String, n: u64, m: u64, expect_d: i64, expect: String },
    /// No quadratic twist of the curve with this j has a rational n-torsion point.
    NoTwist { j: String, n: u64 },
    /// ψₙ factors and the factors multiply back; optionally some factor's
    /// field is isomorphic to a given field.
    FactorPsi { curve: String, n: u64, isomorphic_to: Option<String> },
    /// Family members all have a rational point of the given order.
    FamilyTorsion { family: String, t: Vec<String>, order: u64 },
    /// Family members have exactly the expected torsion over their 2-division field.
    TwoDivision { family: String, t: Vec<String>, expect: String },
    /// The division polynomial method.
    Growth {
        curve: String,
        n: u64,
        d: usize,
        entries: Option<usize>,
        isomorphic_to: Option<String>,
        untwisted_torsion: Option<String>,
    },
    /// Eq. (zbrojkvad) for one curve, d and n.
    Decomposition { curve: String, d: i64, n: u64, expect: bool },
}

impl Check {
    /// Database labels this check depends on.
    pub fn labels(&self) -> Vec<&str> {
        let curve = match self {
            Check::Torsion { curve, .. }
            | Check::DividesPsi { curve, .. }
            | Check::ShortModel { curve, .. }
            | Check::FactorPsi { curve, .. }
            | Check::Growth { curve, .. }
            | Check::Decomposition { curve, .. } => Some(curve.as_str()),
            _ => None,
        };
        curve.filter(|c| is_label(c)).into_iter().collect()
    }
}

/// Result of running one check.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    /// One-line explanation.
    pub detail: String,
    /// Machine-checkable witness text (coordinates, fields, factors).
    pub witness: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>, witness: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into(), witness: witness.into() }
    }
}

pub fn parse_manifest(text: &str) -> std::result::Result<Manifest, String> {
    let m: Manifest = toml::from_str(text).map_err(|e| e.to_string())?;
    let mut seen = BTreeSet::new();
    for c in &m.claims {
        if !seen.insert(c.id.as_str()) {
            return Err(format!("duplicate claim id {}", c.id));
        }
    }
    Ok(m)
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::InvalidInput(format!("not a rational number: {s:?}")))
}

fn group(s: &str) -> Result<TorsionGroup> {
    s.parse()
}

fn family_member(fam: FamilySpec, t: &Rational) -> Result<EllipticCurve<Rational>> {
    match family_curve(fam, t)? {
        FamilyValue::Curve(e) => Ok(e),
        FamilyValue::J(j) => Ok(curve_from_j(&j)),
    }
}

/// Run a check against a database.
pub fn run_check(check: &Check, db: &CurveDb) -> Result<Outcome> {
    match check {
        Check::Torsion { curve, field, expect, points } => {
            let e = resolve_curve(curve, db)?;
            let k = NumberField::parse(field)?;
            let want = group(expect)?;
            if k.degree() == 1 {
                let tc = torsion_over_q(&e)?;
                let witness = tc.report(&Rationals).to_text();
                let mut ok = tc.group == want;
                let mut detail = format!("E(Q)_tors = {}", tc.group);
                if let Some(points) = points {
                    let got: BTreeSet<String> = tc.points().iter().map(ToString::to_string).collect();
                    let expected: BTreeSet<String> = points.iter().cloned().collect();
                    ok &= got == expected;
                    let _ = write!(detail, "; points {{{}}}", got.into_iter().collect::<Vec<_>>().join(", "));
                }
                Ok(Outcome::new(ok, detail, witness))
            } else {
                if points.is_some() {
                    return Err(Error::InvalidInput("point lists are only supported over Q".into()));
                }
                let tc = torsion_over_k(&e, &k)?;
                let witness = tc.report(&k).to_text();
                Ok(Outcome::new(tc.group == want, format!("E(K)_tors = {} over {}", tc.group, k.literal()), witness))
            }
        }
        Check::GaloisCubic { field, expect } => {
            let k = NumberField::parse(field)?;
            let got = is_galois_cubic(&k)?;
            let witness = format!("field: {}\ndiscriminant: {}\ngalois: {got}\n", k.literal(), k.discriminant());
            Ok(Outcome::new(got == *expect, format!("galois = {got}, discriminant {}", k.discriminant()), witness))
        }
        Check::DividesPsi { curve, n, poly, expect } => {
            let e = resolve_curve(curve, db)?.short_model().0;
            let f = parse_poly(poly)?;
            let p = psi(&e, *n)?;
            let got = divides(&f, &p.poly);
            let witness = format!("curve: {}\nn: {n}\nfactor: {}\ndivides: {got}\n", e.literal(), f.to_text("x"));
            Ok(Outcome::new(got == *expect, format!("divides = {got}"), witness))
        }
        Check::Sporadic37 => {
            let w = build_sporadic_37()?;
            let ok = w.verify()? && w.n == 37 && w.field.degree() == 6;
            let witness = format!(
                "base: {}\nfield: {}\ndelta: {}\ntwist: {}\norder: {}\nx: {}\ny: {}\n",
                w.base.literal(),
                w.field.literal(),
                w.delta.text(),
                w.twist,
                w.n,
                w.point.x().map(|v| v.text()).unwrap_or_default(),
                w.point.y().map(|v| v.text()).unwrap_or_default(),
            );
            Ok(Outcome::new(ok, format!("point of order {} on E^delta over a sextic field", w.n), witness))
        }
        Check::ShortModel { curve, expect } => {
            let got = resolve_curve(curve, db)?.short_model().0.literal();
            Ok(Outcome::new(got == *expect, format!("short model {got}"), format!("short model: {got}\n")))
        }
        Check::TwistTorsion { j, n, m, expect_d, expect } => {
            let j = rational(j)?;
            let e = curve_from_j(&j);
            let with_n = twist_search(&e, &Rationals, *n)?;
            let with_m = twist_search(&e, &Rationals, *m)?;
            let want = group(expect)?;
            let mut witness = format!("j: {j}\nmodel: {}\n", e.literal());
            for a in &with_n {
                for b in &with_m {
                    let d = squarefree_class(&(&a.delta * &b.delta));
                    let base = e.quadratic_twist(&a.delta)?;
                    let k = NumberField::new(&Poly::new(vec![Rational::from_integer(-d.clone()), Rational::from_integer(0.into()), Rational::from_integer(1.into())]))?;
                    let tc = torsion_over_k(&base, &k)?;
                    let _ = write!(witness, "d: {d}\ncurve: {}\n{}", base.literal(), tc.report(&k).to_text());
                    if d == (*expect_d).into() && tc.group == want {
                        return Ok(Outcome::new(true, format!("E^{} has {} over Q(sqrt({d}))", a.delta, tc.group), witness));
                    }
                }
            }
            Ok(Outcome::new(false, format!("no twist pair reaches {want} over Q(sqrt({expect_d}))"), witness))
        }
        Check::NoTwist { j, n } => {
            let e = curve_from_j(&rational(j)?);
            let classes = twist_search(&e, &Rationals, *n)?;
            let deltas: Vec<String> = classes.iter().map(|c| c.delta.to_string()).collect();
            let witness = format!("model: {}\nn: {n}\nclasses: [{}]\n", e.literal(), deltas.join(", "));
            Ok(Outcome::new(classes.is_empty(), format!("{} twist classes with {n}-torsion", classes.len()), witness))
        }
        Check::FactorPsi { curve, n, isomorphic_to } => {
            let e = resolve_curve(curve, db)?.short_model().0;
            let p = psi(&e, *n)?;
            let fac = factor_over_q(&p.poly);
            let product = fac
                .factors
                .iter()
                .fold(Poly::constant(fac.unit.clone()), |acc, (g, m)| (0..*m).fold(acc, |a, _| &a * g));
            let mut ok = product == p.poly;
            let mut degrees: Vec<usize> = fac.factors.iter().flat_map(|(g, m)| std::iter::repeat_n(g.deg(), *m)).collect();
            degrees.sort_unstable();
            let mut detail = format!("degrees {degrees:?}");
            let mut witness = format!("curve: {}\nn: {n}\n", e.literal());
            for (g, m) in &fac.factors {
                let _ = writeln!(witness, "factor: {} multiplicity: {m}", g.to_text("x"));
            }
            if let Some(target) = isomorphic_to {
                let target = NumberField::parse(target)?;
                let mut found = None;
                for (g, _) in fac.factors.iter().filter(|(g, _)| g.deg() == target.degree()) {
                    let k = NumberField::new(g)?;
                    if fields_isomorphic(&k, &target)? {
                        found = Some(g.to_text("x"));
                        break;
                    }
                }
                ok &= found.is_some();
                let _ = write!(detail, "; isomorphic factor {}", found.as_deref().unwrap_or("none"));
            }
            Ok(Outcome::new(ok, detail, witness))
        }
        Check::FamilyTorsion { family, t, order } => {
            let fam: FamilySpec = family.parse()?;
            let mut witness = String::new();
            let mut bad = Vec::new();
            for t in t {
                let e = family_member(fam, &rational(t)?)?;
                let tc = torsion_over_q(&e)?;
                let _ = writeln!(witness, "t: {t} curve: {} group: {}", e.literal(), tc.group);
                if tc.group.order() % order != 0 {
                    bad.push(t.clone());
                }
            }
            let detail = if bad.is_empty() { format!("all {} members have a point of order {order}", t.len()) } else { format!("no point of order {order} at t = {}", bad.join(", ")) };
            Ok(Outcome::new(bad.is_empty(), detail, witness))
        }
        Check::TwoDivision { family, t, expect } => {
            let fam: FamilySpec = family.parse()?;
            let want = group(expect)?;
            let mut witness = String::new();
            let mut bad = Vec::new();
            for t in t {
                let e = family_member(fam, &rational(t)?)?;
                let k = two_division_field(&e)?;
                let tc = torsion_over_k(&e, &k)?;
                let _ = writeln!(witness, "t: {t} curve: {} field: {} group: {}", e.literal(), k.literal(), tc.group);
                if tc.group != want {
                    bad.push(format!("{t} ({})", tc.group));
                }
            }
            let detail = if bad.is_empty() { format!("all {} members give {want}", t.len()) } else { format!("mismatch at t = {}", bad.join(", ")) };
            Ok(Outcome::new(bad.is_empty(), detail, witness))
        }
        Check::Growth { curve, n, d, entries, isomorphic_to, untwisted_torsion } => {
            let e = resolve_curve(curve, db)?;
            let report = division_polynomial_method(&e, *n, *d)?;
            let mut witness = serde_json::to_string_pretty(&report).expect("reports serialize");
            witness.push('\n');
            let mut ok = true;
            let mut detail = format!("{} fields", report.entries.len());
            if let Some(count) = entries {
                ok &= report.entries.len() == *count;
            }
            if let Some(target) = isomorphic_to {
                let target = NumberField::parse(target)?;
                for en in &report.entries {
                    ok &= fields_isomorphic(&NumberField::parse(&en.field)?, &target)?;
                }
            }
            if let Some(expect) = untwisted_torsion {
                let want = group(expect)?;
                let untwisted: Vec<_> = report.entries.iter().filter(|en| en.twist.is_none()).collect();
                ok &= !untwisted.is_empty();
                for en in untwisted {
                    let k = NumberField::parse(&en.field)?;
                    let tc = torsion_over_k(&e, &k)?;
                    let _ = write!(witness, "{}", tc.report(&k).to_text());
                    let _ = write!(detail, "; {} over {}", tc.group, k.literal());
                    ok &= tc.group == want;
                }
            }
            Ok(Outcome::new(ok, detail, witness))
        }
        Check::Decomposition { curve, d, n, expect } => {
            let e = resolve_curve(curve, db)?;
            let got = quadratic_decomposition_check(&e, &(*d).into(), *n)?;
            let witness = format!("curve: {}\nd: {d}\nn: {n}\nholds: {got}\n", e.literal());
            Ok(Outcome::new(got == *expect, format!("decomposition holds = {got}"), witness))
        }
    }
}
