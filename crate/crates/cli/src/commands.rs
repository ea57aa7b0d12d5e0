//! The computational subcommands. Each returns human-readable text and a
//! JSON value; `main` prints whichever the user asked for.

use serde_json::{json, Value};
use torsion_core::arith::factor::factor_over_q;
use torsion_core::arith::parse::parse_poly;
use torsion_core::arith::rational::{parse_rational, rational_text, Rational};
use torsion_core::curve::EllipticCurve;
use torsion_core::divpoly::psi;
use torsion_core::families::{curve_from_j, family_curve, CurveDb, FamilySpec, FamilyValue};
use torsion_core::numfield::NumberField;
use torsion_core::torsion::{division_polynomial_method, torsion_over_k, torsion_over_q, twist_search, BaseField, Rationals};

use crate::{resolve_curve, CliError};

/// Text and JSON renderings of a command result.
pub struct Output {
    pub text: String,
    pub json: Value,
}

fn parse_rational_arg(name: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Usage(format!("{name}: not a rational number: {s:?}")))
}

fn short_curve(e: &EllipticCurve<Rational>) -> EllipticCurve<Rational> {
    e.short_model().0
}

/// `torsion --curve C --field F`.
pub fn torsion(db: &CurveDb, curve: &str, field: &str) -> Result<Output, CliError> {
    let e = resolve_curve(curve, db)?;
    let k = NumberField::parse(field)?;
    let report = if k.degree() == 1 {
        torsion_over_q(&e)?.report(&Rationals)
    } else {
        torsion_over_k(&e, &k)?.report(&k)
    };
    let json = serde_json::to_value(&report).expect("reports serialize");
    Ok(Output { text: report.to_text(), json })
}

/// `psi --curve C --n N`: ψₙ of the short model.
pub fn psi_cmd(db: &CurveDb, curve: &str, n: u64) -> Result<Output, CliError> {
    let e = resolve_curve(curve, db)?;
    let short = short_curve(&e);
    let p = psi(&short, n)?;
    let text = p.poly.to_text("x");
    let json = json!({
        "curve": e.literal(),
        "short_model": short.literal(),
        "n": n,
        "degree": p.degree(),
        "psi": text,
    });
    Ok(Output { text, json })
}

/// `factor --poly P`: irreducible factorization over ℚ.
pub fn factor(poly: &str) -> Result<Output, CliError> {
    let f = parse_poly(poly)?;
    if f.is_zero() {
        return Err(CliError::Usage("cannot factor the zero polynomial".into()));
    }
    let fac = factor_over_q(&f);
    let mut lines = Vec::new();
    let unit = rational_text(&fac.unit);
    if unit != "1" {
        lines.push(format!("unit: {unit}"));
    }
    let mut factors = Vec::new();
    for (g, m) in &fac.factors {
        let t = g.to_text("x");
        lines.push(if *m == 1 { t.clone() } else { format!("{t} ^{m}") });
        factors.push(json!({ "factor": t, "multiplicity": m, "degree": g.deg() }));
    }
    let json = json!({ "poly": f.to_text("x"), "unit": unit, "factors": factors });
    Ok(Output { text: lines.join("\n"), json })
}

/// `family --name F --t T`.
pub fn family(name: &str, t: &str) -> Result<Output, CliError> {
    let fam: FamilySpec = name.parse()?;
    let t = parse_rational_arg("--t", t)?;
    match family_curve(fam, &t)? {
        FamilyValue::Curve(e) => {
            let text = e.literal();
            let json = json!({ "family": fam.name(), "t": rational_text(&t), "curve": text, "j": rational_text(e.j_invariant()) });
            Ok(Output { text, json })
        }
        FamilyValue::J(j) => {
            let model = curve_from_j(&j).literal();
            let text = format!("j = {}\nmodel: {model}", rational_text(&j));
            let json = json!({ "family": fam.name(), "t": rational_text(&t), "j": rational_text(&j), "curve": model });
            Ok(Output { text, json })
        }
    }
}

/// `twist-search --curve C --field F --n N` (curve may also be given by j).
pub fn twist_search_cmd(db: &CurveDb, curve: Option<&str>, j: Option<&str>, field: &str, n: u64) -> Result<Output, CliError> {
    let e = match (curve, j) {
        (Some(c), None) => resolve_curve(c, db)?,
        (None, Some(j)) => curve_from_j(&parse_rational_arg("--j", j)?),
        _ => return Err(CliError::Usage("give exactly one of --curve and --j".into())),
    };
    let k = NumberField::parse(field)?;
    let rows: Vec<(String, String, String, String)> = if k.degree() == 1 {
        render_classes(&Rationals, twist_search(&e, &Rationals, n)?)
    } else {
        render_classes(&k, twist_search(&e, &k, n)?)
    };
    let mut lines = vec![format!("curve: {}", e.literal()), format!("classes: {}", rows.len())];
    let mut classes = Vec::new();
    for (delta, twist, x, y) in rows {
        lines.push(format!("delta: {delta} twist: {twist} point: ({x}, {y})"));
        classes.push(json!({ "delta": delta, "twist": twist, "x": x, "y": y }));
    }
    let json = json!({ "curve": e.literal(), "field": k.literal(), "n": n, "classes": classes });
    Ok(Output { text: lines.join("\n"), json })
}

fn render_classes<B: BaseField>(bf: &B, classes: Vec<torsion_core::torsion::TwistClass<B::Elem>>) -> Vec<(String, String, String, String)> {
    classes
        .iter()
        .map(|c| {
            let coeffs: Vec<String> = c.twist.a_invariants().iter().map(|a| bf.text(a)).collect();
            let (x, y) = match (c.point.x(), c.point.y()) {
                (Some(x), Some(y)) => (bf.text(x), bf.text(y)),
                _ => ("inf".into(), "inf".into()),
            };
            (bf.text(&c.delta), format!("[{}]", coeffs.join(",")), x, y)
        })
        .collect()
}

/// `growth --curve C --n N --d D`: the division polynomial method.
pub fn growth(db: &CurveDb, curve: &str, n: u64, d: usize) -> Result<Output, CliError> {
    let e = resolve_curve(curve, db)?;
    let report = division_polynomial_method(&e, n, d)?;
    let mut lines = vec![
        format!("curve: {}", report.curve),
        format!("short model: {}", report.short_model),
        format!("fields: {}", report.entries.len()),
    ];
    for en in &report.entries {
        let twist = en.twist.as_deref().map_or_else(|| "none".to_string(), str::to_string);
        lines.push(format!(
            "field: {} degree: {} x-degree: {} twist: {} point: ({}, {})",
            en.field, en.degree, en.x_degree, twist, en.x, en.y
        ));
    }
    let json = serde_json::to_value(&report).expect("reports serialize");
    Ok(Output { text: lines.join("\n"), json })
}
