use std::process::{Command, Output};

use torsion_core::curve::parse_curve_literal;
use torsion_core::torsion::{torsion_over_q, Rationals, TorsionReport};

fn torsion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsion")).args(args).env_remove("TORSION_CURVE_DB").output().expect("binary runs")
}

fn torsion_env(args: &[&str], db: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsion")).args(args).env("TORSION_CURVE_DB", db).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON on stdout")
}

#[test]
fn psi_prints_the_polynomial() {
    let o = torsion(&["psi", "--curve", "[0,1]", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "3*x^4+12*x");
}

#[test]
fn family_prints_the_curve() {
    let o = torsion(&["family", "--name", "tate5", "--t", "1"]);
    assert_eq!(stdout(&o).trim(), "[0,-1,-1,0,0]");
    let o = torsion(&["family", "--name", "tate7", "--t", "1"]);
    assert_eq!(code(&o), 2);
    let o = torsion(&["family", "--name", "tate6", "--t", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn factor_lists_irreducible_factors() {
    let o = torsion(&["factor", "--poly", "x^4-1"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines, ["x-1", "x+1", "x^2+1"]);
}

#[test]
fn torsion_over_cubic_field_by_label() {
    let o = torsion(&["torsion", "--curve", "162B1", "--field", "x^3-3*x^2+3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "group: Z/21Z"));
}

#[test]
fn torsion_over_q_matches_the_library() {
    let o = torsion(&["torsion", "--curve", "[0,0,0,-10395,444150]", "--field", "x", "--json"]);
    assert_eq!(code(&o), 0);
    let report = TorsionReport::from_json(&stdout(&o)).unwrap();
    let e = parse_curve_literal("[0,0,0,-10395,444150]").unwrap();
    assert_eq!(report, torsion_over_q(&e).unwrap().report(&Rationals));
    assert_eq!(report.invariants[0], 1);
}

#[test]
fn json_reports_round_trip_through_text() {
    let o = torsion(&["torsion", "--curve", "162B1", "--field", "x^3-3*x^2+3", "--json"]);
    let report = TorsionReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(TorsionReport::from_text(&report.to_text()).unwrap(), report);
    let text = torsion(&["torsion", "--curve", "162B1", "--field", "x^3-3*x^2+3"]);
    assert_eq!(TorsionReport::from_text(&stdout(&text)).unwrap(), report);
}

#[test]
fn every_subcommand_speaks_json() {
    let cases: [&[&str]; 7] = [
        &["torsion", "--curve", "[0,1]", "--json"],
        &["psi", "--curve", "[0,1]", "--n", "3", "--json"],
        &["factor", "--poly", "x^4-1", "--json"],
        &["family", "--name", "isog9_j", "--t", "1", "--json"],
        &["twist-search", "--j=-121945/32", "--n", "5", "--json"],
        &["growth", "--curve", "162B1", "--n", "7", "--d", "3", "--json"],
        &["verify", "--only", "gltm.galois-cubic", "--json"],
    ];
    for args in cases {
        let o = torsion(args);
        assert_eq!(code(&o), 0, "{args:?}");
        let v = json(&o);
        assert!(v.is_object(), "{args:?}");
    }
    let v = json(&torsion(&["factor", "--poly", "x^4-1", "--json"]));
    assert_eq!(v["factors"].as_array().unwrap().len(), 3);
    let v = json(&torsion(&["family", "--name", "isog9_j", "--t", "1", "--json"]));
    assert_eq!(v["j"], "12167/26");
    let v = json(&torsion(&["twist-search", "--j=-121945/32", "--n", "5", "--json"]));
    assert_eq!(v["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&torsion(&["torsion", "--curve", "[0,0,0,0,0]"])), 2);
    assert_eq!(code(&torsion(&["torsion", "--curve", "[1,2"])), 2);
    assert_eq!(code(&torsion(&["torsion", "--curve", "nosuchlabel"])), 2);
    assert_eq!(code(&torsion(&["torsion", "--curve", "[0,1]", "--field", "x^7-2"])), 2);
    assert_eq!(code(&torsion(&["bogus"])), 2);
    assert_eq!(code(&torsion(&["psi", "--curve", "[0,1]"])), 2);
    assert_eq!(code(&torsion(&["psi", "--curve", "[0,1]", "--n", "4"])), 2);
    assert_eq!(code(&torsion(&["verify", "--jobs", "0"])), 2);
    assert_eq!(code(&torsion(&["verify", "--only", "no-such-claim"])), 2);
    let o = torsion(&["torsion", "--curve", "[0,0,0,0,0]", "--json"]);
    assert_eq!(json(&o)["exit_code"], 2);
}

#[test]
fn verify_only_runs_the_selected_group() {
    let o = torsion(&["verify", "--only", "sporadic37", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let ids: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["sporadic37.divides", "sporadic37.witness", "sporadic37.1225H1-model"]);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["status"] == "verified"));
}

#[test]
fn full_suite_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("witnesses");
    let o = torsion(&["verify", "--jobs", "4", "--json", "--dump-dir", dump.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["skipped"], 0);
    for r in v["results"].as_array().unwrap() {
        let artifacts = r["artifacts"].as_array().unwrap();
        assert_eq!(artifacts.len(), 1, "{}", r["id"]);
        assert!(std::path::Path::new(artifacts[0].as_str().unwrap()).is_file());
    }
    let witness = std::fs::read_to_string(dump.join("gltm.21-torsion.txt")).unwrap();
    assert!(witness.contains("group: Z/21Z"));
}

#[test]
fn empty_database_skips_label_claims() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("empty.db");
    std::fs::write(&db, "# nothing here\n").unwrap();
    let o = torsion_env(&["verify", "--json"], &db);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["failed"], 0);
    for r in v["results"].as_array().unwrap() {
        let id = r["id"].as_str().unwrap();
        let status = r["status"].as_str().unwrap();
        let label_claim = ["gltm.21-torsion", "kvkl.50B1", "psi.21-factorization", "families.147B1-13-torsion"].contains(&id);
        if label_claim {
            assert_eq!(status, "skipped(missing-record)", "{id}");
        }
        if ["sporadic37.witness", "kvkl.15-torsion-sqrt5", "rank0.minus27", "gltm.galois-cubic"].contains(&id) {
            assert_eq!(status, "verified", "{id}");
        }
    }
}

#[test]
fn database_override_by_environment_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("mine.db");
    std::fs::write(&db, "# custom\nMY1|0,0,0,0,1|hand-entered y^2 = x^3 + 1\n").unwrap();
    let o = torsion_env(&["torsion", "--curve", "MY1"], &db);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("group: Z/6Z"));
    assert_eq!(code(&torsion_env(&["torsion", "--curve", "162B1"], &db)), 2);
    let o = torsion(&["--db", db.to_str().unwrap(), "torsion", "--curve", "MY1"]);
    assert_eq!(code(&o), 0);
    std::fs::write(&db, "broken line\n").unwrap();
    assert_eq!(code(&torsion_env(&["torsion", "--curve", "[0,1]"], &db)), 2);
}

#[test]
fn failing_claims_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("claims.toml");
    std::fs::write(
        &manifest,
        r#"
[[claim]]
id = "wrong"
group = "g"
anchor = "deliberately false"
description = "y^2 = x^3 + 1 does not have torsion Z/5Z"
check = { kind = "torsion", curve = "[0,1]", field = "x", expect = "Z/5Z" }

[[claim]]
id = "right"
group = "g"
anchor = "x"
description = "y^2 = x^3 + 1 has torsion Z/6Z"
check = { kind = "torsion", curve = "[0,1]", field = "x", expect = "Z/6Z" }
"#,
    )
    .unwrap();
    let o = torsion(&["verify", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("failed") && l.contains("wrong")));
    assert!(out.lines().any(|l| l.starts_with("verified") && l.contains("right")));
    let o = torsion(&["verify", "--manifest", manifest.to_str().unwrap(), "--only", "right", "--slow"]);
    assert_eq!(code(&o), 0);
    std::fs::write(&manifest, "[[claim]]\nid = 1\n").unwrap();
    assert_eq!(code(&torsion(&["verify", "--manifest", manifest.to_str().unwrap()])), 2);
}
