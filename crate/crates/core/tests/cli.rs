//! The command layer, driven in-process.

use std::path::PathBuf;

use clap::Parser;
use knotfill::cli::catalog::load_dir;
use knotfill::cli::{execute, run, Catalog, Cli};
use knotfill::khovanov::KhTable;
use serde_json::Value;

fn kf(args: &[&str]) -> knotfill::Result<knotfill::cli::Outcome> {
    run(std::iter::once("kf").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = kf(&a).unwrap();
    assert!(out.success, "{args:?}");
    serde_json::from_str(&out.output).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("kf-test-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn every_json_output_is_tagged() {
    for args in [
        &["kh", "--catalog", "trefoil"][..],
        &["width", "--braid", "1,1,1"],
        &["alexander", "--catalog", "fig8"],
        &["det", "--catalog", "T34"],
        &["semigroup", "--catalog", "T34"],
        &["validate", "--catalog", "T2"],
        &["kh", "--catalog", "trivial", "--slope", "5"],
    ] {
        assert_eq!(json(args)["format"], "kf-1", "{args:?}");
    }
}

#[test]
fn kh_json_round_trips() {
    let v = json(&["kh", "--catalog", "fig8"]);
    let t = KhTable::from_json(&v).unwrap();
    assert_eq!(t.total_dim(), 5);
    assert_eq!(t.to_json(), v);
}

#[test]
fn text_and_latex_render() {
    let t = kf(&["kh", "--catalog", "trefoil"]).unwrap().output;
    assert!(t.contains("dim 3"), "{t}");
    let l = kf(&["kh", "--catalog", "trefoil", "--format", "latex"]).unwrap().output;
    assert!(l.contains("\\begin{tabular}"), "{l}");
    assert_eq!(kf(&["det", "--catalog", "fig8"]).unwrap().output, "5\n");
}

#[test]
fn mirror_flag_negates_gradings() {
    let a = KhTable::from_json(&json(&["kh", "--braid", "1,1,1"])).unwrap();
    let b = KhTable::from_json(&json(&["kh", "--braid", "1,1,1", "--mirror"])).unwrap();
    assert_eq!(a.negated().entries(), b.entries());
}

#[test]
fn rational_slopes_of_the_templates() {
    assert_eq!(kf(&["det", "--catalog", "T1", "--slope", "0/19"]).unwrap().output, "0\n");
    assert_eq!(kf(&["det", "--catalog", "T1", "--slope", "inf"]).unwrap().output, "1\n");
    assert_eq!(kf(&["det", "--catalog", "T2", "--slope", "33/2"]).unwrap().output, "33\n");
    assert_eq!(json(&["width", "--catalog", "K2", "--slope", "31/2"])["width"], 2);
}

#[test]
fn kappa_of_the_trivial_tangle() {
    let v = json(&["kappa", "--catalog", "trivial", "--range", "-3..3"]);
    assert_eq!(v["N"], 0);
    assert_eq!(v["total_dim"], 0);
}

#[test]
fn user_errors_are_errors() {
    assert!(kf(&["semigroup", "--catalog", "fig8"]).is_err());
    assert!(kf(&["kh", "--pd", "/nonexistent/file.json"]).is_err());
    assert!(kf(&["kh", "--catalog", "no-such-knot"]).is_err());
    assert!(kf(&["kh", "--catalog", "T1"]).is_err());
    assert!(kf(&["kappa", "--catalog", "T2", "--range", "5..5"]).is_err());
    assert!(kf(&["kh", "--braid", "1,1,1", "--threads", "0"]).is_err());
    assert!(kf(&["frobnicate"]).is_err());
    assert!(kf(&["kh", "--braid", "1,2,1,2,1,2,1,2,1,2", "--max-generators", "4"]).is_err());
    assert!(kf(&["--help"]).unwrap().success);
}

#[test]
fn validate_reports_each_check() {
    let v = json(&["validate", "--catalog", "T1"]);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 5);
}

#[test]
fn pd_files_are_read() {
    let d = scratch("pd");
    let f = d.join("hopf.json");
    std::fs::write(&f, r#"{"name": "hopf", "pd": [[4,1,3,2],[2,3,1,4]]}"#).unwrap();
    let v = json(&["det", "--pd", f.to_str().unwrap()]);
    assert_eq!(v["det"], 2);
}

#[test]
fn external_catalog_directory() {
    let d = scratch("catalog");
    std::fs::write(d.join("knots.txt"), "# small knots\nmy-trefoil PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]\n").unwrap();
    std::fs::write(d.join("t.json"), serde_json::to_string(&knotfill::diagram::TangleTemplate::trivial().to_json()).unwrap())
        .unwrap();
    let extra = load_dir(&d).unwrap();
    assert_eq!(extra.len(), 2);
    let mut cat = Catalog::builtin();
    let before = cat.entries().len();
    cat.extend(extra);
    assert_eq!(cat.entries().len(), before + 1, "the template reuses a built-in name");
    let cli = Cli::parse_from(["kf", "det", "--catalog", "MY-TREFOIL"]);
    assert_eq!(execute(&cli, &cat).unwrap().output, "3\n");
}

#[test]
fn selftest_is_deterministic() {
    let a = kf(&["selftest", "--format", "json", "--threads", "1"]).unwrap();
    let b = kf(&["selftest", "--format", "json", "--threads", "8"]).unwrap();
    assert!(a.success, "{}", a.output);
    assert_eq!(a.output, b.output);
    let v: Value = serde_json::from_str(&a.output).unwrap();
    assert_eq!(v["format"], "kf-1");
    assert_eq!(v["failed"], 0);
}
