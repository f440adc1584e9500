//! Acceptance gate: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use knotfill::cli::catalog::{kappa_k1_expected, kappa_k2_expected};
use knotfill::cli::{run, Catalog};
use knotfill::diagram::{RationalSlope, TangleTemplate};
use knotfill::kappa::{kappa_auto, AutoOptions, FamilyOptions, FillingFamily};
use knotfill::khovanov::{jones_from_kh, kauffman_jones, kh_table, Engine, KhOptions, KhTable};
use knotfill::lspace::{alexander, determinant, formal_semigroup, is_actual_semigroup, series_members};
use num_traits::ToPrimitive;
use serde_json::Value;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn kf(args: &[&str]) -> std::result::Result<String, String> {
    let out = run(std::iter::once("kf").chain(args.iter().copied())).map_err(|e| e.to_string())?;
    ensure!(out.success, "kf {} reported failure", args.join(" "));
    Ok(out.output)
}

fn kf_json(args: &[&str]) -> std::result::Result<Value, String> {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&kf(&a)?).map_err(|e| e.to_string())
}

fn kh(d: &knotfill::diagram::PlanarDiagram) -> KhTable {
    kh_table(d, "", &KhOptions::default()).expect("homology")
}

struct Families {
    t1: (TangleTemplate, bool, FillingFamily),
    t2: (TangleTemplate, bool, FillingFamily),
}

fn families() -> std::result::Result<Families, String> {
    let cat = Catalog::builtin();
    let fam = |name: &str| {
        let e = cat.get(name).map_err(|e| e.to_string())?;
        let t = e.template.clone().ok_or("no template")?;
        let g = e.n_guess.unwrap_or(t.framing);
        let opts = AutoOptions { family: FamilyOptions { mirror: e.mirror_template, ..Default::default() }, ..Default::default() };
        let (_, _, f) = kappa_auto(&t, g - 5, g + 5, &opts).map_err(|e| e.to_string())?;
        Ok::<_, String>((t, e.mirror_template, f))
    };
    Ok(Families { t1: fam("K1")?, t2: fam("K2")? })
}

fn kappa_regression(name: &str, n: i64, expected: Value) -> Check {
    let start = Instant::now();
    let v = kf_json(&["kappa", "--catalog", name])?;
    let secs = start.elapsed().as_secs_f64();
    ensure!(v["format"] == "kf-1", "untagged JSON");
    ensure!(v["N"] == n, "N = {} (pattern {})", v["N"], v["pattern"]);
    ensure!(v["entries"] == expected, "table differs: {}", v["entries"]);
    Ok(format!("N = {n}, range {}, pattern {}, table exact, {secs:.1}s", v["range"], v["pattern"].as_str().unwrap_or("")))
}

fn widths(f: &Families) -> Check {
    let mut notes = vec![];
    for (t, mirror, fam) in [&f.t1, &f.t2] {
        ensure!(fam.tables.len() >= 10, "{}: only {} fillings", t.name, fam.tables.len());
        for (n, tab) in &fam.tables {
            ensure!(tab.width() == Ok(2), "{}({n}) has width {:?}", t.name, tab.width());
        }
        let mut rational = vec![];
        for p in [fam.lo * 2 + 1, fam.hi * 2 - 1] {
            let r = RationalSlope::new(p, 2).map_err(|e| e.to_string())?;
            let d = t.fill(r).map_err(|e| e.to_string())?;
            let d = if *mirror { d.mirror() } else { d };
            let w = kh(&d).width();
            ensure!(w == Ok(2), "{}({r}) has width {w:?}", t.name);
            rational.push(r.to_string());
        }
        notes.push(format!("{} n = {}..{} and {}", t.name, fam.lo, fam.hi, rational.join(", ")));
    }
    Ok(notes.join("; "))
}

fn triangle_steps(f: &Families) -> Check {
    let mut count = 0;
    for (t, _, fam) in [&f.t1, &f.t2] {
        for n in fam.lo + 1..=fam.hi {
            let (a, b) = (&fam.tables[&n], &fam.tables[&(n - 1)]);
            let (dh, dq) = fam.bidegrees[&n];
            ensure!(a.total_dim().abs_diff(b.total_dim()) == 1, "{}: dims {} and {} at n = {n}", t.name, a.total_dim(), b.total_dim());
            let mut diff: BTreeMap<(i32, i32), i64> = BTreeMap::new();
            for (&(h, q), &d) in a.entries() {
                *diff.entry((h + dh, q + dq)).or_default() += d as i64;
            }
            for (&k, &d) in b.entries() {
                *diff.entry(k).or_default() -= d as i64;
            }
            diff.retain(|_, d| *d != 0);
            ensure!(diff.len() == 1 && diff.values().all(|d| d.abs() == 1), "{}: f_{n} difference {diff:?}", t.name);
            count += 1;
        }
    }
    Ok(format!("{count} consecutive pairs, each differing by one generator in one bigrading"))
}

fn conventions(f: &Families) -> Check {
    for (t, _, _) in [&f.t1, &f.t2] {
        let zero = t.fill(RationalSlope::integer(0)).map_err(|e| e.to_string())?;
        let inf = t.fill(RationalSlope::infinity()).map_err(|e| e.to_string())?;
        ensure!(determinant(&zero) == 0u32.into(), "det {}(0) = {}", t.name, determinant(&zero));
        ensure!(determinant(&inf) == 1u32.into(), "det {}(inf) = {}", t.name, determinant(&inf));
        ensure!(kh(&inf).total_dim() == 1, "dim Kh {}(inf) = {}", t.name, kh(&inf).total_dim());
    }
    let (t1, _, fam) = &f.t1;
    let hi = fam.hi.max(30);
    for n in 12..=hi {
        let d = determinant(&t1.fill_integer(n).map_err(|e| e.to_string())?);
        ensure!(d.to_i64() == Some(n), "det T1({n}) = {d}");
    }
    Ok(format!("det(0) = 0, det(inf) = 1, dim Kh(inf) = 1 for T1 and T2; det T1(n) = n for 12 <= n <= {hi}"))
}

fn oracle_corpus() -> Check {
    let start = Instant::now();
    let corpus = common::corpus();
    ensure!(corpus.len() >= 25, "corpus has {} diagrams", corpus.len());
    let mut knots = 0;
    for (name, d) in &corpus {
        ensure!(d.num_crossings() <= 12, "{name} is too large");
        let j = kauffman_jones(d).map_err(|e| e.to_string())?;
        ensure!(jones_from_kh(&kh(d)) == j, "{name}: Jones mismatch");
        if d.num_components() == 1 {
            let a = alexander(d).map_err(|e| e.to_string())?;
            ensure!(determinant(d).to_u128() == Some(a.determinant()), "{name}: det mismatch");
            knots += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs <= 120.0, "took {secs:.1}s");
    Ok(format!("{} diagrams ({knots} knots), {secs:.1}s", corpus.len()))
}

fn small_knots() -> Check {
    let cat = Catalog::builtin();
    let cube = KhOptions { engine: Engine::Cube, ..KhOptions::default() };
    let mut seen = vec![];
    for (name, dim, width, det) in [("unknot", 1, 1, 1), ("trefoil", 3, 1, 3), ("trefoil-left", 3, 1, 3), ("fig8", 5, 1, 5)] {
        let d = cat.get(name).map_err(|e| e.to_string())?.diagram().ok_or("no diagram")?;
        let fast = kh(&d);
        let slow = kh_table(&d, name, &cube).map_err(|e| e.to_string())?;
        ensure!(fast.entries() == slow.entries(), "{name}: scan and cube disagree");
        ensure!(fast.total_dim() == dim && fast.width() == Ok(width), "{name}: dim {} width {:?}", fast.total_dim(), fast.width());
        ensure!(determinant(&d).to_u64() == Some(det), "{name}: det {}", determinant(&d));
        if name == "unknot" {
            ensure!(fast.entries().keys().eq([(0, 0)].iter()), "unknot support {:?}", fast.entries());
        }
        seen.push(format!("{name} {dim}"));
    }
    Ok(seen.join(", "))
}

fn semigroups() -> Check {
    let cat = Catalog::builtin();
    let mut out = vec![];
    for (name, expect) in [("K1", true), ("K2", true), ("trefoil", true), ("T34", true), ("P-2,3,7", false)] {
        let d = cat.get(name).map_err(|e| e.to_string())?.diagram().ok_or("no diagram")?;
        let a = alexander(&d).map_err(|e| e.to_string())?;
        let s = formal_semigroup(&a).map_err(|e| e.to_string())?;
        ensure!(is_actual_semigroup(&s) == expect, "{name}: is_semigroup {}", !expect);
        let g = a.genus_bound() as i64;
        let bound = 2 * g + 6;
        let formal: Vec<i64> = (0..bound).filter(|&x| s.contains(x)).collect();
        ensure!(formal == series_members(&a, bound), "{name}: membership differs from the series");
        out.push(format!("{name} {expect}"));
    }
    let p = formal_semigroup(&alexander(&cat.get("P-2,3,7").unwrap().diagram().unwrap()).unwrap()).unwrap();
    ensure!(!p.contains(6) && p.contains(3), "P(-2,3,7) should have 3 + 3 = 6 as a gap");
    Ok(out.join(", "))
}

fn performance(f: &Families) -> Check {
    let mut worst = (0.0f64, String::new());
    let mut smallest = usize::MAX;
    let mut count = 0;
    let mut diagrams = vec![];
    for (t, mirror, fam) in [&f.t1, &f.t2] {
        for n in fam.lo..=fam.hi {
            let d = t.fill_coherent(n).map_err(|e| e.to_string())?;
            diagrams.push((format!("{}({n})", t.name), if *mirror { d.mirror() } else { d }));
        }
    }
    diagrams.push(("T(2,15)".into(), TangleTemplate::trivial().fill_integer(15).map_err(|e| e.to_string())?));
    for (name, d) in diagrams {
        if d.num_crossings() < 15 {
            continue;
        }
        smallest = smallest.min(d.num_crossings());
        let start = Instant::now();
        kh_table(&d, &name, &KhOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        let secs = start.elapsed().as_secs_f64();
        if secs > worst.0 {
            worst = (secs, format!("{name}, {} crossings", d.num_crossings()));
        }
        count += 1;
    }
    ensure!(worst.0 <= 60.0, "{} took {:.1}s", worst.1, worst.0);
    Ok(format!("{count} family diagrams of at least {smallest} crossings, slowest {:.2}s ({})", worst.0, worst.1))
}

fn determinism() -> Check {
    let a = kf(&["selftest", "--format", "json"])?;
    let b = kf(&["selftest", "--format", "json"])?;
    let one = kf(&["selftest", "--format", "json", "--threads", "1"])?;
    let eight = kf(&["selftest", "--format", "json", "--threads", "8"])?;
    ensure!(a == b, "two runs differ");
    ensure!(one == eight, "--threads 1 and --threads 8 differ");
    ensure!(a == one, "default thread count differs");
    let v: Value = serde_json::from_str(&a).map_err(|e| e.to_string())?;
    Ok(format!("{} checks, byte-identical across 4 runs", v["total"]))
}

fn guarded(f: impl FnOnce() -> Check) -> Check {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
    })
}

fn main() {
    let fams = catch_unwind(families).unwrap_or_else(|_| Err("panic while computing".into()));
    let with = |g: fn(&Families) -> Check| match &fams {
        Ok(f) => guarded(|| g(f)),
        Err(e) => Err(format!("filling families unavailable: {e}")),
    };
    let results: Vec<(&str, Check)> = vec![
        ("kappa K1", guarded(|| kappa_regression("K1", 20, kappa_k1_expected()))),
        ("kappa K2", guarded(|| kappa_regression("K2", 16, kappa_k2_expected()))),
        ("width 2", with(widths)),
        ("triangle steps", with(triangle_steps)),
        ("conventions", with(conventions)),
        ("oracle corpus", guarded(oracle_corpus)),
        ("small knots", guarded(small_knots)),
        ("semigroups", guarded(semigroups)),
        ("performance", with(performance)),
        ("determinism", guarded(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
