//! The `kf` command line: argument parsing, input resolution, and output formatting.

pub mod catalog;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::diagram::{parse_pd, BraidWord, PlanarDiagram, RationalSlope, TangleTemplate};
use crate::error::{Error, Result};
use crate::kappa::{kappa_auto, AutoOptions, FamilyOptions};
use crate::khovanov::{kh_table, table::grid_latex, Engine, KhOptions};
use crate::lspace::{alexander, big_json, determinant, formal_semigroup, invariants_json, is_lspace_form};
pub use catalog::{Catalog, CatalogEntry, Fixture, Provenance};

#[derive(Parser, Debug)]
#[command(name = "kf", version, about = "Reduced Khovanov homology, tangle fillings and the kappa invariant")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Generator budget for a single homology computation.
    #[arg(long, global = true)]
    pub max_generators: Option<usize>,
    /// `scan` (default) or the full `cube` of resolutions.
    #[arg(long, global = true, default_value = "scan")]
    pub engine: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Input {
    /// PD code file (JSON object, bare array, or `PD[X[...]]`).
    #[arg(long, group = "src")]
    pub pd: Option<PathBuf>,
    /// Braid word such as "1,1,1" or "(2,1,3,2)^3,1,2,3,3,2".
    #[arg(long, group = "src", allow_hyphen_values = true)]
    pub braid: Option<String>,
    /// Built-in or external catalog entry.
    #[arg(long, group = "src")]
    pub catalog: Option<String>,
    /// Tangle template file.
    #[arg(long, group = "src")]
    pub template: Option<PathBuf>,
    /// Filling slope `p/q`, an integer, or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    pub slope: Option<String>,
    /// Mirror the diagram (or every filling of a template).
    #[arg(long)]
    pub mirror: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Khovanov homology table.
    Kh(Input),
    /// Khovanov width.
    Width(Input),
    /// κ-invariant of a template's filling family.
    Kappa {
        #[command(flatten)]
        input: Input,
        /// Initial range `LO..HI`; widened automatically when needed.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// Normalized Alexander polynomial.
    Alexander(Input),
    /// Determinant.
    Det(Input),
    /// Formal semigroup of an L-space-form Alexander polynomial.
    Semigroup(Input),
    /// Check the filling conventions of a template.
    Validate(Input),
    /// Check every catalog fixture.
    Selftest,
    /// List catalog entries.
    Catalog,
}

/// Output of one command: the rendered text and whether the command succeeded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, success: true }
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Result<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            return Ok(Outcome::ok(e.to_string()));
        }
        Err(e) => return Err(Error::Parse(e.to_string())),
    };
    execute(&cli, &Catalog::from_env()?)
}

/// Run a parsed command against a catalog, inside a pool of `--threads` workers.
pub fn execute(cli: &Cli, catalog: &Catalog) -> Result<Outcome> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Parse("--threads must be at least 1".into()));
        }
        b = b.num_threads(n);
    }
    let pool = b.build().map_err(|e| Error::Unsupported(e.to_string()))?;
    pool.install(|| dispatch(cli, catalog))
}

fn kh_options(cli: &Cli) -> Result<KhOptions> {
    let mut o = KhOptions { engine: cli.engine.parse::<Engine>()?, ..KhOptions::default() };
    if let Some(m) = cli.max_generators {
        o.max_generators = m;
    }
    Ok(o)
}

fn json_out(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// `LO..HI` with `LO < HI`.
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s.split_once("..").ok_or_else(|| Error::Parse(format!("range {s:?} is not LO..HI")))?;
    let lo: i64 = a.trim().parse().map_err(|_| Error::Parse(format!("bad range start {a:?}")))?;
    let hi: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| Error::Parse(format!("bad range end {b:?}")))?;
    if lo >= hi {
        return Err(Error::Parse(format!("range {s:?} must have LO < HI")));
    }
    Ok((lo, hi))
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// A template with the mirror flag its fillings should use.
struct TemplateInput {
    template: TangleTemplate,
    mirror: bool,
    guess: i64,
}

fn resolve_template(inp: &Input, catalog: &Catalog) -> Result<Option<TemplateInput>> {
    if let Some(p) = &inp.template {
        let t = TangleTemplate::from_json(&read(p)?)?;
        let guess = t.framing;
        return Ok(Some(TemplateInput { template: t, mirror: inp.mirror, guess }));
    }
    if let Some(name) = &inp.catalog {
        let e = catalog.get(name)?;
        if let Some(t) = &e.template {
            return Ok(Some(TemplateInput {
                template: t.clone(),
                mirror: e.mirror_template ^ inp.mirror,
                guess: e.n_guess.unwrap_or(t.framing),
            }));
        }
    }
    Ok(None)
}

fn require_template(inp: &Input, catalog: &Catalog) -> Result<TemplateInput> {
    resolve_template(inp, catalog)?
        .ok_or_else(|| Error::Parse("this command needs a tangle template (--template FILE or --catalog NAME)".into()))
}

/// The diagram named by the input flags, with its display name.
fn resolve_diagram(inp: &Input, catalog: &Catalog) -> Result<(String, PlanarDiagram)> {
    if let Some(s) = &inp.slope {
        let r: RationalSlope = s.parse()?;
        let ti = require_template(inp, catalog)?;
        let d = match r.as_integer() {
            Some(n) => ti.template.fill_coherent(n)?,
            None => ti.template.fill(r)?,
        };
        let d = if ti.mirror { d.mirror() } else { d };
        return Ok((format!("{}({r})", ti.template.name), d));
    }
    let (name, d) = if let Some(p) = &inp.pd {
        let nd = parse_pd(&read(p)?)?;
        (nd.name.unwrap_or_else(|| p.display().to_string()), nd.diagram)
    } else if let Some(b) = &inp.braid {
        (format!("braid {b}"), b.parse::<BraidWord>()?.closure())
    } else if let Some(c) = &inp.catalog {
        let e = catalog.get(c)?;
        let d = e.diagram().ok_or_else(|| {
            Error::Parse(format!("catalog entry {} is a template; pass --slope to choose a filling", e.name))
        })?;
        (e.name.clone(), d)
    } else if inp.template.is_some() {
        return Err(Error::Parse("a template needs --slope to choose a filling".into()));
    } else {
        return Err(Error::Parse("no input: pass --pd, --braid, --catalog or --template".into()));
    };
    Ok(if inp.mirror { (format!("mirror of {name}"), d.mirror()) } else { (name, d) })
}

fn dispatch(cli: &Cli, catalog: &Catalog) -> Result<Outcome> {
    match &cli.command {
        Command::Kh(inp) => {
            let (name, d) = resolve_diagram(inp, catalog)?;
            let t = kh_table(&d, &name, &kh_options(cli)?)?;
            Ok(Outcome::ok(match cli.format {
                Format::Json => json_out(&t.to_json()),
                Format::Latex => t.render_latex(),
                Format::Text => format!(
                    "{name}: {} crossings, dim {}, width {}\n{}",
                    d.num_crossings(),
                    t.total_dim(),
                    t.width().map_or("-".into(), |w| w.to_string()),
                    t.render_text()
                ),
            }))
        }
        Command::Width(inp) => {
            let (name, d) = resolve_diagram(inp, catalog)?;
            let t = kh_table(&d, &name, &kh_options(cli)?)?;
            let w = t.width()?;
            Ok(Outcome::ok(match cli.format {
                Format::Json => json_out(&json!({"format": "kf-1", "link": name, "width": w, "thin": w == 1})),
                Format::Latex => format!("$w_{{Kh}}(\\text{{{name}}}) = {w}$\n"),
                Format::Text => format!("{name}: width {w}{}\n", if w == 1 { " (thin)" } else { "" }),
            }))
        }
        Command::Kappa { input, range } => cmd_kappa(cli, catalog, input, range.as_deref()),
        Command::Alexander(inp) => {
            let (name, d) = resolve_diagram(inp, catalog)?;
            let a = alexander(&d)?;
            Ok(Outcome::ok(match cli.format {
                Format::Json => json_out(&json!({"format": "kf-1", "link": name, "alexander": a.to_json(), "lspace_form": is_lspace_form(&a)})),
                Format::Latex => format!("$\\Delta(t) = {}$\n", a.poly().render("t")),
                Format::Text => format!("{name}: Δ(t) = {}\n", a.poly().render("t")),
            }))
        }
        Command::Det(inp) => {
            let (name, d) = resolve_diagram(inp, catalog)?;
            let det = determinant(&d);
            Ok(Outcome::ok(match cli.format {
                Format::Json => json_out(&json!({"format": "kf-1", "link": name, "det": big_json(&det)})),
                Format::Latex => format!("$\\det(\\text{{{name}}}) = {det}$\n"),
                Format::Text => format!("{det}\n"),
            }))
        }
        Command::Semigroup(inp) => {
            let (name, d) = resolve_diagram(inp, catalog)?;
            let a = alexander(&d)?;
            let s = formal_semigroup(&a)?;
            let v = invariants_json(&d, &name)?;
            Ok(Outcome::ok(match cli.format {
                Format::Json => json_out(&v),
                _ => format!(
                    "{name}: Δ(t) = {}\nelements below {}: {:?}\nis_semigroup: {}\n",
                    a.poly().render("t"),
                    s.threshold,
                    s.elements_below(),
                    crate::lspace::is_actual_semigroup(&s)
                ),
            }))
        }
        Command::Validate(inp) => {
            let ti = require_template(inp, catalog)?;
            let r = ti.template.validate();
            let passed = r.passed();
            let output = match cli.format {
                Format::Json => json_out(&json!({"format": "kf-1", "template": r.template, "passed": passed, "checks": r.checks})),
                _ => {
                    let mut s = format!("template {}\n", r.template);
                    for c in &r.checks {
                        s.push_str(&format!("  [{}] {}: {}\n", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail));
                    }
                    s
                }
            };
            Ok(Outcome { output, success: passed })
        }
        Command::Selftest => {
            let report = selftest(catalog, &kh_options(cli)?);
            let passed = report["passed"].as_bool().unwrap_or(false);
            let output = match cli.format {
                Format::Json => json_out(&report),
                _ => {
                    let mut s = String::new();
                    for c in report["checks"].as_array().into_iter().flatten() {
                        s.push_str(&format!(
                            "[{}] {} {}: expected {}, got {}\n",
                            if c["passed"].as_bool() == Some(true) { "pass" } else { "FAIL" },
                            c["entry"].as_str().unwrap_or(""),
                            c["check"].as_str().unwrap_or(""),
                            c["expected"],
                            c["actual"]
                        ));
                    }
                    s.push_str(&format!("{} checks, {} failed\n", report["total"], report["failed"]));
                    s
                }
            };
            Ok(Outcome { output, success: passed })
        }
        Command::Catalog => {
            let v: Vec<Value> = catalog.entries().iter().map(CatalogEntry::summary_json).collect();
            Ok(Outcome::ok(match cli.format {
                Format::Json => json_out(&json!({"format": "kf-1", "entries": v})),
                _ => catalog.names().iter().map(|(n, d)| format!("{n:<14} {d}\n")).collect(),
            }))
        }
    }
}

fn cmd_kappa(cli: &Cli, catalog: &Catalog, inp: &Input, range: Option<&str>) -> Result<Outcome> {
    let ti = require_template(inp, catalog)?;
    let (lo, hi) = match range {
        Some(r) => parse_range(r)?,
        None => (ti.guess - 5, ti.guess + 5),
    };
    let opts = AutoOptions {
        family: FamilyOptions { kh: kh_options(cli)?, mirror: ti.mirror },
        ..AutoOptions::default()
    };
    let (k, p, fam) = kappa_auto(&ti.template, lo, hi, &opts)?;
    let widths: BTreeMap<i64, Option<i64>> = fam.tables.iter().map(|(&n, t)| (n, t.width().ok())).collect();
    let dims: BTreeMap<i64, usize> = fam.tables.iter().map(|(&n, t)| (n, t.total_dim())).collect();
    Ok(Outcome::ok(match cli.format {
        Format::Json => {
            let mut v = k.to_json();
            v["pattern"] = json!(p.pattern);
            v["widths"] = json!(widths.iter().map(|(n, w)| (n.to_string(), json!(w))).collect::<serde_json::Map<_, _>>());
            v["dims"] = json!(dims.iter().map(|(n, d)| (n.to_string(), json!(d))).collect::<serde_json::Map<_, _>>());
            json_out(&v)
        }
        Format::Latex => grid_latex(&k.entries, &format!("kappa({}), N = {}", k.template, k.n)),
        Format::Text => {
            let mut s = k.render_text();
            s.push_str(&format!("\nsteps f_{}..f_{}: {}\n", fam.lo + 1, fam.hi, p.pattern));
            s.push_str(" n   dim  width\n");
            for (n, d) in &dims {
                s.push_str(&format!("{n:>3} {d:>5} {:>6}\n", widths[n].map_or("-".into(), |w| w.to_string())));
            }
            s
        }
    }))
}

/// Check every fixture of every built-in entry. The report holds no timings, so
/// repeated runs produce identical JSON.
pub fn selftest(catalog: &Catalog, kh: &KhOptions) -> Value {
    let mut checks: Vec<Value> = vec![];
    let mut push = |entry: &str, check: &str, expected: &Value, actual: Value, prov: Provenance| {
        let passed = &actual == expected;
        checks.push(json!({
            "entry": entry, "check": check, "expected": expected, "actual": actual,
            "provenance": prov, "passed": passed,
        }));
    };
    let err = |e: Error| json!({"error": e.to_string()});
    for e in catalog.entries() {
        if e.fixtures.is_empty() {
            continue;
        }
        let d = e.diagram();
        let kh_tab = d.as_ref().map(|d| kh_table(d, &e.name, kh));
        let kap = e.template.as_ref().filter(|_| e.fixtures.iter().any(|f| f.key.starts_with("kappa") || f.key == "N")).map(|t| {
            let g = e.n_guess.unwrap_or(t.framing);
            let opts = AutoOptions { family: FamilyOptions { kh: *kh, mirror: e.mirror_template }, ..AutoOptions::default() };
            kappa_auto(t, g - 5, g + 5, &opts).map(|r| r.0)
        });
        if let Some(t) = &e.template {
            let r = t.validate();
            push(&e.name, "validate", &json!(true), json!(r.passed()), Provenance::Paper);
        }
        for f in &e.fixtures {
            let actual = match f.key.as_str() {
                "crossings" => d.as_ref().map(|d| json!(d.num_crossings())).unwrap_or(Value::Null),
                "kh_dim" => match &kh_tab {
                    Some(Ok(t)) => json!(t.total_dim()),
                    Some(Err(x)) => err(x.clone()),
                    None => Value::Null,
                },
                "width" => match &kh_tab {
                    Some(Ok(t)) => t.width().map(|w| json!(w)).unwrap_or_else(err),
                    Some(Err(x)) => err(x.clone()),
                    None => Value::Null,
                },
                "det" => d.as_ref().map(|d| big_json(&determinant(d))).unwrap_or(Value::Null),
                "lspace_form" => d.as_ref().map(|d| alexander(d).map(|a| json!(is_lspace_form(&a))).unwrap_or_else(err)).unwrap_or(Value::Null),
                "semigroup" => d
                    .as_ref()
                    .map(|d| {
                        alexander(d)
                            .and_then(|a| formal_semigroup(&a))
                            .map(|s| json!(crate::lspace::is_actual_semigroup(&s)))
                            .unwrap_or_else(err)
                    })
                    .unwrap_or(Value::Null),
                k if k.starts_with("det_") => {
                    let slope = &k[4..];
                    match (e.template.as_ref(), slope.parse::<RationalSlope>()) {
                        (Some(t), Ok(r)) => t.fill(r).map(|d| big_json(&determinant(&d))).unwrap_or_else(err),
                        _ => Value::Null,
                    }
                }
                "N" | "kappa" | "kappa_width" | "kappa_dim" => match &kap {
                    Some(Ok(k)) => match f.key.as_str() {
                        "N" => json!(k.n),
                        "kappa" => crate::khovanov::table::entries_json(&k.entries),
                        "kappa_width" => k.width().map(|w| json!(w)).unwrap_or_else(err),
                        _ => json!(k.total_dim()),
                    },
                    Some(Err(x)) => err(x.clone()),
                    None => Value::Null,
                },
                _ => json!({"error": "unknown fixture"}),
            };
            push(&e.name, &f.key, &f.value, actual, f.provenance);
        }
    }
    let failed = checks.iter().filter(|c| c["passed"] != json!(true)).count();
    json!({
        "format": "kf-1",
        "command": "selftest",
        "total": checks.len(),
        "failed": failed,
        "passed": failed == 0,
        "checks": checks,
    })
}
