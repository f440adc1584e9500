//! Named diagrams, braids and templates with their expected invariants.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::diagram::{inversion_quotient, parse_pd, BraidWord, Handedness, PlanarDiagram, TangleTemplate};
use crate::error::{Error, Result};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the source literature.
    Paper,
    /// Re-derived here by an independent computation.
    Derived,
    /// Immediate from the definitions.
    Trivial,
}

/// An expected invariant of a catalog entry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fixture {
    pub key: String,
    pub value: Value,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub braid: Option<BraidWord>,
    pub pd: Option<PlanarDiagram>,
    pub template: Option<TangleTemplate>,
    /// Fillings of the template are mirrored to match the knot's chirality.
    pub mirror_template: bool,
    /// Initial guess for the transition index.
    pub n_guess: Option<i64>,
    pub fixtures: Vec<Fixture>,
}

impl CatalogEntry {
    fn new(name: &str, description: &str) -> Self {
        CatalogEntry {
            name: name.into(),
            description: description.into(),
            braid: None,
            pd: None,
            template: None,
            mirror_template: false,
            n_guess: None,
            fixtures: vec![],
        }
    }

    fn braid(mut self, word: &str, strands: usize) -> Self {
        self.braid = Some(BraidWord::parse_shorthand(word, Some(strands)).expect("catalog braid"));
        self
    }

    fn template(mut self, t: TangleTemplate, mirror: bool, guess: i64) -> Self {
        self.template = Some(t);
        self.mirror_template = mirror;
        self.n_guess = Some(guess);
        self
    }

    fn fix(mut self, key: &str, value: Value, provenance: Provenance) -> Self {
        self.fixtures.push(Fixture { key: key.into(), value, provenance });
        self
    }

    /// The closed diagram of this entry, if it has one.
    pub fn diagram(&self) -> Option<PlanarDiagram> {
        self.pd.clone().or_else(|| self.braid.as_ref().map(BraidWord::closure))
    }

    pub fn fixture(&self, key: &str) -> Option<&Value> {
        self.fixtures.iter().find(|f| f.key == key).map(|f| &f.value)
    }

    pub fn summary_json(&self) -> Value {
        json!({
            "name": self.name,
            "description": self.description,
            "braid": self.braid.as_ref().map(|b| json!({"strands": b.strands, "word": b.letters})),
            "template": self.template.as_ref().map(|t| t.name.clone()),
            "mirror_template": self.mirror_template,
            "fixtures": self.fixtures,
        })
    }
}

/// Template of the first knot, shipped as data.
pub fn template_t1() -> TangleTemplate {
    TangleTemplate::from_json(include_str!("../../data/t1.json")).expect("bundled template")
}

/// The same tangle as [`template_t1`], before simplification.
pub fn template_t1_plat() -> TangleTemplate {
    let mut t = TangleTemplate::new("T1", inversion_quotient((1, 1), &[2, 2, 1, 2, 3, 2, 2, 3], -1), Handedness::Right, 18);
    t.provenance = Some("quotient tangle of K1 by its strong inversion, from symmetric braid data".into());
    t
}

pub fn template_t2() -> TangleTemplate {
    let mut t = TangleTemplate::new("T2", inversion_quotient((1, 1), &[2, 2, 3, 1, 2, 2, 1], -1), Handedness::Right, 16);
    t.provenance = Some("quotient tangle of K2 by its strong inversion, from symmetric braid data".into());
    t
}

fn entries_of(rows: &[(i32, i32, usize)]) -> Value {
    json!(rows.iter().map(|&(h, q, dim)| json!({"h": h, "q": q, "dim": dim})).collect::<Vec<_>>())
}

/// Grid rows of a κ table as `(h, q, dim)`, from `δ` rows given as `(δ, first h, dims)`.
fn kappa_rows(rows: &[(i32, &[i32], &[usize])]) -> Value {
    let mut out = vec![];
    for &(d, hs, dims) in rows {
        for (&h, &dim) in hs.iter().zip(dims) {
            out.push((h, d + 2 * h, dim));
        }
    }
    out.sort();
    entries_of(&out)
}

/// κ of the first knot.
pub fn kappa_k1_expected() -> Value {
    kappa_rows(&[
        (17, &[-9, -8, -7, -6, -5, -4, -3, -2, -1], &[1, 2, 3, 4, 4, 4, 3, 2, 1]),
        (15, &[-5, -3, -2, 0], &[1, 1, 1, 1]),
    ])
}

/// κ of the second knot.
pub fn kappa_k2_expected() -> Value {
    kappa_rows(&[
        (17, &[-6, -5, -4, -3, -2, -1, 0, 1, 2], &[1, 2, 3, 4, 4, 4, 3, 2, 1]),
        (15, &[-2, -1, 0, 1, 2, 3, 4], &[1, 1, 1, 2, 1, 1, 1]),
    ])
}

/// The built-in entries, in a fixed order.
pub fn builtin() -> Vec<CatalogEntry> {
    use Provenance::*;
    vec![
        CatalogEntry::new("K1", "hyperbolic L-space knot with a strong inversion, as a 4-braid closure")
            .braid("(2,1,3,2)^3,1,2,3,3,2", 4)
            .template(template_t1(), true, 20)
            .fix("crossings", json!(17), Paper)
            .fix("N", json!(20), Paper)
            .fix("kappa", kappa_k1_expected(), Paper)
            .fix("kappa_width", json!(2), Paper)
            .fix("semigroup", json!(true), Paper),
        CatalogEntry::new("K2", "hyperbolic L-space knot with a strong inversion, as a 4-braid closure")
            .braid("(2,1,3,2)^3,-1,2,1,1,2", 4)
            .template(template_t2(), true, 16)
            .fix("crossings", json!(17), Paper)
            .fix("N", json!(16), Paper)
            .fix("kappa", kappa_k2_expected(), Paper)
            .fix("kappa_width", json!(2), Paper)
            .fix("semigroup", json!(true), Paper),
        CatalogEntry::new("T1", "quotient tangle of K1")
            .template(template_t1(), false, 20)
            .fix("det_0", json!(0), Paper)
            .fix("det_inf", json!(1), Paper)
            .fix("det_19", json!(19), Derived),
        CatalogEntry::new("T2", "quotient tangle of K2")
            .template(template_t2(), false, 16)
            .fix("det_0", json!(0), Paper)
            .fix("det_inf", json!(1), Paper),
        CatalogEntry::new("trivial", "two horizontal strands; T(n) is the (2,n) torus link")
            .template(TangleTemplate::trivial(), false, 0)
            .fix("N", json!(0), Derived)
            .fix("kappa_dim", json!(0), Derived),
        CatalogEntry::new("unknot", "one-crossing unknot")
            .braid("1", 2)
            .fix("kh_dim", json!(1), Trivial)
            .fix("det", json!(1), Trivial),
        CatalogEntry::new("trefoil", "right-handed trefoil")
            .braid("1,1,1", 2)
            .fix("kh_dim", json!(3), Derived)
            .fix("width", json!(1), Derived)
            .fix("det", json!(3), Derived)
            .fix("semigroup", json!(true), Derived),
        CatalogEntry::new("trefoil-left", "left-handed trefoil")
            .braid("-1,-1,-1", 2)
            .fix("kh_dim", json!(3), Derived)
            .fix("width", json!(1), Derived)
            .fix("det", json!(3), Derived),
        CatalogEntry::new("fig8", "figure-eight knot")
            .braid("1,-2,1,-2", 3)
            .fix("kh_dim", json!(5), Derived)
            .fix("width", json!(1), Derived)
            .fix("det", json!(5), Derived)
            .fix("lspace_form", json!(false), Trivial),
        CatalogEntry::new("hopf", "positive Hopf link")
            .braid("1,1", 2)
            .fix("kh_dim", json!(2), Derived)
            .fix("det", json!(2), Derived),
        CatalogEntry::new("T34", "torus knot T(3,4)")
            .braid("(1,2)^4", 3)
            .fix("det", json!(3), Derived)
            .fix("semigroup", json!(true), Derived),
        CatalogEntry::new("P-2,3,7", "pretzel knot P(-2,3,7), a positive 3-braid closure")
            .braid("1,2,1,1,2,2,1,1,1,1,1,1", 3)
            .fix("det", json!(1), Derived)
            .fix("semigroup", json!(false), Derived),
    ]
}

/// Entries read from every `.json`, `.pd` or `.txt` file in `dir`.
///
/// JSON files hold one PD object, one template object (recognized by `"ends"`), or an
/// array of PD objects. Text files hold lines `NAME PD[X[...], ...]`; `#` starts a comment.
pub fn load_dir(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::Catalog(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json" || x == "pd" || x == "txt"))
        .collect();
    files.sort();
    let mut out = vec![];
    for f in files {
        let text = std::fs::read_to_string(&f)?;
        let stem = f.file_stem().and_then(|s| s.to_str()).unwrap_or("entry").to_string();
        let origin = format!("from {}", f.display());
        if f.extension().is_some_and(|x| x == "json") {
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Catalog(format!("{}: {e}", f.display())))?;
            let items = match v {
                Value::Array(a) => a,
                other => vec![other],
            };
            for (i, item) in items.into_iter().enumerate() {
                let name = item.get("name").and_then(Value::as_str).map(str::to_string).unwrap_or_else(|| format!("{stem}-{i}"));
                let mut e = CatalogEntry::new(&name, &origin);
                if item.get("ends").is_some() {
                    let t = TangleTemplate::from_json(&item.to_string())?;
                    e.n_guess = Some(t.framing);
                    e.template = Some(t);
                } else {
                    e.pd = Some(parse_pd(&item.to_string())?.diagram);
                }
                out.push(e);
            }
        } else {
            for line in text.lines() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (name, pd) = line
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| Error::Catalog(format!("{}: expected `NAME PD[...]`, got {line:?}", f.display())))?;
                let mut e = CatalogEntry::new(name, &origin);
                e.pd = Some(parse_pd(pd.trim())?.diagram);
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// Built-in entries followed by those found under `KF_CATALOG_DIR`.
#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Catalog { entries: builtin() }
    }

    /// Built-ins plus the external directory named by `KF_CATALOG_DIR`, if set.
    pub fn from_env() -> Result<Self> {
        let mut c = Self::builtin();
        if let Some(dir) = std::env::var_os("KF_CATALOG_DIR") {
            c.extend(load_dir(Path::new(&dir))?);
        }
        Ok(c)
    }

    /// Add entries; names already present keep their first definition.
    pub fn extend(&mut self, more: Vec<CatalogEntry>) {
        for e in more {
            if !self.entries.iter().any(|x| x.name == e.name) {
                self.entries.push(e);
            }
        }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry> {
        self.entries.iter().find(|e| e.name.eq_ignore_ascii_case(name)).ok_or_else(|| {
            let names: Vec<&str> = self.entries.iter().map(|e| e.name.as_str()).collect();
            Error::Catalog(format!("no entry named {name:?}; known: {}", names.join(", ")))
        })
    }

    pub fn names(&self) -> BTreeMap<String, String> {
        self.entries.iter().map(|e| (e.name.clone(), e.description.clone())).collect()
    }
}
