//! Bigraded dimension tables and their text, JSON and LaTeX forms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Dimensions indexed by homological grading `h` and quantum grading `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KhTable {
    pub link: String,
    entries: BTreeMap<(i32, i32), usize>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    h: i32,
    q: i32,
    dim: usize,
}

/// `δ = q − 2h`.
pub fn delta(h: i32, q: i32) -> i32 {
    q - 2 * h
}

/// `½(δ_max − δ_min) + 1` over a nonempty support.
pub fn width_of<I: IntoIterator<Item = (i32, i32)>>(support: I) -> Result<i64> {
    let ds: Vec<i32> = support.into_iter().map(|(h, q)| delta(h, q)).collect();
    let (Some(&lo), Some(&hi)) = (ds.iter().min(), ds.iter().max()) else {
        return Err(Error::Unsupported("width of an empty table".into()));
    };
    Ok(((hi - lo) as i64).div_euclid(2) + 1)
}

impl KhTable {
    pub fn new(link: impl Into<String>, entries: BTreeMap<(i32, i32), usize>) -> Self {
        let entries = entries.into_iter().filter(|&(_, d)| d > 0).collect();
        KhTable { link: link.into(), entries }
    }

    pub fn entries(&self) -> &BTreeMap<(i32, i32), usize> {
        &self.entries
    }

    pub fn dim(&self, h: i32, q: i32) -> usize {
        self.entries.get(&(h, q)).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn width(&self) -> Result<i64> {
        width_of(self.entries.keys().copied())
    }

    /// Graded Euler characteristic `Σ (−1)^h x^q dim`.
    pub fn jones(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.entries.iter().map(|(&(h, q), &d)| (q, if h.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })),
        )
    }

    /// `(h, q) -> (h + dh, q + dq)`.
    pub fn shifted(&self, dh: i32, dq: i32) -> Self {
        KhTable {
            link: self.link.clone(),
            entries: self.entries.iter().map(|(&(h, q), &d)| ((h + dh, q + dq), d)).collect(),
        }
    }

    /// `(h, q) -> (−h, −q)`.
    pub fn negated(&self) -> Self {
        KhTable { link: self.link.clone(), entries: self.entries.iter().map(|(&(h, q), &d)| ((-h, -q), d)).collect() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "format": "kf-1",
            "link": self.link,
            "entries": entries_json(&self.entries),
            "total_dim": self.total_dim(),
            "width": self.width().ok(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        if v.get("format").and_then(Value::as_str) != Some("kf-1") {
            return Err(Error::Parse("expected \"format\": \"kf-1\"".into()));
        }
        let link = v.get("link").and_then(Value::as_str).unwrap_or("").to_string();
        let entries = entries_from_json(v.get("entries").ok_or_else(|| Error::Parse("missing entries".into()))?)?;
        Ok(KhTable::new(link, entries))
    }

    pub fn render_text(&self) -> String {
        grid_text(&self.entries)
    }

    pub fn render_latex(&self) -> String {
        grid_latex(&self.entries, &self.link)
    }
}

pub(crate) fn entries_json(e: &BTreeMap<(i32, i32), usize>) -> Value {
    json!(e.iter().map(|(&(h, q), &dim)| Entry { h, q, dim }).collect::<Vec<_>>())
}

pub(crate) fn entries_from_json(v: &Value) -> Result<BTreeMap<(i32, i32), usize>> {
    let list: Vec<Entry> = serde_json::from_value(v.clone())?;
    let mut out = BTreeMap::new();
    for e in list {
        if e.dim > 0 {
            *out.entry((e.h, e.q)).or_default() += e.dim;
        }
    }
    Ok(out)
}

fn grid(e: &BTreeMap<(i32, i32), usize>) -> (Vec<i32>, Vec<i32>, BTreeMap<(i32, i32), usize>) {
    let mut by_delta: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for (&(h, q), &d) in e {
        *by_delta.entry((delta(h, q), h)).or_default() += d;
    }
    let (hmin, hmax) = (e.keys().map(|k| k.0).min().unwrap_or(0), e.keys().map(|k| k.0).max().unwrap_or(0));
    let hs: Vec<i32> = (hmin..=hmax).collect();
    let mut ds: Vec<i32> = by_delta.keys().map(|k| k.0).collect();
    ds.dedup();
    ds.reverse();
    (hs, ds, by_delta)
}

/// Grid with `h` columns and `δ` rows, highest `δ` first.
pub(crate) fn grid_text(e: &BTreeMap<(i32, i32), usize>) -> String {
    if e.is_empty() {
        return "(empty)\n".into();
    }
    let (hs, ds, cells) = grid(e);
    let w = hs.iter().map(|h| h.to_string().len()).chain(cells.values().map(|d| d.to_string().len())).max().unwrap_or(1);
    let lw = ds.iter().map(|d| d.to_string().len()).max().unwrap_or(1).max(3);
    let mut s = format!("{:>lw$} |", "δ\\h", lw = lw);
    for h in &hs {
        s.push_str(&format!(" {:>w$}", h, w = w));
    }
    s.push('\n');
    s.push_str(&"-".repeat(lw + 2 + hs.len() * (w + 1)));
    s.push('\n');
    for d in &ds {
        s.push_str(&format!("{:>lw$} |", d, lw = lw));
        for h in &hs {
            let c = cells.get(&(*d, *h)).map_or(".".to_string(), |x| x.to_string());
            s.push_str(&format!(" {:>w$}", c, w = w));
        }
        s.push('\n');
    }
    s
}

pub(crate) fn grid_latex(e: &BTreeMap<(i32, i32), usize>, caption: &str) -> String {
    let (hs, ds, cells) = grid(e);
    let mut s = String::new();
    s.push_str(&format!("% {caption}\n"));
    s.push_str(&format!("\\begin{{tabular}}{{r|{}}}\n", "c".repeat(hs.len())));
    s.push_str("$\\delta \\backslash h$");
    for h in &hs {
        s.push_str(&format!(" & ${h}$"));
    }
    s.push_str(" \\\\\n\\hline\n");
    for d in &ds {
        s.push_str(&format!("${d}$"));
        for h in &hs {
            match cells.get(&(*d, *h)) {
                Some(x) => s.push_str(&format!(" & ${x}$")),
                None => s.push_str(" & "),
            }
        }
        s.push_str(" \\\\\n");
    }
    s.push_str("\\end{tabular}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_and_round_trip() {
        let t = KhTable::new("x", BTreeMap::from([((0, 2), 1), ((2, 6), 1), ((3, 10), 1)]));
        assert_eq!(t.width().unwrap(), 2);
        let back = KhTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(t.render_text().contains("δ\\h"));
        assert!(t.render_latex().contains("tabular"));
        assert!(KhTable::new("e", BTreeMap::new()).width().is_err());
    }
}
