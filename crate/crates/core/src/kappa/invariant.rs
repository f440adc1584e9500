use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use super::family::{bidegree_only, classify_steps, compute_family, offset_candidates, shift, FamilyOptions, FillingFamily, StepClass, StepKind};
use crate::diagram::TangleTemplate;
use crate::error::{Error, Result};
use crate::khovanov::table::{entries_json, grid_latex, grid_text};
use crate::khovanov::{width_of, KhTable};

/// Where the steps switch from injective to surjective.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionProfile {
    pub n: i64,
    /// One letter per step `f_lo+1 … f_hi`.
    pub pattern: String,
    pub steps: Vec<StepClass>,
    /// Computed steps `n ≤ N − 1`, all injective.
    pub margin_below: usize,
    /// Computed steps `n ≥ N + 2`, all surjective.
    pub margin_above: usize,
}

/// Which composition produced κ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KappaCase {
    BothSurjective,
    InjectiveThenSurjective,
    BothInjective,
    SurjectiveThenInjective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaTable {
    pub template: String,
    pub n: i64,
    pub case: KappaCase,
    /// Graded dimensions, `q` normalized to the grading of `T(0)`.
    pub entries: BTreeMap<(i32, i32), usize>,
    /// The same space in the grading of `T(N − 1)`.
    pub raw: BTreeMap<(i32, i32), usize>,
    pub q_shift: i32,
    pub mirror: bool,
    pub range: (i64, i64),
}

impl KappaTable {
    pub fn total_dim(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn width(&self) -> Result<i64> {
        kappa_width(self)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "format": "kf-1",
            "template": self.template,
            "N": self.n,
            "entries": entries_json(&self.entries),
            "total_dim": self.total_dim(),
            "width": self.width().ok(),
            "case": self.case,
            "q_shift": self.q_shift,
            "mirror": self.mirror,
            "range": [self.range.0, self.range.1],
        })
    }

    pub fn render_text(&self) -> String {
        format!(
            "κ({}) with N = {}, dim {}, width {}\n{}",
            self.template,
            self.n,
            self.total_dim(),
            self.width().map_or("-".to_string(), |w| w.to_string()),
            grid_text(&self.entries)
        )
    }

    pub fn render_latex(&self) -> String {
        grid_latex(&self.entries, &format!("kappa({}), N = {}", self.template, self.n))
    }

    pub fn as_table(&self) -> KhTable {
        KhTable::new(format!("kappa({})", self.template), self.entries.clone())
    }
}

/// The largest `N` such that every computed `f_n` with `n ≤ N − 1` is injective and
/// every computed `f_n` with `n ≥ N + 2` is surjective, with at least one witness on
/// each side. `f_N` and `f_{N+1}` may be of either kind.
pub fn find_transition(f: &FillingFamily) -> Result<TransitionProfile> {
    let steps = classify_steps(f)?;
    let pattern: String = steps.iter().map(|s| s.kind.letter()).collect();
    let kind = |n: i64| steps[(n - f.lo - 1) as usize].kind;
    let window = |n: i64| {
        (f.lo + 1..n).all(|m| kind(m) == StepKind::Injective) && (n + 2..=f.hi).all(|m| kind(m) == StepKind::Surjective)
    };
    let Some(n) = (f.lo + 2..=f.hi - 2).rev().find(|&n| window(n)) else {
        // a window touching the ends of the range may still be completed by widening it
        return Err(if (f.lo - 1..=f.hi + 1).any(window) {
            Error::NoTransition { lo: f.lo, hi: f.hi }
        } else {
            Error::Family(format!("steps {pattern} do not switch from injective to surjective"))
        });
    };
    Ok(TransitionProfile {
        n,
        margin_below: (n - 1 - f.lo) as usize,
        margin_above: (f.hi - n - 1) as usize,
        pattern,
        steps,
    })
}

fn minus_point(e: &mut BTreeMap<(i32, i32), usize>, at: (i32, i32)) -> Result<()> {
    match e.get_mut(&at) {
        Some(d) if *d > 0 => {
            *d -= 1;
            if *d == 0 {
                e.remove(&at);
            }
            Ok(())
        }
        _ => Err(Error::Family(format!("no generator at {at:?} to remove"))),
    }
}

/// Sum of `q` parts of the bidegrees carrying `T(N − 1)` to `T(0)`.
fn normalization(t: &TangleTemplate, n: i64, mirror: bool) -> Result<i32> {
    let mut s = 0;
    if n - 1 >= 0 {
        for m in 1..=n - 1 {
            s += bidegree_only(t, m, mirror)?.1;
        }
    } else {
        for m in n..=0 {
            s -= bidegree_only(t, m, mirror)?.1;
        }
    }
    Ok(s)
}

/// Sum of the `q` offsets of the steps strictly between `T(N − 1)` and `T(0)`, walked
/// from the other end so that the two sums share no loop.
fn normalization_reverse(t: &TangleTemplate, n: i64, mirror: bool) -> Result<i32> {
    let mut acc: Vec<i32> = vec![];
    if n - 1 >= 0 {
        let mut m = n - 1;
        while m >= 1 {
            acc.push(bidegree_only(t, m, mirror)?.1);
            m -= 1;
        }
        Ok(acc.into_iter().rev().sum())
    } else {
        let mut m = 0;
        while m >= n {
            acc.push(-bidegree_only(t, m, mirror)?.1);
            m -= 1;
        }
        Ok(acc.into_iter().sum())
    }
}

/// κ from a family and its transition.
pub fn compute_kappa(t: &TangleTemplate, f: &FillingFamily, p: &TransitionProfile) -> Result<KappaTable> {
    let n = p.n;
    let class = |m: i64| p.steps[(m - f.lo - 1) as usize];
    let (fn_, fn1) = (class(n), class(n + 1));
    let (bn, bn1) = (f.bidegrees[&n], f.bidegrees[&(n + 1)]);
    let a = shift(f.tables[&(n + 1)].entries(), (bn1.0 + bn.0, bn1.1 + bn.1));
    let b = shift(f.tables[&n].entries(), bn);
    let c = f.tables[&(n - 1)].entries().clone();
    use StepKind::*;
    let (case, raw) = match (fn_.kind, fn1.kind) {
        (Surjective, Surjective) => (KappaCase::BothSurjective, c),
        (Injective, Surjective) => (KappaCase::InjectiveThenSurjective, b),
        (Injective, Injective) => (KappaCase::BothInjective, a),
        (Surjective, Injective) => {
            // kernel of f_N at `kb`, cokernel of f_{N+1} at `kc`, both in the grading of T(N − 1)
            let kb = fn_.defect;
            let kc = (fn1.defect.0 + bn.0, fn1.defect.1 + bn.1);
            let raw = if kb != kc {
                let mut r = b.clone();
                minus_point(&mut r, kb)?;
                minus_point(&mut r, kc)?;
                r
            } else if b.get(&kb).copied() == Some(1) {
                a
            } else {
                return Err(Error::Ambiguous(format!(
                    "kernel of f_{n} and cokernel of f_{} share bigrading {kb:?}",
                    n + 1
                )));
            };
            (KappaCase::SurjectiveThenInjective, raw)
        }
    };
    let q_shift = normalization(t, n, f.mirror)?;
    if normalization_reverse(t, n, f.mirror)? != q_shift {
        return Err(Error::Family("the two normalization paths disagree".into()));
    }
    for (m, &beta) in &f.bidegrees {
        let cands = offset_candidates(&f.tables[m], &f.tables[&(m - 1)], beta.0);
        if !cands.contains(&beta.1) {
            return Err(Error::Family(format!(
                "bidegree {beta:?} of f_{m} is not among the offsets {cands:?} allowed by the tables"
            )));
        }
    }
    let entries = shift(&raw, (0, q_shift));
    Ok(KappaTable {
        template: t.name.clone(),
        n,
        case,
        entries,
        raw,
        q_shift,
        mirror: f.mirror,
        range: (f.lo, f.hi),
    })
}

/// Homological width of κ.
pub fn kappa_width(k: &KappaTable) -> Result<i64> {
    width_of(k.entries.keys().copied())
}

#[derive(Clone, Copy, Debug)]
pub struct AutoOptions {
    pub family: FamilyOptions,
    /// Required computed steps on each side of the transition window.
    pub margin: usize,
    /// Largest range length tried before giving up.
    pub max_span: i64,
}

impl Default for AutoOptions {
    fn default() -> Self {
        AutoOptions { family: FamilyOptions::default(), margin: 4, max_span: 64 }
    }
}

/// Compute κ starting from `lo..=hi` and widening the range until the transition is
/// found with the required margin on both sides.
pub fn kappa_auto(
    t: &TangleTemplate,
    lo: i64,
    hi: i64,
    opts: &AutoOptions,
) -> Result<(KappaTable, TransitionProfile, FillingFamily)> {
    let (mut lo, mut hi) = (lo, hi);
    let mut cache = BTreeMap::new();
    loop {
        let fam = compute_family(t, lo, hi, &opts.family, &mut cache)?;
        let (grow_lo, grow_hi) = match find_transition(&fam) {
            Ok(p) if p.margin_below >= opts.margin && p.margin_above >= opts.margin => {
                let k = compute_kappa(t, &fam, &p)?;
                return Ok((k, p, fam));
            }
            Ok(p) => (
                (opts.margin as i64 - p.margin_below as i64).max(0),
                (opts.margin as i64 - p.margin_above as i64).max(0),
            ),
            Err(Error::NoTransition { .. }) => {
                let steps = classify_steps(&fam)?;
                let all_i = steps.iter().all(|s| s.kind == StepKind::Injective);
                let all_s = steps.iter().all(|s| s.kind == StepKind::Surjective);
                let span = hi - lo;
                match (all_i, all_s) {
                    (true, _) => (0, span),
                    (_, true) => (span, 0),
                    _ => (2, 2),
                }
            }
            Err(e) => return Err(e),
        };
        if hi + grow_hi - (lo - grow_lo) > opts.max_span {
            return Err(Error::NoTransition { lo, hi });
        }
        lo -= grow_lo;
        hi += grow_hi;
    }
}
