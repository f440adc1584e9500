use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{PlanarDiagram, TangleTemplate};
use crate::error::{Error, Result};
use crate::khovanov::{kh_table, KhOptions, KhTable};

#[derive(Clone, Copy, Debug, Default)]
pub struct FamilyOptions {
    pub kh: KhOptions,
    /// Compute every filling on the mirror diagram.
    pub mirror: bool,
}

/// Reduced homology of `T(n)` for every `n` in a range, together with the
/// bidegree of each skein map.
#[derive(Clone, Debug)]
pub struct FillingFamily {
    pub template: String,
    pub lo: i64,
    pub hi: i64,
    pub mirror: bool,
    pub tables: BTreeMap<i64, KhTable>,
    /// `(h, q)` shift carrying the grading of `T(n)` to that of `T(n−1)` under `f_n`.
    pub bidegrees: BTreeMap<i64, (i32, i32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepKind {
    Injective,
    Surjective,
}

impl StepKind {
    pub fn letter(self) -> char {
        match self {
            StepKind::Injective => 'I',
            StepKind::Surjective => 'S',
        }
    }
}

/// The behavior of `f_n`. The defect is the bigrading of the kernel or cokernel,
/// expressed in the grading of `T(n−1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StepClass {
    pub n: i64,
    pub kind: StepKind,
    pub defect: (i32, i32),
}

fn signs(d: &PlanarDiagram) -> (i32, i32) {
    (d.n_plus() as i32, d.n_minus() as i32)
}

/// Bidegree of `f_n` between the diagrams actually used for `T(n)` and `T(n−1)`.
///
/// If `T(n−1)` is the 0-smoothing of a crossing of `T(n)` the map is the quotient onto
/// that smoothing; if `T(n)` is the 1-smoothing of a crossing of `T(n−1)` it is the
/// inclusion of that smoothing. Otherwise the map exists only for the mirrors and
/// the bidegree is the negative of the mirrored one.
pub fn step_bidegree(t: &TangleTemplate, n: i64, mirror: bool, dn: &PlanarDiagram, dn1: &PlanarDiagram) -> (i32, i32) {
    let step = t.skein_step(n);
    let kind = step.kind ^ u8::from(mirror);
    let from_n = step.from == n;
    let direct = (from_n && kind == 0) || (!from_n && kind == 1);
    let ((p0, m0), (p1, m1)) = if direct {
        (signs(dn), signs(dn1))
    } else {
        let (a, b) = (signs(dn), signs(dn1));
        ((a.1, a.0), (b.1, b.0))
    };
    let shift0 = p0 - 2 * m0;
    let shift1 = p1 - 2 * m1;
    let beta = if from_n { (m0 - m1, shift1 - shift0) } else { (1 - m1 + m0, 1 + shift1 - shift0) };
    if direct {
        beta
    } else {
        (-beta.0, -beta.1)
    }
}

fn used_diagram(t: &TangleTemplate, n: i64, mirror: bool) -> Result<PlanarDiagram> {
    let d = t.fill_coherent(n)?;
    Ok(if mirror { d.mirror() } else { d })
}

/// Bidegree of `f_n` without computing any homology.
pub(crate) fn bidegree_only(t: &TangleTemplate, n: i64, mirror: bool) -> Result<(i32, i32)> {
    Ok(step_bidegree(t, n, mirror, &used_diagram(t, n, mirror)?, &used_diagram(t, n - 1, mirror)?))
}

/// Compute `Kh(T(n))` for `lo ≤ n ≤ hi`, reusing tables in `cache`.
pub fn compute_family(
    t: &TangleTemplate,
    lo: i64,
    hi: i64,
    opts: &FamilyOptions,
    cache: &mut BTreeMap<i64, KhTable>,
) -> Result<FillingFamily> {
    if lo >= hi {
        return Err(Error::Family(format!("range {lo}..{hi} needs at least two fillings")));
    }
    let missing: Vec<i64> = (lo..=hi).filter(|n| !cache.contains_key(n)).collect();
    let fresh: Vec<(i64, KhTable)> = missing
        .par_iter()
        .map(|&n| {
            let d = used_diagram(t, n, opts.mirror)?;
            Ok((n, kh_table(&d, &format!("{}({n})", t.name), &opts.kh)?))
        })
        .collect::<Result<_>>()?;
    cache.extend(fresh);
    let tables: BTreeMap<i64, KhTable> = (lo..=hi).map(|n| (n, cache[&n].clone())).collect();
    let mut bidegrees = BTreeMap::new();
    for n in lo + 1..=hi {
        bidegrees.insert(n, bidegree_only(t, n, opts.mirror)?);
    }
    let fam = FillingFamily { template: t.name.clone(), lo, hi, mirror: opts.mirror, tables, bidegrees };
    classify_steps(&fam)?;
    Ok(fam)
}

/// The single bigrading where `b` exceeds `a` (or `a` exceeds `b`), if the two differ by one generator.
pub(crate) fn unit_difference(
    a: &BTreeMap<(i32, i32), usize>,
    b: &BTreeMap<(i32, i32), usize>,
) -> Option<((i32, i32), i64)> {
    let mut diff: Vec<((i32, i32), i64)> = vec![];
    for k in a.keys().chain(b.keys()) {
        let d = b.get(k).copied().unwrap_or(0) as i64 - a.get(k).copied().unwrap_or(0) as i64;
        if d != 0 && !diff.iter().any(|(x, _)| x == k) {
            diff.push((*k, d));
        }
    }
    match diff.as_slice() {
        [(k, d)] if d.abs() == 1 => Some((*k, *d)),
        _ => None,
    }
}

pub(crate) fn shift(e: &BTreeMap<(i32, i32), usize>, by: (i32, i32)) -> BTreeMap<(i32, i32), usize> {
    e.iter().map(|(&(h, q), &d)| ((h + by.0, q + by.1), d)).collect()
}

/// Classify every `f_n` of the family.
pub fn classify_steps(f: &FillingFamily) -> Result<Vec<StepClass>> {
    let mut out = vec![];
    for n in f.lo + 1..=f.hi {
        let beta = f.bidegrees[&n];
        let src = shift(f.tables[&n].entries(), beta);
        let tgt = f.tables[&(n - 1)].entries();
        let Some((at, d)) = unit_difference(&src, tgt) else {
            return Err(Error::Family(format!(
                "Kh(T({n})) and Kh(T({})) do not differ by one generator under the bidegree {beta:?}",
                n - 1
            )));
        };
        let kind = if d > 0 { StepKind::Injective } else { StepKind::Surjective };
        out.push(StepClass { n, kind, defect: at });
    }
    Ok(out)
}

/// Every `q` offset (with `h` fixed) under which the two tables differ by one generator.
pub(crate) fn offset_candidates(a: &KhTable, b: &KhTable, dh: i32) -> Vec<i32> {
    let (Some(qa), Some(qb)) = (a.entries().keys().map(|k| k.1).min(), b.entries().keys().map(|k| k.1).min()) else {
        return vec![];
    };
    let span = 64;
    (qb - qa - span..=qb - qa + span)
        .filter(|&s| unit_difference(&shift(a.entries(), (dh, s)), b.entries()).is_some())
        .collect()
}
