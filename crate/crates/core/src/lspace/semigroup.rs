//! Formal semigroups of L-space-form Alexander polynomials.

use serde_json::{json, Value};

use super::alexander::{is_lspace_form, AlexanderPoly};
use crate::error::{Error, Result};

/// `S` with `Δ(t)/(1 − t) = Σ_{s∈S} t^s`, as a union of intervals ending in `[g2, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSemigroup {
    /// Half-open intervals `[a, b)` below the threshold.
    pub intervals: Vec<(i64, i64)>,
    pub threshold: i64,
}

impl FormalSemigroup {
    pub fn contains(&self, x: i64) -> bool {
        x >= self.threshold || self.intervals.iter().any(|&(a, b)| a <= x && x < b)
    }

    pub fn elements_below(&self) -> Vec<i64> {
        self.intervals.iter().flat_map(|&(a, b)| a..b).collect()
    }

    pub fn gaps(&self) -> Vec<i64> {
        (0..self.threshold).filter(|&x| !self.contains(x)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "elements_below": self.elements_below(),
            "threshold": self.threshold,
            "is_semigroup": is_actual_semigroup(self),
        })
    }
}

/// Read the intervals straight off the exponents `a_0 < a_1 < … < a_2k`.
pub fn formal_semigroup(p: &AlexanderPoly) -> Result<FormalSemigroup> {
    if !is_lspace_form(p) {
        return Err(Error::Unsupported("Alexander polynomial is not of L-space form".into()));
    }
    let lo = p.0.min_exp().expect("nonzero") as i64;
    let a: Vec<i64> = p.0.terms().map(|(e, _)| e as i64 - lo).collect();
    let intervals = a.chunks(2).filter(|c| c.len() == 2).map(|c| (c[0], c[1])).collect();
    Ok(FormalSemigroup { intervals, threshold: *a.last().expect("nonempty") })
}

/// Closed under addition; sums at or beyond the threshold are automatic.
pub fn is_actual_semigroup(s: &FormalSemigroup) -> bool {
    let el = s.elements_below();
    el.iter().all(|&x| el.iter().all(|&y| s.contains(x + y)))
}

/// Members of `S` below `bound` from the power series of `Δ(t)/(1 − t)`.
pub fn series_members(p: &AlexanderPoly, bound: i64) -> Vec<i64> {
    let lo = p.0.min_exp().unwrap_or(0) as i64;
    let mut acc = 0i64;
    let mut out = vec![];
    for m in 0..bound {
        acc += p.0.coeff((m + lo) as i32);
        if acc != 0 {
            out.push(m);
        }
    }
    out
}
