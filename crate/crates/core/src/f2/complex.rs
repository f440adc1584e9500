//! Bigraded chain complexes over the two-element field with differential of degree (1, 0).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::f2::sparse::SparseF2;

/// Generators in bigrading `(h, q)` and, for each source block, the differential
/// `d: C^{h,q} -> C^{h+1,q}` stored as one row of image indices per source generator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedComplexF2 {
    gens: BTreeMap<(i32, i32), usize>,
    diffs: BTreeMap<(i32, i32), SparseF2>,
}

impl GradedComplexF2 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_gens(&mut self, h: i32, q: i32, n: usize) {
        if n == 0 {
            self.gens.remove(&(h, q));
        } else {
            self.gens.insert((h, q), n);
        }
    }

    pub fn gens(&self, h: i32, q: i32) -> usize {
        self.gens.get(&(h, q)).copied().unwrap_or(0)
    }

    pub fn generator_counts(&self) -> &BTreeMap<(i32, i32), usize> {
        &self.gens
    }

    pub fn total_gens(&self) -> usize {
        self.gens.values().sum()
    }

    /// Set the block from `(h, q)` to `(h + 1, q)`; shapes must match the generator counts.
    pub fn set_diff(&mut self, h: i32, q: i32, m: SparseF2) {
        assert_eq!(m.rows(), self.gens(h, q), "source size mismatch at ({h},{q})");
        assert_eq!(m.cols(), self.gens(h + 1, q), "target size mismatch at ({h},{q})");
        if !m.is_zero() {
            self.diffs.insert((h, q), m);
        }
    }

    pub fn diff(&self, h: i32, q: i32) -> Option<&SparseF2> {
        self.diffs.get(&(h, q))
    }

    /// True iff `d ∘ d = 0`.
    pub fn is_complex(&self) -> bool {
        self.diffs.iter().all(|(&(h, q), d)| match self.diffs.get(&(h + 1, q)) {
            Some(d2) => d.then(d2).is_zero(),
            None => true,
        })
    }

    /// Dimensions of homology, positive entries only. Blocks are ranked in parallel.
    pub fn homology_dims(&self) -> BTreeMap<(i32, i32), usize> {
        let ranks: BTreeMap<(i32, i32), usize> =
            self.diffs.par_iter().map(|(&k, m)| (k, m.rank())).collect::<Vec<_>>().into_iter().collect();
        let mut out = BTreeMap::new();
        for (&(h, q), &n) in &self.gens {
            let out_rank = ranks.get(&(h, q)).copied().unwrap_or(0);
            let in_rank = ranks.get(&(h - 1, q)).copied().unwrap_or(0);
            let dim = n - out_rank - in_rank;
            if dim > 0 {
                out.insert((h, q), dim);
            }
        }
        out
    }

    /// `Σ_h (-1)^h gens(h, q)` for each `q`.
    pub fn euler_characteristic(&self) -> BTreeMap<i32, i64> {
        let mut chi: BTreeMap<i32, i64> = BTreeMap::new();
        for (&(h, q), &n) in &self.gens {
            *chi.entry(q).or_default() += if h.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) };
        }
        chi.retain(|_, v| *v != 0);
        chi
    }

    /// Debug dump `{"gens": {"h,q": n}, "d": {"h,q": [[targets], ...]}}`.
    pub fn to_json(&self) -> Value {
        let gens: serde_json::Map<String, Value> =
            self.gens.iter().map(|(&(h, q), &n)| (format!("{h},{q}"), json!(n))).collect();
        let d: serde_json::Map<String, Value> = self
            .diffs
            .iter()
            .map(|(&(h, q), m)| (format!("{h},{q}"), json!((0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>())))
            .collect();
        json!({"gens": gens, "d": d})
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_complexes() {
        let mut c = GradedComplexF2::new();
        c.set_gens(0, 0, 2);
        c.set_gens(1, 0, 1);
        assert_eq!(c.homology_dims().values().sum::<usize>(), 3);
        c.set_diff(0, 0, SparseF2::from_rows(1, vec![vec![0], vec![0]]));
        assert!(c.is_complex());
        assert_eq!(c.homology_dims(), BTreeMap::from([((0, 0), 1)]));
    }

    #[test]
    fn isomorphism_kills_everything() {
        let mut c = GradedComplexF2::new();
        c.set_gens(0, 1, 1);
        c.set_gens(1, 1, 1);
        c.set_diff(0, 1, SparseF2::from_rows(1, vec![vec![0]]));
        assert!(c.homology_dims().is_empty());
    }
}
