//! Jones polynomial from the Kauffman bracket state sum.

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Largest diagram accepted by the state sum.
pub const KAUFFMAN_MAX_CROSSINGS: usize = 20;

/// `(−1)^{n−} q^{n+ − 2n−} Σ_v (−q)^{|v|} (q + q⁻¹)^{c(v)}`, divided by `q + q⁻¹`.
/// This matches the Euler characteristic of reduced homology, with the unknot at 1.
pub fn kauffman_jones(d: &PlanarDiagram) -> Result<LaurentPoly> {
    let n = d.num_crossings();
    if n > KAUFFMAN_MAX_CROSSINGS {
        return Err(Error::Budget(format!("state sum limited to {KAUFFMAN_MAX_CROSSINGS} crossings, got {n}")));
    }
    let max = d.max_label() as usize;
    let t = d.crossings();
    // counts[k][c] = number of states with k one-smoothings and c circles
    let maxc = n + d.free_loops() + 2;
    let mut counts = vec![vec![0i64; maxc + 1]; n + 1];
    let mut parent = vec![0usize; max + 1];
    for v in 0u64..(1u64 << n) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut comps = d.arcs().len();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (c, tc) in t.iter().enumerate() {
            let pairs =
                if v >> c & 1 == 1 { [(tc[0], tc[3]), (tc[1], tc[2])] } else { [(tc[0], tc[1]), (tc[2], tc[3])] };
            for (a, b) in pairs {
                let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                    comps -= 1;
                }
            }
        }
        counts[v.count_ones() as usize][comps + d.free_loops()] += 1;
    }
    let base = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
    let mut powers = vec![LaurentPoly::one()];
    for i in 1..=maxc {
        let p = &powers[i - 1] * &base;
        powers.push(p);
    }
    let mut sum = LaurentPoly::zero();
    for (k, row) in counts.iter().enumerate() {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for (c, &cnt) in row.iter().enumerate() {
            if cnt != 0 {
                sum = &sum + &powers[c].shift(k as i32).scale(sign * cnt);
            }
        }
    }
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    let unreduced = sum.shift(np - 2 * nm).scale(sign);
    unreduced
        .div_exact(&base)
        .ok_or_else(|| Error::Unsupported("bracket not divisible by q + 1/q".into()))
}
