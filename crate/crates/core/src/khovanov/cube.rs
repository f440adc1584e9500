//! The full cube of resolutions, reduced at the basepoint circle.
//!
//! Exponential in the crossing count; used as the reference implementation.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::f2::{GradedComplexF2, SparseF2};

struct Vertex {
    ncirc: usize,
    circle_of: Vec<u8>,
    bp: usize,
}

fn vertex(d: &PlanarDiagram, v: u64, max_label: usize) -> Vertex {
    let mut parent: Vec<usize> = (0..=max_label).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (c, t) in d.crossings().iter().enumerate() {
        let pairs = if v >> c & 1 == 1 { [(t[0], t[3]), (t[1], t[2])] } else { [(t[0], t[1]), (t[2], t[3])] };
        for (a, b) in pairs {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut circle_of = vec![u8::MAX; max_label + 1];
    let mut ids: BTreeMap<usize, u8> = BTreeMap::new();
    for a in d.arcs() {
        let r = find(&mut parent, a as usize);
        let n = ids.len() as u8;
        circle_of[a as usize] = *ids.entry(r).or_insert(n);
    }
    let ncirc = ids.len() + d.free_loops();
    let bp = match d.basepoint() {
        Some(b) => circle_of[b as usize] as usize,
        None => 0,
    };
    Vertex { ncirc, circle_of, bp }
}

/// Build the reduced complex: generators are vertices `v` with circle labelings
/// in which the basepoint circle carries `X`. Bit `i` of a labeling set means circle `i` is `X`.
pub fn build_reduced_complex(d: &PlanarDiagram, max_generators: usize) -> Result<GradedComplexF2> {
    let n = d.num_crossings();
    if n > 30 {
        return Err(Error::Budget(format!("{n} crossings is beyond the full cube")));
    }
    if n == 0 {
        let mut c = GradedComplexF2::new();
        for ((h, q), k) in super::scan::unlink_table(d.free_loops()) {
            c.set_gens(h, q, k);
        }
        return Ok(c);
    }
    let max_label = d.max_label() as usize;
    let nverts = 1u64 << n;
    let verts: Vec<Vertex> = (0..nverts).into_par_iter().map(|v| vertex(d, v, max_label)).collect();
    let total: u128 = verts.iter().map(|v| 1u128 << (v.ncirc - 1)).sum();
    if total > max_generators as u128 {
        return Err(Error::Budget(format!("full cube needs {total} generators (limit {max_generators})")));
    }
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let grade = |v: u64, s: u64, nc: usize| -> (i32, i32) {
        let k = v.count_ones() as i32;
        let x = s.count_ones() as i32;
        (k - nm, (nc as i32 - 2 * x) + k + np - 2 * nm + 1)
    };
    // index of every generator inside its (h, q) block
    let mut counts: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    let mut index: Vec<Vec<u32>> = Vec::with_capacity(verts.len());
    for (v, vx) in verts.iter().enumerate() {
        let mut idx = vec![u32::MAX; 1 << vx.ncirc];
        for s in 0..(1u64 << vx.ncirc) {
            if s >> vx.bp & 1 == 0 {
                continue;
            }
            let key = grade(v as u64, s, vx.ncirc);
            let c = counts.entry(key).or_default();
            idx[s as usize] = *c as u32;
            *c += 1;
        }
        index.push(idx);
    }
    let t = d.crossings();
    let arcs: Vec<u32> = d.arcs().into_iter().collect();
    let loops = d.free_loops();
    let entries: Vec<((i32, i32), u32, Vec<u32>)> = (0..nverts)
        .into_par_iter()
        .flat_map_iter(|v| {
            let vx = &verts[v as usize];
            // per outgoing edge: (target vertex, circles a and b at the crossing, circle map v -> w)
            let mut edges = vec![];
            for c in 0..n {
                if v >> c & 1 == 1 {
                    continue;
                }
                let w = v | 1 << c;
                let wx = &verts[w as usize];
                let mut map = vec![0u8; vx.ncirc];
                for &arc in &arcs {
                    map[vx.circle_of[arc as usize] as usize] = wx.circle_of[arc as usize];
                }
                for f in 0..loops {
                    map[vx.ncirc - loops + f] = (wx.ncirc - loops + f) as u8;
                }
                let a = vx.circle_of[t[c][0] as usize] as usize;
                let b = vx.circle_of[t[c][2] as usize] as usize;
                let m0 = wx.circle_of[t[c][0] as usize] as usize;
                let m1 = wx.circle_of[t[c][1] as usize] as usize;
                edges.push((w, a, b, m0, m1, map));
            }
            let mut out = vec![];
            for s in 0..(1u64 << vx.ncirc) {
                if s >> vx.bp & 1 == 0 {
                    continue;
                }
                let key = grade(v, s, vx.ncirc);
                let mut images: Vec<u32> = vec![];
                for (w, a, b, m0, m1, map) in &edges {
                    let (a, b, m0, m1) = (*a, *b, *m0, *m1);
                    let mut carried = 0u64;
                    for (ci, &wc) in map.iter().enumerate() {
                        if ci != a && ci != b && s >> ci & 1 == 1 {
                            carried |= 1 << wc;
                        }
                    }
                    let (la, lb) = (s >> a & 1 == 1, s >> b & 1 == 1);
                    let mut push = |tg: u64| {
                        let j = index[*w as usize][tg as usize];
                        debug_assert_ne!(j, u32::MAX, "target left the reduced subcomplex");
                        images.push(j);
                    };
                    if a != b {
                        // merge: 1·1 = 1, 1·X = X, X·X = 0
                        if !(la && lb) {
                            push(carried | if la || lb { 1 << m0 } else { 0 });
                        }
                    } else if la {
                        // split: X -> X⊗X
                        push(carried | 1 << m0 | 1 << m1);
                    } else {
                        // split: 1 -> 1⊗X + X⊗1
                        push(carried | 1 << m0);
                        push(carried | 1 << m1);
                    }
                }
                out.push((key, index[v as usize][s as usize], images));
            }
            out.into_iter()
        })
        .collect();
    let mut rows: BTreeMap<(i32, i32), Vec<Vec<u32>>> = BTreeMap::new();
    for (&key, &cnt) in &counts {
        rows.insert(key, vec![vec![]; cnt]);
    }
    for (key, i, images) in entries {
        rows.get_mut(&key).expect("block exists")[i as usize] = images;
    }
    let mut cx = GradedComplexF2::new();
    for (&(h, q), &cnt) in &counts {
        cx.set_gens(h, q, cnt);
    }
    for ((h, q), r) in rows {
        let target = cx.gens(h + 1, q);
        if r.iter().all(|x| x.is_empty()) {
            continue;
        }
        cx.set_diff(h, q, SparseF2::from_rows(target, r));
    }
    debug_assert!(cx.is_complex(), "d∘d ≠ 0");
    Ok(cx)
}

/// Reduced Khovanov homology from the full cube.
pub fn reduced_kh_cube(d: &PlanarDiagram, max_generators: usize) -> Result<BTreeMap<(i32, i32), usize>> {
    Ok(build_reduced_complex(d, max_generators)?.homology_dims())
}
