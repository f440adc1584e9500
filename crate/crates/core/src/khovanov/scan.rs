//! Reduced Khovanov homology by scanning the diagram one crossing at a time.
//!
//! The basepoint arc is cut open, turning the link into a 1-1 tangle. After each
//! crossing the partial tangle's complex lives in the dotted cobordism category
//! over the two-element field, with `X² = 0` and a dot on the component through the
//! basepoint equal to zero. Closed loops are removed by delooping and isomorphisms
//! are cancelled by Gaussian elimination, so the complex stays small.
//!
//! A morphism between crossingless matchings `a` and `b` of the same boundary is a
//! sum of surfaces made of one disk per cycle of `a ∪ b`, each disk carrying at most
//! one dot. It is stored as a set of dot masks, bit `i` marking a dot on cycle `i`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use smallvec::{smallvec, SmallVec};

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};

type Mask = u64;

/// XOR-set of dot masks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Morph(SmallVec<[Mask; 2]>);

impl Morph {
    #[cfg(test)]
    fn identity() -> Self {
        Morph(smallvec![0])
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn is_identity(&self) -> bool {
        self.0.len() == 1 && self.0[0] == 0
    }
    fn toggle(&mut self, m: Mask) {
        match self.0.binary_search(&m) {
            Ok(i) => {
                self.0.remove(i);
            }
            Err(i) => self.0.insert(i, m),
        }
    }
    fn add(&mut self, other: &Morph) {
        for &m in &other.0 {
            self.toggle(m);
        }
    }
}

/// Cycle index of every boundary point of `a ∪ b`, numbered from the smallest point.
fn cycles(a: &[u8], b: &[u8]) -> (usize, Vec<u8>) {
    let mut id = vec![u8::MAX; a.len()];
    let mut n = 0u8;
    for p in 0..a.len() {
        if id[p] != u8::MAX {
            continue;
        }
        let mut cur = p;
        loop {
            id[cur] = n;
            let x = a[cur] as usize;
            id[x] = n;
            cur = b[x] as usize;
            if cur == p {
                break;
            }
        }
        n += 1;
    }
    (n as usize, id)
}

/// One connected component of a composite surface.
#[derive(Clone, Debug, Default)]
struct Comp {
    in1: Mask,
    in2: Mask,
    src_loops: u8,
    tgt_loops: u8,
    out: Mask,
}

/// Precomputed neck-cutting data for one surface shape.
#[derive(Clone, Debug)]
struct Plan {
    dead: bool,
    comps: Vec<Comp>,
    pin: Mask,
}

impl Plan {
    /// Add the image of the single term `(m1, m2)` with loop labels `es`, `et` to `out`.
    /// Loop label bit 1 means `X`: a dotted cup at the source, an undotted cap at the target.
    fn expand(&self, m1: Mask, m2: Mask, es: u8, et: u8, out: &mut Morph) {
        if self.dead {
            return;
        }
        let mut terms: SmallVec<[Mask; 4]> = smallvec![0];
        for c in &self.comps {
            let d = (m1 & c.in1).count_ones()
                + (m2 & c.in2).count_ones()
                + (es & c.src_loops).count_ones()
                + (!et & c.tgt_loops).count_ones();
            if d >= 2 {
                return;
            }
            if c.out == 0 {
                if d == 1 {
                    continue;
                }
                return;
            }
            if d == 1 {
                if c.out & self.pin != 0 {
                    return;
                }
                for t in terms.iter_mut() {
                    *t |= c.out;
                }
            } else {
                let mut choices: SmallVec<[Mask; 4]> = SmallVec::new();
                let mut rest = c.out;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest ^= bit;
                    let v = c.out ^ bit;
                    if v & self.pin == 0 {
                        choices.push(v);
                    }
                }
                if choices.is_empty() {
                    return;
                }
                if choices.len() == 1 {
                    for t in terms.iter_mut() {
                        *t |= choices[0];
                    }
                } else {
                    let mut next = SmallVec::with_capacity(terms.len() * choices.len());
                    for &t in &terms {
                        for &v in &choices {
                            next.push(t | v);
                        }
                    }
                    terms = next;
                }
            }
        }
        for t in terms {
            out.toggle(t);
        }
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let nx = self.0[y];
            self.0[y] = r;
            y = nx;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Pieces of a surface and their gluings, reduced to neck-cutting components.
struct SurfaceBuilder {
    dsu: Dsu,
    /// per piece: 0 = first morphism disk, 1 = second morphism disk, 2 = other
    kind: Vec<(u8, usize)>,
    seg_glue: Vec<(usize, usize)>,
    src_loop_piece: Vec<usize>,
    tgt_loop_piece: Vec<usize>,
    out_piece: Vec<usize>,
}

impl SurfaceBuilder {
    fn new(kind: Vec<(u8, usize)>) -> Self {
        let n = kind.len();
        SurfaceBuilder {
            dsu: Dsu::new(n + 8),
            kind,
            seg_glue: vec![],
            src_loop_piece: vec![],
            tgt_loop_piece: vec![],
            out_piece: vec![],
        }
    }

    fn glue(&mut self, a: usize, b: usize) {
        self.dsu.union(a, b);
        self.seg_glue.push((a, b));
    }

    fn finish(mut self, pin_cycle: Option<usize>) -> Plan {
        let n = self.kind.len();
        // cups and caps become extra pieces glued along circles
        let mut pieces = n;
        let mut extra: Vec<(usize, bool, usize)> = vec![];
        for (i, &p) in self.src_loop_piece.iter().enumerate() {
            extra.push((pieces, true, i));
            self.dsu.union(pieces, p);
            pieces += 1;
        }
        for (i, &p) in self.tgt_loop_piece.iter().enumerate() {
            extra.push((pieces, false, i));
            self.dsu.union(pieces, p);
            pieces += 1;
        }
        let mut comp_of: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comps: Vec<Comp> = vec![];
        let mut chi: Vec<i64> = vec![];
        let mut k: Vec<i64> = vec![];
        let mut get = |r: usize, comps: &mut Vec<Comp>, chi: &mut Vec<i64>, k: &mut Vec<i64>| -> usize {
            *comp_of.entry(r).or_insert_with(|| {
                comps.push(Comp::default());
                chi.push(0);
                k.push(0);
                comps.len() - 1
            })
        };
        for p in 0..n {
            let r = self.dsu.find(p);
            let c = get(r, &mut comps, &mut chi, &mut k);
            chi[c] += 1;
            match self.kind[p] {
                (0, i) => comps[c].in1 |= 1 << i,
                (1, i) => comps[c].in2 |= 1 << i,
                _ => {}
            }
        }
        for &(piece, src, i) in &extra {
            let r = self.dsu.find(piece);
            let c = get(r, &mut comps, &mut chi, &mut k);
            chi[c] += 1;
            if src {
                comps[c].src_loops |= 1 << i;
            } else {
                comps[c].tgt_loops |= 1 << i;
            }
        }
        for &(a, _) in &self.seg_glue {
            let r = self.dsu.find(a);
            let c = get(r, &mut comps, &mut chi, &mut k);
            chi[c] -= 1;
        }
        for (j, &p) in self.out_piece.iter().enumerate() {
            let r = self.dsu.find(p);
            let c = get(r, &mut comps, &mut chi, &mut k);
            comps[c].out |= 1 << j;
            k[c] += 1;
        }
        let mut dead = false;
        for c in 0..comps.len() {
            let two_g = 2 - k[c] - chi[c];
            debug_assert!(two_g >= 0 && two_g % 2 == 0, "bad surface: chi {} k {}", chi[c], k[c]);
            if two_g > 0 {
                dead = true;
            }
        }
        Plan { dead, comps, pin: pin_cycle.map_or(0, |c| 1 << c) }
    }
}

/// Crossingless matchings of the current boundary, interned.
#[derive(Default)]
struct Matchings {
    list: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, u32>,
}

impl Matchings {
    fn intern(&mut self, m: Vec<u8>) -> u32 {
        if let Some(&i) = self.index.get(&m) {
            return i;
        }
        let i = self.list.len() as u32;
        self.index.insert(m.clone(), i);
        self.list.push(m);
        i
    }
}

#[derive(Clone, Copy, Debug)]
struct Obj {
    mid: u32,
    h: i32,
    q: i32,
}

#[derive(Default)]
struct Complex {
    objs: Vec<Option<Obj>>,
    out: Vec<BTreeMap<u32, Morph>>,
    inn: Vec<BTreeSet<u32>>,
    live: usize,
}

impl Complex {
    fn push(&mut self, o: Obj) -> u32 {
        self.objs.push(Some(o));
        self.out.push(BTreeMap::new());
        self.inn.push(BTreeSet::new());
        self.live += 1;
        (self.objs.len() - 1) as u32
    }

    fn add_edge(&mut self, i: u32, j: u32, f: &Morph) {
        if f.is_zero() {
            return;
        }
        let e = self.out[i as usize].entry(j).or_default();
        e.add(f);
        if e.is_zero() {
            self.out[i as usize].remove(&j);
            self.inn[j as usize].remove(&i);
        } else {
            self.inn[j as usize].insert(i);
        }
    }

    fn remove(&mut self, i: u32) {
        let outs: Vec<u32> = self.out[i as usize].keys().copied().collect();
        for j in outs {
            self.inn[j as usize].remove(&i);
        }
        let ins: Vec<u32> = self.inn[i as usize].iter().copied().collect();
        for w in ins {
            self.out[w as usize].remove(&i);
        }
        self.out[i as usize].clear();
        self.inn[i as usize].clear();
        self.objs[i as usize] = None;
        self.live -= 1;
    }
}

/// Geometry of adding one crossing to the current boundary.
struct Step {
    m: usize,
    /// glue partner of every node: old boundary points are `0..m`, slots are `m..m+4`
    glue: Vec<Option<usize>>,
    /// index in the new boundary for nodes that stay on the boundary
    new_pos: Vec<Option<u8>>,
    new_len: usize,
}

/// The two smoothings: 0 joins slots (0,1),(2,3); 1 joins (0,3),(1,2).
const SMOOTH: [[usize; 4]; 2] = [[1, 0, 3, 2], [3, 2, 1, 0]];

struct Composed {
    matching: Vec<u8>,
    /// one node on each closed loop
    loops: Vec<usize>,
}

impl Step {
    fn arc(&self, a: &[u8], s: usize, n: usize) -> usize {
        if n < self.m {
            a[n] as usize
        } else {
            self.m + SMOOTH[s][n - self.m]
        }
    }

    fn compose(&self, a: &[u8], s: usize) -> Composed {
        let total = self.m + 4;
        let mut seen = vec![false; total];
        let mut matching = vec![0u8; self.new_len];
        for x in 0..total {
            let Some(px) = self.new_pos[x] else { continue };
            if seen[x] {
                continue;
            }
            let mut cur = x;
            loop {
                seen[cur] = true;
                let nx = self.arc(a, s, cur);
                seen[nx] = true;
                match self.glue[nx] {
                    None => {
                        let pn = self.new_pos[nx].expect("open end is on the boundary");
                        matching[px as usize] = pn;
                        matching[pn as usize] = px;
                        break;
                    }
                    Some(g) => cur = g,
                }
            }
        }
        let mut loops = vec![];
        for y in 0..total {
            if seen[y] {
                continue;
            }
            loops.push(y);
            let mut cur = y;
            loop {
                seen[cur] = true;
                let nx = self.arc(a, s, cur);
                seen[nx] = true;
                let g = self.glue[nx].expect("loop nodes are glued");
                if g == y {
                    break;
                }
                cur = g;
            }
        }
        Composed { matching, loops }
    }
}

/// Options for the scanning engine.
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub max_objects: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { max_objects: 5_000_000 }
    }
}

/// Order in which crossings are absorbed: start at `first`, then always the
/// crossing sharing the most arcs with the current boundary, preferring arcs that
/// have been open longest. Returns the order and its boundary cost.
fn crossing_order(t: &[[u32; 4]], first: usize) -> (Vec<usize>, (usize, f64)) {
    let n = t.len();
    let mut done = vec![false; n];
    // open arc -> step at which it opened
    let mut open: HashMap<u32, usize> = HashMap::new();
    let mut order = vec![];
    let mut next = first;
    let (mut widest, mut work) = (0usize, 0f64);
    for step in 0..n {
        done[next] = true;
        order.push(next);
        for &a in &t[next] {
            if open.remove(&a).is_none() {
                open.insert(a, step);
            }
        }
        widest = widest.max(open.len());
        work += 2f64.powf(open.len() as f64 / 2.0);
        let mut best: Option<(usize, (usize, usize))> = None;
        for (c, tc) in t.iter().enumerate() {
            if done[c] {
                continue;
            }
            let ages: Vec<usize> = tc.iter().filter_map(|a| open.get(a).copied()).collect();
            let key = (ages.len(), usize::MAX - ages.iter().min().copied().unwrap_or(usize::MAX));
            if best.is_none_or(|(_, b)| key > b) {
                best = Some((c, key));
            }
        }
        if let Some((c, _)) = best {
            next = c;
        }
    }
    (order, (widest, work))
}

/// The cheapest greedy order over all starting crossings.
fn best_order(t: &[[u32; 4]]) -> Vec<usize> {
    (0..t.len())
        .map(|s| crossing_order(t, s))
        .min_by(|a, b| a.1 .0.cmp(&b.1 .0).then(a.1 .1.total_cmp(&b.1 .1)))
        .map(|(o, _)| o)
        .unwrap_or_default()
}

/// Reduced Khovanov homology as a map `(h, q) -> dim`.
pub fn reduced_kh_scan(d: &PlanarDiagram, opts: &ScanOptions) -> Result<BTreeMap<(i32, i32), usize>> {
    if d.num_crossings() == 0 {
        return Ok(unlink_table(d.free_loops()));
    }
    let bp = d.basepoint().ok_or_else(|| Error::Unsupported("diagram has no basepoint".into()))?;
    let mut t: Vec<[u32; 4]> = d.crossings().to_vec();
    let max = d.max_label();
    let (pin, pout) = (max + 1, max + 2);
    let ends = d.arc_ends(bp);
    t[ends[0].0][ends[0].1] = pin;
    t[ends[1].0][ends[1].1] = pout;
    let order = best_order(&t);

    let mut boundary: Vec<u32> = vec![];
    let mut matchings = Matchings::default();
    matchings.intern(vec![]);
    let mut cx = Complex::default();
    cx.push(Obj { mid: 0, h: 0, q: 0 });

    for &c in &order {
        let tc = t[c];
        let m = boundary.len();
        let pos_of: HashMap<u32, usize> = boundary.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut glue = vec![None; m + 4];
        for k in 0..4 {
            if let Some(&i) = pos_of.get(&tc[k]) {
                glue[m + k] = Some(i);
                glue[i] = Some(m + k);
            } else if let Some(k2) = (0..4).find(|&k2| k2 != k && tc[k2] == tc[k]) {
                glue[m + k] = Some(m + k2);
            }
        }
        let mut new_labels: Vec<(u32, usize)> = vec![];
        for (i, &a) in boundary.iter().enumerate() {
            if glue[i].is_none() {
                new_labels.push((a, i));
            }
        }
        for k in 0..4 {
            if glue[m + k].is_none() {
                new_labels.push((tc[k], m + k));
            }
        }
        new_labels.sort();
        let mut new_pos = vec![None; m + 4];
        for (j, &(_, node)) in new_labels.iter().enumerate() {
            new_pos[node] = Some(j as u8);
        }
        let step = Step { m, glue, new_pos, new_len: new_labels.len() };
        let new_boundary: Vec<u32> = new_labels.iter().map(|&(a, _)| a).collect();
        let pin_new = new_boundary.iter().position(|&a| a == pin);
        if step.new_len > 120 {
            return Err(Error::Budget(format!("boundary of {} points is too wide to scan", step.new_len)));
        }

        let mut new_match = Matchings::default();
        let mut composed: HashMap<(u32, usize), (u32, Vec<usize>)> = HashMap::new();
        let mut compose = |mid: u32, s: usize, new_match: &mut Matchings| -> (u32, Vec<usize>) {
            composed
                .entry((mid, s))
                .or_insert_with(|| {
                    let r = step.compose(&matchings.list[mid as usize], s);
                    (new_match.intern(r.matching), r.loops)
                })
                .clone()
        };

        // Old boundary points belong to the disk of their cycle, slots to the crossing's strips or saddle.
        let mut plans: HashMap<(u32, u32, usize, bool), Plan> = HashMap::new();
        let build_plan = |a_mid: u32,
                              b_mid: u32,
                              s_src: usize,
                              s_tgt: usize,
                              saddle: bool,
                              new_match: &mut Matchings,
                              compose: &mut dyn FnMut(u32, usize, &mut Matchings) -> (u32, Vec<usize>)|
         -> Plan {
            let a = &matchings.list[a_mid as usize];
            let b = &matchings.list[b_mid as usize];
            let (nc, cyc) = cycles(a, b);
            let (src_mid, src_loops) = compose(a_mid, s_src, new_match);
            let (tgt_mid, tgt_loops) = compose(b_mid, s_tgt, new_match);
            let mut kind: Vec<(u8, usize)> = (0..nc).map(|i| (0u8, i)).collect();
            let s_base = kind.len();
            let spiece = |k: usize| -> usize {
                if saddle {
                    s_base
                } else {
                    s_base + strip_index(s_src, k)
                }
            };
            if saddle {
                kind.push((2, 0));
            } else {
                kind.push((2, 0));
                kind.push((2, 1));
            }
            let mut sb = SurfaceBuilder::new(kind);
            for k in 0..4 {
                match step.glue[m + k] {
                    Some(g) if g < m => sb.glue(cyc[g] as usize, spiece(k)),
                    Some(g) if g > m + k => sb.glue(spiece(k), spiece(g - m)),
                    _ => {}
                }
            }
            let piece_of = |node: usize| -> usize { if node < m { cyc[node] as usize } else { spiece(node - m) } };
            sb.src_loop_piece = src_loops.iter().map(|&n| piece_of(n)).collect();
            sb.tgt_loop_piece = tgt_loops.iter().map(|&n| piece_of(n)).collect();
            let (na, nb) = (&new_match.list[src_mid as usize], &new_match.list[tgt_mid as usize]);
            let (nout, out_cyc) = cycles(na, nb);
            let mut first_point = vec![usize::MAX; nout];
            for (p, &cid) in out_cyc.iter().enumerate() {
                if first_point[cid as usize] == usize::MAX {
                    first_point[cid as usize] = p;
                }
            }
            let node_at: Vec<usize> = new_labels.iter().map(|&(_, node)| node).collect();
            sb.out_piece = first_point.iter().map(|&p| piece_of(node_at[p])).collect();
            sb.finish(pin_new.map(|p| out_cyc[p] as usize))
        };

        // new objects
        let mut next = Complex::default();
        let mut base: Vec<[(u32, u32, usize); 2]> = vec![[(0, 0, 0); 2]; cx.objs.len()];
        for (i, o) in cx.objs.iter().enumerate() {
            let Some(o) = o else { continue };
            for s in 0..2 {
                let (mid, loops) = compose(o.mid, s, &mut new_match);
                let l = loops.len();
                let first = next.objs.len() as u32;
                for eps in 0..(1u32 << l) {
                    let x = eps.count_ones() as i32;
                    next.push(Obj { mid, h: o.h + s as i32, q: o.q + (l as i32 - 2 * x) + s as i32 });
                }
                base[i][s] = (first, mid, l);
            }
            if next.live > opts.max_objects {
                return Err(Error::Budget(format!(
                    "scanning complex exceeded {} objects; raise --max-generators",
                    opts.max_objects
                )));
            }
        }
        // tensored old differentials
        for i in 0..cx.objs.len() {
            let Some(oi) = cx.objs[i] else { continue };
            let edges: Vec<(u32, Morph)> = cx.out[i].iter().map(|(&j, f)| (j, f.clone())).collect();
            for (j, f) in edges {
                let oj = cx.objs[j as usize].expect("edge to live object");
                for s in 0..2 {
                    let key = (oi.mid, oj.mid, s, false);
                    if !plans.contains_key(&key) {
                        let p = build_plan(oi.mid, oj.mid, s, s, false, &mut new_match, &mut compose);
                        plans.insert(key, p);
                    }
                    let plan = &plans[&key];
                    let (fs, _, ls) = base[i][s];
                    let (ft, _, lt) = base[j as usize][s];
                    for es in 0..(1u8 << ls) {
                        for et in 0..(1u8 << lt) {
                            let mut g = Morph::default();
                            for &mm in &f.0 {
                                plan.expand(mm, 0, es, et, &mut g);
                            }
                            next.add_edge(fs + es as u32, ft + et as u32, &g);
                        }
                    }
                }
            }
        }
        // saddles
        for i in 0..cx.objs.len() {
            let Some(oi) = cx.objs[i] else { continue };
            let key = (oi.mid, oi.mid, 0, true);
            if !plans.contains_key(&key) {
                let p = build_plan(oi.mid, oi.mid, 0, 1, true, &mut new_match, &mut compose);
                plans.insert(key, p);
            }
            let plan = &plans[&key];
            let (fs, _, ls) = base[i][0];
            let (ft, _, lt) = base[i][1];
            for es in 0..(1u8 << ls) {
                for et in 0..(1u8 << lt) {
                    let mut g = Morph::default();
                    plan.expand(0, 0, es, et, &mut g);
                    next.add_edge(fs + es as u32, ft + et as u32, &g);
                }
            }
        }
        drop(plans);
        boundary = new_boundary;
        matchings = new_match;
        eliminate(&mut next, &matchings, pin_new);
        cx = compact(next);
    }

    debug_assert_eq!(boundary.len(), 2);
    let mut dims: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for (i, o) in cx.objs.iter().enumerate() {
        let Some(o) = o else { continue };
        if !cx.out[i].is_empty() {
            return Err(Error::Unsupported("scanning left a non-invertible differential".into()));
        }
        let h = o.h - d.n_minus() as i32;
        let q = o.q + d.n_plus() as i32 - 2 * d.n_minus() as i32;
        *dims.entry((h, q)).or_default() += 1;
    }
    Ok(tensor_loops(dims, d.free_loops()))
}

fn strip_index(s: usize, k: usize) -> usize {
    // the strip containing slot k: smoothing 0 pairs (0,1),(2,3); smoothing 1 pairs (0,3),(1,2)
    match (s, k) {
        (0, 0) | (0, 1) => 0,
        (0, _) => 1,
        (_, 0) | (_, 3) => 0,
        _ => 1,
    }
}

/// Inverse of `1 + N` in the dot algebra of one matching, where `N` is nilpotent.
fn invert_unit(f: &Morph) -> Morph {
    let n: Vec<Mask> = f.0.iter().copied().filter(|&m| m != 0).collect();
    let mut inv = Morph(smallvec![0]);
    let mut power = Morph(smallvec![0]);
    while !power.is_zero() {
        let mut next = Morph::default();
        for &a in &power.0 {
            for &b in &n {
                if a & b == 0 {
                    next.toggle(a | b);
                }
            }
        }
        inv.add(&next);
        power = next;
    }
    inv
}

fn is_unit(f: &Morph) -> bool {
    f.0.first() == Some(&0)
}

/// Cancel every invertible entry between objects with the same matching.
fn eliminate(cx: &mut Complex, matchings: &Matchings, pin: Option<usize>) {
    let mut comp_plans: HashMap<(u32, u32, u32), Plan> = HashMap::new();
    let mut work: Vec<(u32, u32)> = vec![];
    for i in 0..cx.objs.len() {
        let Some(oi) = cx.objs[i] else { continue };
        for (&j, f) in &cx.out[i] {
            if is_unit(f) && cx.objs[j as usize].is_some_and(|oj| oj.mid == oi.mid) {
                work.push((i as u32, j));
            }
        }
    }
    work.reverse();
    let compose = |plans: &mut HashMap<(u32, u32, u32), Plan>, a: u32, b: u32, c: u32, f: &Morph, g: &Morph| {
        let plan = plans.entry((a, b, c)).or_insert_with(|| composition_plan(matchings, a, b, c, pin));
        let mut h = Morph::default();
        for &m1 in &f.0 {
            for &m2 in &g.0 {
                plan.expand(m1, m2, 0, 0, &mut h);
            }
        }
        h
    };
    while let Some((i, j)) = work.pop() {
        let (Some(oi), Some(oj)) = (cx.objs[i as usize], cx.objs[j as usize]) else { continue };
        let Some(phi) = cx.out[i as usize].get(&j).filter(|f| oi.mid == oj.mid && is_unit(f)) else { continue };
        let psi = if phi.is_identity() { None } else { Some(invert_unit(phi)) };
        let a = oj.mid;
        let ws: Vec<u32> = cx.inn[j as usize].iter().copied().filter(|&w| w != i).collect();
        let zs: Vec<(u32, Morph)> =
            cx.out[i as usize].iter().filter(|(&z, _)| z != j).map(|(&z, f)| (z, f.clone())).collect();
        for &w in &ws {
            let ow = cx.objs[w as usize].expect("live");
            let mut f_wj = cx.out[w as usize][&j].clone();
            if let Some(psi) = &psi {
                f_wj = compose(&mut comp_plans, ow.mid, a, a, &f_wj, psi);
            }
            for (z, g_iz) in &zs {
                let oz = cx.objs[*z as usize].expect("live");
                let h = compose(&mut comp_plans, ow.mid, a, oz.mid, &f_wj, g_iz);
                if h.is_zero() {
                    continue;
                }
                cx.add_edge(w, *z, &h);
                if ow.mid == oz.mid && cx.out[w as usize].get(z).is_some_and(is_unit) {
                    work.push((w, *z));
                }
            }
        }
        cx.remove(i);
        cx.remove(j);
    }
}

fn composition_plan(matchings: &Matchings, a: u32, b: u32, c: u32, pin: Option<usize>) -> Plan {
    let (a, b, c) = (&matchings.list[a as usize], &matchings.list[b as usize], &matchings.list[c as usize]);
    let (n1, cab) = cycles(a, b);
    let (n2, cbc) = cycles(b, c);
    let mut kind: Vec<(u8, usize)> = (0..n1).map(|i| (0u8, i)).collect();
    kind.extend((0..n2).map(|i| (1u8, i)));
    let mut sb = SurfaceBuilder::new(kind);
    for p in 0..b.len() {
        if p < b[p] as usize {
            sb.glue(cab[p] as usize, n1 + cbc[p] as usize);
        }
    }
    let (nout, cac) = cycles(a, c);
    let mut first_point = vec![usize::MAX; nout];
    for (p, &cid) in cac.iter().enumerate() {
        if first_point[cid as usize] == usize::MAX {
            first_point[cid as usize] = p;
        }
    }
    sb.out_piece = first_point.iter().map(|&p| cab[p] as usize).collect();
    sb.finish(pin.map(|p| cac[p] as usize))
}

fn compact(cx: Complex) -> Complex {
    let mut map = vec![u32::MAX; cx.objs.len()];
    let mut out = Complex::default();
    for (i, o) in cx.objs.iter().enumerate() {
        if let Some(o) = o {
            map[i] = out.push(*o);
        }
    }
    for (i, edges) in cx.out.into_iter().enumerate() {
        if map[i] == u32::MAX {
            continue;
        }
        for (j, f) in edges {
            let (a, b) = (map[i], map[j as usize]);
            out.inn[b as usize].insert(a);
            out.out[a as usize].insert(b, f);
        }
    }
    out
}

/// Reduced homology of the crossingless unlink with `n` components.
pub(crate) fn unlink_table(n: usize) -> BTreeMap<(i32, i32), usize> {
    tensor_loops(BTreeMap::from([((0, 0), 1)]), n.saturating_sub(1))
}

/// Tensor with `(q + q^-1)` once per free loop.
pub(crate) fn tensor_loops(mut dims: BTreeMap<(i32, i32), usize>, loops: usize) -> BTreeMap<(i32, i32), usize> {
    for _ in 0..loops {
        let mut next = BTreeMap::new();
        for (&(h, q), &n) in &dims {
            *next.entry((h, q + 1)).or_default() += n;
            *next.entry((h, q - 1)).or_default() += n;
        }
        dims = next;
    }
    dims
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_of_identical_matchings() {
        let a = vec![1u8, 0, 3, 2];
        assert_eq!(cycles(&a, &a).0, 2);
        let b = vec![3u8, 2, 1, 0];
        assert_eq!(cycles(&a, &b).0, 1);
    }

    #[test]
    fn morph_xor() {
        let mut m = Morph::identity();
        m.toggle(3);
        m.toggle(0);
        assert_eq!(m.0.as_slice(), &[3]);
        m.add(&Morph(smallvec![3]));
        assert!(m.is_zero());
    }
}
