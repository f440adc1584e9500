//! Oriented planar diagrams in PD notation.
//!
//! Each crossing is a 4-tuple of arc labels read counterclockwise, starting
//! from the incoming under-strand:
//!
//! ```text
//!            c (out, under)
//!            |
//!   d ------ + ------ b        over strand runs d -> b (positive)
//!            |                             or b -> d (negative)
//!            a (in, under)
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

/// How to orient the components of a diagram that is being assembled.
#[derive(Clone, Debug)]
pub enum OrientRule {
    /// Follow the under-strand directions encoded by the tuples; error on conflicts.
    FromTuples,
    /// Follow the tuples where they agree, otherwise fall back to `LowestLabel`.
    FromTuplesLenient,
    /// Orient each component so that its lowest label is followed by the smaller neighbor.
    LowestLabel,
    /// `(crossing, position)` slots known to be entered by their strand.
    Incoming(Vec<(usize, usize)>),
}

/// An oriented link diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    crossings: Vec<[u32; 4]>,
    positive: Vec<bool>,
    components: Vec<Vec<u32>>,
    free_loops: usize,
    basepoint: Option<u32>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    /// Union keeping the smaller index as root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// One pass of a strand through a crossing: enters at `pos`, leaves at `pos + 2`.
#[derive(Clone, Copy, Debug)]
struct Pass {
    crossing: usize,
    enter: usize,
}

impl PlanarDiagram {
    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// The crossingless unlink with `n >= 1` components.
    pub fn unlink(n: usize) -> Self {
        assert!(n >= 1);
        PlanarDiagram { crossings: vec![], positive: vec![], components: vec![], free_loops: n, basepoint: None }
    }

    /// Assemble a diagram from tuples whose under-strand occupies positions 0 and 2
    /// (in either direction). Tuples are rotated so position 0 is the incoming under-strand.
    pub fn assemble(
        raw: Vec<[u32; 4]>,
        free_loops: usize,
        rule: &OrientRule,
        basepoint: Option<u32>,
        relabel: bool,
    ) -> Result<Self> {
        if raw.is_empty() {
            if free_loops == 0 {
                return Err(Error::NotClosable("empty diagram".into()));
            }
            return Ok(Self::unlink(free_loops));
        }
        let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, t) in raw.iter().enumerate() {
            for (p, &a) in t.iter().enumerate() {
                if a == 0 {
                    return Err(Error::Parse("arc labels must be positive".into()));
                }
                occ.entry(a).or_default().push((c, p));
            }
        }
        for (&a, v) in &occ {
            if v.len() != 2 {
                return Err(Error::ArcCount { arc: a, count: v.len() });
            }
        }
        if !is_planar(&raw, &occ) {
            return Err(Error::NotPlanar);
        }
        let other_end = |a: u32, c: usize, p: usize| -> (usize, usize) {
            let v = &occ[&a];
            if v[0] == (c, p) {
                v[1]
            } else {
                v[0]
            }
        };

        // Trace unoriented components starting from their smallest arc.
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let mut comps: Vec<(Vec<u32>, Vec<Pass>)> = vec![];
        for &start in occ.keys() {
            if seen.contains(&start) {
                continue;
            }
            let (c0, p0) = occ[&start][1];
            let mut arcs = vec![];
            let mut passes = vec![];
            let (mut c, mut p) = (c0, p0);
            let mut a = start;
            loop {
                if !seen.insert(a) {
                    return Err(Error::NotClosable(format!("arc {a} revisited")));
                }
                arcs.push(a);
                passes.push(Pass { crossing: c, enter: p });
                let out = (p + 2) % 4;
                let next = raw[c][out];
                let (nc, np) = other_end(next, c, out);
                if next == start && (nc, np) == (c0, p0) {
                    break;
                }
                if next == start {
                    return Err(Error::NotClosable(format!("arc {start} closes inconsistently")));
                }
                a = next;
                c = nc;
                p = np;
            }
            comps.push((arcs, passes));
        }

        // Choose a direction for each component: true keeps the traced direction.
        let incoming: BTreeSet<(usize, usize)> = match rule {
            OrientRule::Incoming(v) => v.iter().copied().collect(),
            _ => BTreeSet::new(),
        };
        let mut forward = vec![true; comps.len()];
        for (i, (arcs, passes)) in comps.iter().enumerate() {
            let by_tuples = || -> Option<std::result::Result<bool, ()>> {
                let mut vote: Option<bool> = None;
                for ps in passes {
                    let dir = match ps.enter {
                        0 => true,
                        2 => false,
                        _ => continue,
                    };
                    match vote {
                        None => vote = Some(dir),
                        Some(v) if v != dir => return Some(Err(())),
                        _ => {}
                    }
                }
                vote.map(Ok)
            };
            let lowest = || -> bool {
                // arcs[0] is the smallest label; traced successor is arcs[1], predecessor is last.
                if arcs.len() < 2 {
                    return true;
                }
                arcs[1] <= arcs[arcs.len() - 1]
            };
            forward[i] = match rule {
                OrientRule::LowestLabel => lowest(),
                OrientRule::FromTuples => match by_tuples() {
                    Some(Ok(d)) => d,
                    Some(Err(())) => {
                        return Err(Error::NotClosable(format!(
                            "component through arc {} has inconsistent under-strand directions",
                            arcs[0]
                        )))
                    }
                    None => lowest(),
                },
                OrientRule::FromTuplesLenient => match by_tuples() {
                    Some(Ok(d)) => d,
                    _ => lowest(),
                },
                OrientRule::Incoming(_) => {
                    let mut dir = None;
                    for ps in passes {
                        if incoming.contains(&(ps.crossing, ps.enter)) {
                            dir = Some(true);
                            break;
                        }
                        if incoming.contains(&(ps.crossing, (ps.enter + 2) % 4)) {
                            dir = Some(false);
                            break;
                        }
                    }
                    dir.unwrap_or_else(lowest)
                }
            };
        }

        // Oriented traversal per component, starting at the smallest label.
        let mut oriented: Vec<(Vec<u32>, Vec<Pass>)> = vec![];
        for (i, (arcs, passes)) in comps.into_iter().enumerate() {
            if forward[i] {
                oriented.push((arcs, passes));
            } else {
                // Reverse: arc k is now entered at the pass that previously exited it.
                let n = arcs.len();
                let mut ra = Vec::with_capacity(n);
                let mut rp = Vec::with_capacity(n);
                for k in 0..n {
                    let idx = (n - k) % n;
                    ra.push(arcs[idx]);
                    // traced pass idx-1 exited into arcs[idx]; reversed, arcs[idx] enters that crossing at its exit slot
                    let prev = passes[(idx + n - 1) % n];
                    rp.push(Pass { crossing: prev.crossing, enter: (prev.enter + 2) % 4 });
                }
                oriented.push((ra, rp));
            }
        }

        // Rotate tuples so that position 0 is the incoming under-strand; record over directions.
        let mut tuples = raw.clone();
        let mut under_in: Vec<Option<usize>> = vec![None; raw.len()];
        let mut over_in: Vec<Option<usize>> = vec![None; raw.len()];
        for (_, passes) in &oriented {
            for ps in passes {
                if ps.enter % 2 == 0 {
                    under_in[ps.crossing] = Some(ps.enter);
                } else {
                    over_in[ps.crossing] = Some(ps.enter);
                }
            }
        }
        let mut positive = vec![false; raw.len()];
        for c in 0..raw.len() {
            let u = under_in[c].expect("every crossing has an under pass");
            let o = over_in[c].expect("every crossing has an over pass");
            if u == 2 {
                tuples[c] = [raw[c][2], raw[c][3], raw[c][0], raw[c][1]];
            }
            let o_rot = if u == 2 { (o + 2) % 4 } else { o };
            positive[c] = o_rot == 3;
        }

        let mut comps: Vec<Vec<u32>> = oriented.into_iter().map(|(a, _)| a).collect();
        let mut basepoint = basepoint;
        if relabel {
            let mut map: HashMap<u32, u32> = HashMap::new();
            let mut next = 1u32;
            for comp in &mut comps {
                // Keep the traversal order but start the numbering at the smallest original label.
                let k = comp.iter().enumerate().min_by_key(|(_, &a)| a).map(|(i, _)| i).unwrap();
                comp.rotate_left(k);
                for a in comp.iter_mut() {
                    map.insert(*a, next);
                    *a = next;
                    next += 1;
                }
            }
            for t in &mut tuples {
                for a in t.iter_mut() {
                    *a = map[a];
                }
            }
            basepoint = basepoint.and_then(|b| map.get(&b).copied());
        } else {
            for comp in &mut comps {
                let k = comp.iter().enumerate().min_by_key(|(_, &a)| a).map(|(i, _)| i).unwrap();
                comp.rotate_left(k);
            }
        }
        comps.sort_by_key(|c| c[0]);
        let all: BTreeSet<u32> = comps.iter().flatten().copied().collect();
        let basepoint = match basepoint {
            Some(b) if all.contains(&b) => Some(b),
            _ => all.iter().next().copied(),
        };
        Ok(PlanarDiagram { crossings: tuples, positive, components: comps, free_loops, basepoint })
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    /// True iff crossing `c` is positive (over strand runs from position 3 to position 1).
    pub fn is_positive(&self, c: usize) -> bool {
        self.positive[c]
    }

    pub fn n_plus(&self) -> usize {
        self.positive.iter().filter(|&&p| p).count()
    }

    pub fn n_minus(&self) -> usize {
        self.positive.len() - self.n_plus()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    /// Components through crossings, each listed in traversal order from its smallest arc.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    /// Split crossingless unknotted components.
    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn num_components(&self) -> usize {
        self.components.len() + self.free_loops
    }

    pub fn basepoint(&self) -> Option<u32> {
        self.basepoint
    }

    pub fn with_basepoint(mut self, arc: u32) -> Result<Self> {
        if !self.arcs().contains(&arc) {
            return Err(Error::Parse(format!("basepoint arc {arc} not in diagram")));
        }
        self.basepoint = Some(arc);
        Ok(self)
    }

    pub fn arcs(&self) -> BTreeSet<u32> {
        self.crossings.iter().flatten().copied().collect()
    }

    pub fn max_label(&self) -> u32 {
        self.crossings.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Positions `(crossing, slot)` where `arc` ends.
    pub fn arc_ends(&self, arc: u32) -> Vec<(usize, usize)> {
        let mut v = vec![];
        for (c, t) in self.crossings.iter().enumerate() {
            for (p, &a) in t.iter().enumerate() {
                if a == arc {
                    v.push((c, p));
                }
            }
        }
        v
    }

    /// The endpoint `(crossing, slot)` at which the oriented strand along `arc` enters a crossing.
    pub fn arc_head(&self, arc: u32) -> Option<(usize, usize)> {
        self.arc_ends(arc).into_iter().find(|&(c, p)| {
            p == 0 || (p == 3 && self.positive[c]) || (p == 1 && !self.positive[c])
        })
    }

    /// Index of the component containing `arc`.
    pub fn component_of(&self, arc: u32) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&arc))
    }

    /// Reverse all crossings.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.positive)
            .map(|(t, &pos)| if pos { [t[3], t[0], t[1], t[2]] } else { [t[1], t[2], t[3], t[0]] })
            .collect();
        PlanarDiagram {
            crossings,
            positive: self.positive.iter().map(|p| !p).collect(),
            components: self.components.clone(),
            free_loops: self.free_loops,
            basepoint: self.basepoint,
        }
    }

    /// Reverse the orientation of component `i`.
    pub fn reverse_component(&self, i: usize) -> Result<Self> {
        let comp = self.components.get(i).ok_or(Error::OutOfRange { index: i, size: self.components.len() })?;
        let mut incoming = vec![];
        for (c, t) in self.crossings.iter().enumerate() {
            // Slots of other components keep their direction; this one flips.
            let mine = |p: usize| comp.contains(&t[p]) && comp.contains(&t[(p + 2) % 4]);
            if mine(0) {
                incoming.push((c, 2));
            } else {
                incoming.push((c, 0));
            }
            let over_in = if self.positive[c] { 3 } else { 1 };
            if mine(1) {
                incoming.push((c, (over_in + 2) % 4));
            } else {
                incoming.push((c, over_in));
            }
        }
        PlanarDiagram::assemble(
            self.crossings.clone(),
            self.free_loops,
            &OrientRule::Incoming(incoming),
            self.basepoint,
            false,
        )
    }

    /// Replace crossing `c` by its 0- or 1-smoothing. The 0-smoothing joins slots (0,1) and (2,3).
    pub fn resolve_crossing(&self, c: usize, kind: u8) -> Result<Self> {
        if c >= self.crossings.len() {
            return Err(Error::OutOfRange { index: c, size: self.crossings.len() });
        }
        if kind > 1 {
            return Err(Error::Parse(format!("smoothing kind must be 0 or 1, got {kind}")));
        }
        let t = self.crossings[c];
        let pairs = if kind == 0 { [(t[0], t[1]), (t[2], t[3])] } else { [(t[0], t[3]), (t[1], t[2])] };
        let max = self.max_label() as usize;
        let mut uf = UnionFind::new(max + 1);
        for (a, b) in pairs {
            uf.union(a as usize, b as usize);
        }
        let rest: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != c)
            .map(|(_, t)| {
                let mut t = *t;
                for a in t.iter_mut() {
                    *a = uf.find(*a as usize) as u32;
                }
                t
            })
            .collect();
        let present: BTreeSet<u32> = rest.iter().flatten().copied().collect();
        let mut roots: BTreeSet<u32> = BTreeSet::new();
        for a in t {
            roots.insert(uf.find(a as usize) as u32);
        }
        let new_loops = roots.iter().filter(|r| !present.contains(r)).count();
        let bp = self.basepoint.map(|b| uf.find(b as usize) as u32);
        PlanarDiagram::assemble(rest, self.free_loops + new_loops, &OrientRule::FromTuplesLenient, bp, false)
    }

    /// Circles of the smoothing selected by `v` (bit `c` set = 1-smoothing at crossing `c`).
    /// Returns the circle count (free loops included) and each arc's circle, circles numbered
    /// by their smallest arc label.
    pub fn smoothing_circles(&self, v: &[bool]) -> Result<(usize, BTreeMap<u32, usize>)> {
        if v.len() != self.crossings.len() {
            return Err(Error::OutOfRange { index: v.len(), size: self.crossings.len() });
        }
        let max = self.max_label() as usize;
        let mut uf = UnionFind::new(max + 1);
        for (c, t) in self.crossings.iter().enumerate() {
            if v[c] {
                uf.union(t[0] as usize, t[3] as usize);
                uf.union(t[1] as usize, t[2] as usize);
            } else {
                uf.union(t[0] as usize, t[1] as usize);
                uf.union(t[2] as usize, t[3] as usize);
            }
        }
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut out = BTreeMap::new();
        for a in self.arcs() {
            let r = uf.find(a as usize);
            let n = index.len();
            let id = *index.entry(r).or_insert(n);
            out.insert(a, id);
        }
        Ok((index.len() + self.free_loops, out))
    }

    /// True if the two diagrams have the same crossings in the same order after
    /// some bijective relabeling of arcs (orientation of each under-strand ignored).
    pub fn same_up_to_relabeling(&self, other: &PlanarDiagram) -> bool {
        if self.crossings.len() != other.crossings.len() || self.free_loops != other.free_loops {
            return false;
        }
        let mut fwd: HashMap<u32, u32> = HashMap::new();
        let mut bwd: HashMap<u32, u32> = HashMap::new();
        fn try_bind(fwd: &mut HashMap<u32, u32>, bwd: &mut HashMap<u32, u32>, a: u32, b: u32) -> bool {
            match (fwd.get(&a), bwd.get(&b)) {
                (None, None) => {
                    fwd.insert(a, b);
                    bwd.insert(b, a);
                    true
                }
                (Some(&x), Some(&y)) => x == b && y == a,
                _ => false,
            }
        }
        for (s, o) in self.crossings.iter().zip(&other.crossings) {
            let rotations = [*o, [o[2], o[3], o[0], o[1]]];
            let mut ok = false;
            for r in rotations {
                let (mut f2, mut b2) = (fwd.clone(), bwd.clone());
                if (0..4).all(|i| try_bind(&mut f2, &mut b2, s[i], r[i])) {
                    fwd = f2;
                    bwd = b2;
                    ok = true;
                    break;
                }
            }
            if !ok {
                return false;
            }
        }
        true
    }

    /// PD tuples as emitted in JSON.
    pub fn pd_code(&self) -> Vec<[u32; 4]> {
        self.crossings.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> PlanarDiagram {
        PlanarDiagram::assemble(
            vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]],
            0,
            &OrientRule::FromTuples,
            None,
            false,
        )
        .unwrap()
    }

    #[test]
    fn hopf_link_components() {
        let d = PlanarDiagram::assemble(vec![[1, 3, 2, 4], [3, 1, 4, 2]], 0, &OrientRule::FromTuples, None, false)
            .unwrap();
        assert_eq!(d.num_crossings(), 2);
        assert_eq!(d.num_components(), 2);
    }

    #[test]
    fn trefoil_signs_and_circles() {
        let d = trefoil();
        assert_eq!(d.num_components(), 1);
        assert!(d.n_plus() == 3 || d.n_minus() == 3);
        let (all0, _) = d.smoothing_circles(&[false; 3]).unwrap();
        let (all1, _) = d.smoothing_circles(&[true; 3]).unwrap();
        let mut counts = [all0, all1];
        counts.sort();
        assert_eq!(counts, [2, 3]);
    }

    #[test]
    fn mirror_is_involution() {
        let d = trefoil();
        let m = d.mirror();
        assert_eq!(m.n_plus(), d.n_minus());
        assert_eq!(m.mirror(), d);
    }

    #[test]
    fn resolving_a_kink() {
        let d = PlanarDiagram::assemble(vec![[1, 1, 2, 2]], 0, &OrientRule::FromTuples, None, false).unwrap();
        assert_eq!(d.num_components(), 1);
        let a = d.resolve_crossing(0, 0).unwrap();
        let b = d.resolve_crossing(0, 1).unwrap();
        let mut comps = [a.num_components(), b.num_components()];
        comps.sort();
        assert_eq!(comps, [1, 2]);
        assert_eq!(a.num_crossings(), 0);
    }

    #[test]
    fn bad_inputs() {
        let e = PlanarDiagram::assemble(vec![[1, 2, 3, 4]], 0, &OrientRule::FromTuples, None, false);
        assert!(matches!(e, Err(Error::ArcCount { .. })));
        assert!(matches!(d_or_err(), Err(Error::NotClosable(_))));
        fn d_or_err() -> Result<PlanarDiagram> {
            // under strand 1 -> 2 at both crossings of a component running 1 -> 2 -> 1
            PlanarDiagram::assemble(vec![[1, 3, 2, 4], [1, 4, 2, 3]], 0, &OrientRule::FromTuples, None, false)
        }
    }
}

/// Euler characteristic check: each connected piece of a 4-valent projection with
/// `m` vertices is planar exactly when face tracing finds `m + 2` boundary cycles.
fn is_planar(raw: &[[u32; 4]], occ: &BTreeMap<u32, Vec<(usize, usize)>>) -> bool {
    let n = raw.len();
    let other = |c: usize, p: usize| -> (usize, usize) {
        let v = &occ[&raw[c][p]];
        if v[0] == (c, p) {
            v[1]
        } else {
            v[0]
        }
    };
    let mut seen = vec![[false; 4]; n];
    let mut faces = 0;
    for c in 0..n {
        for p in 0..4 {
            if seen[c][p] {
                continue;
            }
            let (mut cc, mut pp) = (c, p);
            while !seen[cc][pp] {
                seen[cc][pp] = true;
                (cc, pp) = other(cc, (pp + 3) % 4);
            }
            faces += 1;
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut pieces = n;
    for v in occ.values() {
        let (a, b) = (find(&mut parent, v[0].0), find(&mut parent, v[1].0));
        if a != b {
            parent[a.max(b)] = a.min(b);
            pieces -= 1;
        }
    }
    faces == n + 2 * pieces
}
