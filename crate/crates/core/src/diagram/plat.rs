//! Diagrams drawn as horizontal strands with crossings between neighbors.
//!
//! Positions are numbered top to bottom and time runs left to right. The left
//! side is either a set of cups or (for braid closures) joined to the right side.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::fragment::{box_crossing, Handedness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlatOp {
    /// Crossing between positions `pos` and `pos + 1`.
    Cross { pos: usize, hand: Handedness },
    /// An open box between `pos` and `pos + 1`, the attachment site of a filling.
    Slot { pos: usize },
}

#[derive(Clone, Debug)]
pub struct Plat {
    pub width: usize,
    /// Cup pairs on the left and cap pairs on the right; `None` means braid closure.
    pub caps: Option<(Vec<(usize, usize)>, Vec<(usize, usize)>)>,
    pub ops: Vec<PlatOp>,
}

#[derive(Clone, Debug)]
pub struct PlatOutput {
    pub crossings: Vec<[u32; 4]>,
    pub free_loops: usize,
    /// Slot boundary labels as `[NW, NE, SE, SW]` seen from the outside of the slot.
    pub slot: Option<[u32; 4]>,
    /// `(crossing, position)` pairs entered by a left-to-right strand.
    pub incoming: Vec<(usize, usize)>,
    /// Final label of the arc leaving the left edge at each position.
    pub start_labels: Vec<u32>,
}

struct Dsu(Vec<u32>);

impl Dsu {
    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        self.0[x as usize] = r;
        r
    }
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb) as usize] = ra.min(rb);
        }
    }
    fn fresh(&mut self) -> u32 {
        let n = self.0.len() as u32;
        self.0.push(n);
        n
    }
}

impl Plat {
    pub fn build(&self) -> PlatOutput {
        let m = self.width;
        let mut dsu = Dsu(vec![0]);
        let mut pend = vec![0u32; m];
        let mut start = vec![0u32; m];
        match &self.caps {
            None => {
                for p in 0..m {
                    pend[p] = dsu.fresh();
                    start[p] = pend[p];
                }
            }
            Some((cups, _)) => {
                for &(a, b) in cups {
                    let l = dsu.fresh();
                    pend[a] = l;
                    pend[b] = l;
                    start[a] = l;
                    start[b] = l;
                }
            }
        }
        let mut crossings = vec![];
        let mut incoming = vec![];
        let mut slot = None;
        for op in &self.ops {
            match *op {
                PlatOp::Cross { pos, hand } => {
                    let (tl, bl) = (pend[pos], pend[pos + 1]);
                    let (tr, br) = (dsu.fresh(), dsu.fresh());
                    let c = crossings.len();
                    crossings.push(box_crossing(tl, bl, br, tr, hand));
                    match hand {
                        Handedness::Right => incoming.extend([(c, 3), (c, 0)]),
                        Handedness::Left => incoming.extend([(c, 0), (c, 1)]),
                    }
                    pend[pos] = tr;
                    pend[pos + 1] = br;
                }
                PlatOp::Slot { pos } => {
                    let (l1, l2) = (pend[pos], pend[pos + 1]);
                    let (r1, r2) = (dsu.fresh(), dsu.fresh());
                    // A filling attaches its NW/SW to the left side of the slot.
                    slot = Some([r1, l1, l2, r2]);
                    pend[pos] = r1;
                    pend[pos + 1] = r2;
                }
            }
        }
        match &self.caps {
            None => {
                for p in 0..m {
                    dsu.union(pend[p], start[p]);
                }
            }
            Some((_, caps)) => {
                for &(a, b) in caps {
                    dsu.union(pend[a], pend[b]);
                }
            }
        }
        // Compact labels in order of first appearance.
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        let mut relabel = |x: u32, dsu: &mut Dsu| -> u32 {
            let r = dsu.find(x);
            let n = map.len() as u32 + 1;
            *map.entry(r).or_insert(n)
        };
        let mut out = vec![];
        for t in &crossings {
            let mut u = [0u32; 4];
            for i in 0..4 {
                u[i] = relabel(t[i], &mut dsu);
            }
            out.push(u);
        }
        let slot = slot.map(|s: [u32; 4]| s.map(|x| relabel(x, &mut dsu)));
        let start_labels: Vec<u32> = start.iter().map(|&x| relabel(x, &mut dsu)).collect();
        let used: BTreeSet<u32> = out.iter().flatten().chain(slot.iter().flatten()).copied().collect();
        let all: BTreeSet<u32> = start_labels.iter().copied().collect();
        let free_loops = all.iter().filter(|x| !used.contains(x)).count();
        PlatOutput { crossings: out, free_loops, slot, incoming, start_labels }
    }
}
