//! Four-ended tangle fragments, rational tangles and their closures.
//!
//! A fragment is a set of crossings (under-strand at positions 0 and 2, direction
//! unspecified) plus four boundary arcs NW, NE, SE, SW. An arc joining two
//! boundary points without crossings carries the same label at both ends.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::diagram::slope::RationalSlope;
use crate::error::{Error, Result};

/// Corner of a fragment's boundary square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum End {
    NW,
    NE,
    SE,
    SW,
}

impl End {
    pub const ALL: [End; 4] = [End::NW, End::NE, End::SE, End::SW];

    fn idx(self) -> usize {
        match self {
            End::NW => 0,
            End::NE => 1,
            End::SE => 2,
            End::SW => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            End::NW => "NW",
            End::NE => "NE",
            End::SE => "SE",
            End::SW => "SW",
        }
    }

    pub fn parse(s: &str) -> Result<End> {
        match s {
            "NW" => Ok(End::NW),
            "NE" => Ok(End::NE),
            "SE" => Ok(End::SE),
            "SW" => Ok(End::SW),
            _ => Err(Error::Template(format!("unknown end '{s}'"))),
        }
    }
}

/// Crossing handedness of a horizontal twist. Right-handed: the strand from
/// top-left to bottom-right passes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Handedness {
    #[serde(rename = "right-handed")]
    Right,
    #[serde(rename = "left-handed")]
    Left,
}

impl Handedness {
    pub fn flip(self) -> Self {
        match self {
            Handedness::Right => Handedness::Left,
            Handedness::Left => Handedness::Right,
        }
    }
}

/// Crossing inside a box with corners TL, BL, BR, TR (counterclockwise).
pub(crate) fn box_crossing(tl: u32, bl: u32, br: u32, tr: u32, hand: Handedness) -> [u32; 4] {
    match hand {
        // under strand BL -> TR
        Handedness::Right => [bl, br, tr, tl],
        // under strand TL -> BR
        Handedness::Left => [tl, bl, br, tr],
    }
}

/// A four-ended tangle diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fragment {
    pub crossings: Vec<[u32; 4]>,
    ends: [u32; 4],
}

struct Dsu(BTreeMap<u32, u32>);

impl Dsu {
    fn find(&mut self, x: u32) -> u32 {
        let p = *self.0.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0.insert(x, r);
        r
    }
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0.insert(hi, lo);
        }
    }
}

/// Result of closing fragments into a link diagram.
#[derive(Clone, Debug)]
pub struct Closed {
    pub crossings: Vec<[u32; 4]>,
    pub free_loops: usize,
    /// Image of each input label after boundary identification.
    pub label_map: BTreeMap<u32, u32>,
}

impl Fragment {
    pub fn new(crossings: Vec<[u32; 4]>, ends: [u32; 4]) -> Result<Self> {
        let f = Fragment { crossings, ends };
        f.check()?;
        Ok(f)
    }

    pub fn end(&self, e: End) -> u32 {
        self.ends[e.idx()]
    }

    pub fn ends(&self) -> [u32; 4] {
        self.ends
    }

    fn check(&self) -> Result<()> {
        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for &a in self.crossings.iter().flatten().chain(self.ends.iter()) {
            if a == 0 {
                return Err(Error::Template("arc labels must be positive".into()));
            }
            *count.entry(a).or_default() += 1;
        }
        for (a, c) in count {
            if c != 2 {
                return Err(Error::Template(format!(
                    "arc {a} has {c} endpoints counting boundary points (expected 2)"
                )));
            }
        }
        Ok(())
    }

    pub fn max_label(&self) -> u32 {
        self.crossings.iter().flatten().chain(self.ends.iter()).copied().max().unwrap_or(0)
    }

    pub fn labels(&self) -> BTreeSet<u32> {
        self.crossings.iter().flatten().chain(self.ends.iter()).copied().collect()
    }

    /// Rational tangle [0]: arcs NW-NE and SW-SE.
    pub fn zero() -> Self {
        Fragment { crossings: vec![], ends: [1, 1, 2, 2] }
    }

    /// Rational tangle [∞]: arcs NW-SW and NE-SE.
    pub fn infinity() -> Self {
        Fragment { crossings: vec![], ends: [1, 2, 2, 1] }
    }

    fn fresh(&self) -> u32 {
        self.max_label() + 1
    }

    /// Add `|k|` half-twists between NE and SE; `k > 0` uses `hand` crossings.
    pub fn twist_horizontal(&mut self, k: i64, hand: Handedness) {
        let h = if k > 0 { hand } else { hand.flip() };
        for _ in 0..k.unsigned_abs() {
            let (tl, bl) = (self.ends[1], self.ends[2]);
            let tr = self.fresh();
            let br = tr + 1;
            self.crossings.push(box_crossing(tl, bl, br, tr, h));
            self.ends[1] = tr;
            self.ends[2] = br;
        }
    }

    /// Add `|k|` half-twists between SW and SE. With right-handed conventions
    /// the fraction `F` becomes `1 / (1/F + k)`.
    pub fn twist_vertical(&mut self, k: i64, hand: Handedness) {
        let h = if k > 0 { hand } else { hand.flip() };
        for _ in 0..k.unsigned_abs() {
            let (tl, tr) = (self.ends[3], self.ends[2]);
            let bl = self.fresh();
            let br = bl + 1;
            self.crossings.push(box_crossing(tl, bl, br, tr, h));
            self.ends[3] = bl;
            self.ends[2] = br;
        }
    }

    /// The rational tangle of slope `r` built from its regular continued fraction.
    /// Integer slopes give `[0]` followed by `n` horizontal twists.
    pub fn rational(r: RationalSlope, hand: Handedness) -> Self {
        if r.is_infinite() {
            return Fragment::infinity();
        }
        let terms = r.continued_fraction();
        let n = terms.len();
        let mut f = if n % 2 == 1 { Fragment::zero() } else { Fragment::infinity() };
        // terms = [b0; b1, ..., bm]; innermost term first, alternating so the last is horizontal.
        for (i, &b) in terms.iter().rev().enumerate() {
            let horizontal = (n - 1 - i) % 2 == 0;
            if horizontal {
                f.twist_horizontal(b, hand);
            } else {
                f.twist_vertical(b, hand);
            }
        }
        f
    }

    /// Close `self + other` by the numerator closure:
    /// self.NE~other.NW, self.SE~other.SW, other.NE~self.NW, other.SE~self.SW.
    /// Labels of `self` are kept where possible; `other` is shifted above them.
    pub fn close_with(&self, other: &Fragment) -> Closed {
        let off = self.max_label();
        let shifted: Vec<[u32; 4]> = other.crossings.iter().map(|t| t.map(|a| a + off)).collect();
        let oe = other.ends.map(|a| a + off);
        let mut dsu = Dsu(BTreeMap::new());
        for a in self.labels().into_iter().chain(other.labels().into_iter().map(|a| a + off)) {
            dsu.find(a);
        }
        dsu.union(self.end(End::NE), oe[End::NW.idx()]);
        dsu.union(self.end(End::SE), oe[End::SW.idx()]);
        dsu.union(oe[End::NE.idx()], self.end(End::NW));
        dsu.union(oe[End::SE.idx()], self.end(End::SW));
        let mut crossings: Vec<[u32; 4]> = self.crossings.clone();
        crossings.extend(shifted);
        for t in crossings.iter_mut() {
            for a in t.iter_mut() {
                *a = dsu.find(*a);
            }
        }
        let used: BTreeSet<u32> = crossings.iter().flatten().copied().collect();
        let keys: Vec<u32> = dsu.0.keys().copied().collect();
        let mut label_map = BTreeMap::new();
        let mut roots = BTreeSet::new();
        for k in keys {
            let r = dsu.find(k);
            roots.insert(r);
            if k <= off {
                label_map.insert(k, r);
            }
        }
        let free_loops = roots.iter().filter(|r| !used.contains(r)).count();
        Closed { crossings, free_loops, label_map }
    }

    /// Numerator closure N(F): NW~NE and SW~SE.
    pub fn numerator(&self) -> Closed {
        Fragment::zero().close_with(self)
    }

    /// Rotate the boundary by a quarter turn clockwise: the end at NW moves to NE.
    pub fn rotate_cw(&self) -> Self {
        let e = self.ends;
        // new[NE]=old[NW], new[SE]=old[NE], new[SW]=old[SE], new[NW]=old[SW]
        Fragment { crossings: self.crossings.clone(), ends: [e[3], e[0], e[1], e[2]] }
    }

    /// Mirror every crossing.
    pub fn mirror(&self) -> Self {
        Fragment {
            crossings: self.crossings.iter().map(|t| [t[1], t[2], t[3], t[0]]).collect(),
            ends: self.ends,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_fragments_are_valid() {
        for f in [Fragment::zero(), Fragment::infinity()] {
            f.check().unwrap();
        }
        let mut f = Fragment::zero();
        f.twist_horizontal(3, Handedness::Right);
        f.twist_vertical(-2, Handedness::Right);
        f.check().unwrap();
        assert_eq!(f.crossings.len(), 5);
    }

    #[test]
    fn closures_count_loops() {
        let c = Fragment::zero().numerator();
        assert_eq!(c.free_loops, 2);
        let c = Fragment::infinity().numerator();
        assert_eq!(c.free_loops, 1);
    }
}
