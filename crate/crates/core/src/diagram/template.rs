//! Tangle templates and their fillings `T(p/q)`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diagram::fragment::{End, Fragment, Handedness};
use crate::diagram::pd::{OrientRule, PlanarDiagram};
use crate::diagram::plat::{Plat, PlatOp};
use crate::diagram::slope::RationalSlope;
use crate::error::{Error, Result};

/// A tangle with a marked twist site. The filling `T(r)` is the numerator
/// closure of `base + R(r - framing)`, where `R(x)` is the rational tangle of
/// slope `x` whose positive integer twists have the handedness `positive_twist`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleTemplate {
    pub name: String,
    /// Normalized so that the twist site is the NE/SE pair.
    pub base: Fragment,
    pub positive_twist: Handedness,
    /// Slope offset between the template's own integer labeling and `[0]` in the site.
    pub framing: i64,
    pub basepoint: Option<u32>,
    pub provenance: Option<String>,
}

/// Resolving `crossing` of `fill(from)` with `kind` gives `fill(to)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkeinStep {
    pub from: i64,
    pub to: i64,
    pub crossing: usize,
    pub kind: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub template: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Deserialize)]
struct TemplateJson {
    #[serde(default)]
    format: Option<String>,
    name: String,
    pd: Vec<Vec<i64>>,
    ends: std::collections::BTreeMap<String, u32>,
    #[serde(default)]
    twist_site: Option<Vec<String>>,
    #[serde(default)]
    positive_twist: Option<Handedness>,
    #[serde(default)]
    orientation_rule: Option<String>,
    #[serde(default)]
    framing: Option<i64>,
    #[serde(default)]
    basepoint: Option<u32>,
    #[serde(default)]
    provenance: Option<String>,
}

impl TangleTemplate {
    pub fn new(name: &str, base: Fragment, positive_twist: Handedness, framing: i64) -> Self {
        let ends = base.ends();
        let basepoint = base.labels().into_iter().find(|a| !ends.contains(a));
        TangleTemplate { name: name.to_string(), base, positive_twist, framing, basepoint, provenance: None }
    }

    /// Two parallel horizontal strands; `T(n)` is the (2,n) torus link.
    pub fn trivial() -> Self {
        TangleTemplate::new("trivial", Fragment::zero(), Handedness::Right, 0)
    }

    pub fn fill(&self, r: RationalSlope) -> Result<PlanarDiagram> {
        let rt = Fragment::rational(r.minus_integer(self.framing), self.positive_twist);
        let closed = self.base.close_with(&rt);
        let bp = self.basepoint.and_then(|b| closed.label_map.get(&b).copied());
        PlanarDiagram::assemble(closed.crossings, closed.free_loops, &OrientRule::LowestLabel, bp, true)
    }

    pub fn fill_integer(&self, n: i64) -> Result<PlanarDiagram> {
        self.fill(RationalSlope::integer(n))
    }

    /// `T(n)` with a canonical orientation. A link filling is oriented as the oriented
    /// smoothing of the twist crossing of its neighbor with one more twist, when that
    /// neighbor is a knot; its gradings then agree with the knot fillings around it.
    pub fn fill_coherent(&self, n: i64) -> Result<PlanarDiagram> {
        let d = self.fill_integer(n)?;
        if d.num_components() < 2 {
            return Ok(d);
        }
        let m = if n >= self.framing { n + 1 } else { n - 1 };
        let knot = self.fill_integer(m)?;
        if knot.num_components() != 1 {
            return Ok(d);
        }
        let step = self.skein_step(n.max(m));
        let r = knot.resolve_crossing(step.crossing, step.kind)?;
        Ok(if r.num_components() == d.num_components() { r } else { d })
    }

    /// Crossing count of `T(r)`.
    pub fn fill_size(&self, r: RationalSlope) -> usize {
        Fragment::rational(r.minus_integer(self.framing), self.positive_twist).crossings.len()
            + self.base.crossings.len()
    }

    /// The single crossing relating `T(n)` and `T(n-1)`.
    pub fn skein_step(&self, n: i64) -> SkeinStep {
        let k = n - self.framing;
        let b = self.base.crossings.len();
        // In the site's own frame a same-handed twist is undone by the horizontal smoothing.
        let (same, other) = match self.positive_twist {
            Handedness::Right => (0u8, 1u8),
            Handedness::Left => (1u8, 0u8),
        };
        if k >= 1 {
            SkeinStep { from: n, to: n - 1, crossing: b + (k as usize) - 1, kind: same }
        } else {
            SkeinStep { from: n - 1, to: n, crossing: b + (-k) as usize, kind: other }
        }
    }

    /// Parse the template JSON format.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TemplateJson = serde_json::from_str(text)?;
        if let Some(f) = &raw.format {
            if f != "kf-1" {
                return Err(Error::Template(format!("unsupported format '{f}'")));
            }
        }
        let mut crossings = vec![];
        for (i, t) in raw.pd.iter().enumerate() {
            if t.len() != 4 {
                return Err(Error::Arity { index: i, len: t.len() });
            }
            let mut c = [0u32; 4];
            for (j, &a) in t.iter().enumerate() {
                if a <= 0 || a > u32::MAX as i64 {
                    return Err(Error::Template(format!("arc label {a} must be a positive integer")));
                }
                c[j] = a as u32;
            }
            crossings.push(c);
        }
        let mut ends = [0u32; 4];
        for (k, e) in End::ALL.iter().enumerate() {
            ends[k] = *raw
                .ends
                .get(e.name())
                .ok_or_else(|| Error::Template(format!("missing end {}", e.name())))?;
        }
        let mut base = Fragment::new(crossings, ends)?;
        let site: Vec<End> = match &raw.twist_site {
            Some(v) => v.iter().map(|s| End::parse(s)).collect::<Result<_>>()?,
            None => vec![End::NE, End::SE],
        };
        let mut site_set = site.clone();
        site_set.sort();
        let turns = match site_set.as_slice() {
            [End::NE, End::SE] => 0,
            [End::NW, End::NE] => 1,
            [End::SE, End::SW] => 3,
            [End::NW, End::SW] => 2,
            _ => return Err(Error::Template(format!("twist site {site:?} is not a pair of adjacent ends"))),
        };
        for _ in 0..turns {
            base = base.rotate_cw();
        }
        match raw.orientation_rule.as_deref() {
            None | Some("lowest-label") => {}
            Some(o) => return Err(Error::Template(format!("unsupported orientation rule '{o}'"))),
        }
        let mut t = TangleTemplate::new(
            &raw.name,
            base,
            raw.positive_twist.unwrap_or(Handedness::Right),
            raw.framing.unwrap_or(0),
        );
        if let Some(b) = raw.basepoint {
            if !t.base.labels().contains(&b) {
                return Err(Error::Template(format!("basepoint {b} not in template")));
            }
            t.basepoint = Some(b);
        }
        t.provenance = raw.provenance;
        Ok(t)
    }

    pub fn to_json(&self) -> Value {
        let ends: serde_json::Map<String, Value> =
            End::ALL.iter().map(|e| (e.name().to_string(), json!(self.base.end(*e)))).collect();
        let mut v = json!({
            "format": "kf-1",
            "name": self.name,
            "pd": self.base.crossings,
            "ends": ends,
            "twist_site": ["NE", "SE"],
            "positive_twist": self.positive_twist,
            "orientation_rule": "lowest-label",
            "framing": self.framing,
        });
        if let Some(b) = self.basepoint {
            v["basepoint"] = json!(b);
        }
        if let Some(p) = &self.provenance {
            v["provenance"] = json!(p);
        }
        v
    }

    /// Structural and convention checks; failures are reported, not raised.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = vec![];
        let mut push = |name: &str, passed: bool, detail: String| {
            checks.push(Check { name: name.to_string(), passed, detail })
        };
        match self.fill(RationalSlope::infinity()) {
            Ok(d) => {
                let comps = d.num_components();
                push("inf_one_component", comps == 1, format!("T(inf) has {comps} component(s)"));
                let det = crate::lspace::determinant(&d);
                push("inf_det_one", det == 1u32.into(), format!("det T(inf) = {det}"));
                match crate::khovanov::reduced_dimension(&d) {
                    Ok(dim) => push("inf_kh_dim_one", dim == 1, format!("dim Kh T(inf) = {dim}")),
                    Err(e) => push("inf_kh_dim_one", false, e.to_string()),
                }
            }
            Err(e) => push("inf_fill", false, e.to_string()),
        }
        match self.fill(RationalSlope::integer(0)) {
            Ok(d) => {
                let comps = d.num_components();
                push("zero_two_components", comps == 2, format!("T(0) has {comps} component(s)"));
                let det = crate::lspace::determinant(&d);
                push("zero_det_zero", det == 0u32.into(), format!("det T(0) = {det}"));
            }
            Err(e) => push("zero_fill", false, e.to_string()),
        }
        let step = self.skein_step(1);
        let unit = (|| -> Result<bool> {
            let from = self.fill_integer(step.from)?;
            let to = self.fill_integer(step.to)?;
            if from.num_crossings() != to.num_crossings() + 1 {
                return Ok(false);
            }
            let r = from.resolve_crossing(step.crossing, step.kind)?;
            Ok(r.same_up_to_relabeling(&to))
        })();
        match unit {
            Ok(ok) => push(
                "unit_skein_step",
                ok,
                format!("resolving crossing {} of T({}) gives T({})", step.crossing, step.from, step.to),
            ),
            Err(e) => push("unit_skein_step", false, e.to_string()),
        }
        ValidationReport { template: self.name.clone(), checks }
    }
}

/// Exterior of a strongly invertible closed 4-braid, as a tangle.
///
/// The braid is written as `c0 · body(σ_i on pairs of strands) · c_pi` in a
/// form symmetric under rotation about a horizontal axis. `center0` are the
/// signs of σ1 and σ3 at the axis' first fixed region, `body` is a 2-strand-cable
/// word in σ1..σ3 and `center_pi` is the sign of σ2 at the second fixed region.
/// The quotient is drawn as a 10-strand plat with the filling site between
/// positions 1 and 2.
pub fn inversion_quotient(center0: (i32, i32), body: &[i32], center_pi: i32) -> Fragment {
    let (e1, e3) = center0;
    let leg_over = |pos: usize| -> bool {
        match pos {
            1 => e1 < 0,
            2 => e1 > 0,
            3 => e3 < 0,
            _ => e3 > 0,
        }
    };
    let hand = |tdo: bool| if tdo { Handedness::Right } else { Handedness::Left };
    let mut ops = vec![];
    for edge in 1..=8usize {
        ops.push(PlatOp::Cross { pos: edge, hand: hand(!leg_over(edge.div_ceil(2))) });
    }
    for &g in body {
        let a = 1 + 2 * (g.unsigned_abs() as usize - 1);
        let h = hand(g > 0);
        for pos in [a + 1, a, a + 2, a + 1] {
            ops.push(PlatOp::Cross { pos, hand: h });
        }
    }
    ops.push(PlatOp::Slot { pos: 1 });
    for (i, edge) in (3..=6usize).enumerate() {
        let over = if edge.div_ceil(2) == 2 { center_pi > 0 } else { center_pi < 0 };
        ops.push(PlatOp::Cross { pos: 2 + i, hand: hand(!over) });
    }
    let cups = vec![(0, 1), (2, 5), (3, 4), (6, 9), (7, 8)];
    let caps = vec![(0, 1), (2, 5), (3, 4), (6, 7), (8, 9)];
    let out = Plat { width: 10, caps: Some((cups, caps)), ops }.build();
    let slot = out.slot.expect("slot present");
    Fragment::new(out.crossings, slot).expect("plat fragments are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_fillings_are_torus_links() {
        let t = TangleTemplate::trivial();
        for n in -4i64..=4 {
            let d = t.fill_integer(n).unwrap();
            assert_eq!(d.num_crossings() as i64, n.abs());
            let comps = if n % 2 == 0 { 2 } else { 1 };
            assert_eq!(d.num_components(), comps, "n = {n}");
        }
        assert_eq!(t.fill(RationalSlope::infinity()).unwrap().num_components(), 1);
    }

    #[test]
    fn skein_steps_resolve_to_neighbor() {
        let t = TangleTemplate::trivial();
        for n in -3i64..=4 {
            let s = t.skein_step(n);
            let from = t.fill_integer(s.from).unwrap();
            let to = t.fill_integer(s.to).unwrap();
            let r = from.resolve_crossing(s.crossing, s.kind).unwrap();
            assert!(r.same_up_to_relabeling(&to), "n = {n}");
        }
    }

    #[test]
    fn json_round_trip() {
        let t = TangleTemplate::new("q", inversion_quotient((1, 1), &[2, 2, 1], -1), Handedness::Right, 3);
        let back = TangleTemplate::from_json(&t.to_json().to_string()).unwrap();
        assert_eq!(back, t);
    }
}
