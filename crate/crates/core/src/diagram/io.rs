//! PD and braid text formats.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::diagram::braid::BraidWord;
use crate::diagram::pd::{OrientRule, PlanarDiagram};
use crate::error::{Error, Result};

#[derive(Deserialize)]
struct PdJson {
    #[serde(default)]
    format: Option<String>,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    pd: Vec<Vec<i64>>,
    #[serde(default)]
    orientations: Option<Vec<i64>>,
    #[serde(default)]
    basepoint: Option<u32>,
    #[serde(default)]
    unknot: bool,
    #[serde(default)]
    free_loops: usize,
}

/// A parsed PD source together with its optional name.
#[derive(Clone, Debug)]
pub struct NamedDiagram {
    pub name: Option<String>,
    pub diagram: PlanarDiagram,
}

fn tuples(raw: &[Vec<i64>]) -> Result<Vec<[u32; 4]>> {
    raw.iter()
        .enumerate()
        .map(|(i, t)| {
            if t.len() != 4 {
                return Err(Error::Arity { index: i, len: t.len() });
            }
            let mut c = [0u32; 4];
            for (j, &a) in t.iter().enumerate() {
                if a <= 0 || a > u32::MAX as i64 {
                    return Err(Error::Parse(format!("arc label {a} must be a positive integer")));
                }
                c[j] = a as u32;
            }
            Ok(c)
        })
        .collect()
}

/// Parse a PD source: the JSON object format, a bare JSON array of 4-tuples,
/// or KnotTheory-style `PD[X[1,4,2,5], ...]`.
pub fn parse_pd(text: &str) -> Result<NamedDiagram> {
    let t = text.trim();
    if t.starts_with("PD[") || t.starts_with("X[") {
        let body = t.trim_start_matches("PD[").trim_end_matches(']');
        let mut raw = vec![];
        for part in body.split("X[").skip(1) {
            let inner = part.split(']').next().unwrap_or("");
            let nums: std::result::Result<Vec<i64>, _> =
                inner.split(',').filter(|s| !s.trim().is_empty()).map(|s| s.trim().parse()).collect();
            raw.push(nums.map_err(|e| Error::Parse(format!("bad PD entry: {e}")))?);
        }
        return from_parts(None, &raw, None, None, false, 0);
    }
    let v: Value = serde_json::from_str(t)?;
    match v {
        Value::Array(_) => {
            let raw: Vec<Vec<i64>> = serde_json::from_value(v)?;
            from_parts(None, &raw, None, None, false, 0)
        }
        Value::Object(_) => {
            let p: PdJson = serde_json::from_value(v)?;
            if let Some(f) = &p.format {
                if f != "kf-1" {
                    return Err(Error::Parse(format!("unsupported format '{f}'")));
                }
            }
            from_parts(p.name, &p.pd, p.orientations.as_deref(), p.basepoint, p.unknot, p.free_loops)
        }
        _ => Err(Error::Parse("expected a PD array or object".into())),
    }
}

fn from_parts(
    name: Option<String>,
    raw: &[Vec<i64>],
    orientations: Option<&[i64]>,
    basepoint: Option<u32>,
    unknot: bool,
    free_loops: usize,
) -> Result<NamedDiagram> {
    let crossings = tuples(raw)?;
    if crossings.is_empty() {
        let n = free_loops.max(1);
        if !unknot && free_loops == 0 {
            return Err(Error::Parse("empty PD code needs \"unknot\": true or \"free_loops\"".into()));
        }
        return Ok(NamedDiagram { name, diagram: PlanarDiagram::unlink(n) });
    }
    let diagram = match orientations {
        // +a: the strand runs along arc a towards its later endpoint in (crossing, slot) order.
        Some(signs) => {
            let mut incoming = vec![];
            for &s in signs {
                let a = s.unsigned_abs() as u32;
                let mut ends = vec![];
                for (c, t) in crossings.iter().enumerate() {
                    for (p, &x) in t.iter().enumerate() {
                        if x == a {
                            ends.push((c, p));
                        }
                    }
                }
                if ends.len() != 2 {
                    return Err(Error::ArcCount { arc: a, count: ends.len() });
                }
                incoming.push(if s > 0 { ends[1] } else { ends[0] });
            }
            PlanarDiagram::assemble(crossings, free_loops, &OrientRule::Incoming(incoming), basepoint, false)?
        }
        None => PlanarDiagram::assemble(crossings, free_loops, &OrientRule::FromTuples, basepoint, false)?,
    };
    Ok(NamedDiagram { name, diagram })
}

/// PD JSON for a diagram.
pub fn pd_json(d: &PlanarDiagram, name: &str) -> Value {
    let mut v = json!({
        "format": "kf-1",
        "name": name,
        "pd": d.pd_code(),
    });
    if let Some(b) = d.basepoint() {
        v["basepoint"] = json!(b);
    }
    if d.num_crossings() > 0 {
        let signs: Vec<i64> = d
            .components()
            .iter()
            .map(|c| {
                let a = c[0];
                let ends = d.arc_ends(a);
                let forward = d.arc_head(a) == Some(ends[1]);
                if forward {
                    a as i64
                } else {
                    -(a as i64)
                }
            })
            .collect();
        v["orientations"] = json!(signs);
    }
    if d.num_crossings() == 0 {
        v["unknot"] = json!(d.free_loops() == 1);
    }
    if d.free_loops() > 0 {
        v["free_loops"] = json!(d.free_loops());
    }
    v
}

/// Parse the braid JSON format `{"strands": n, "word": [...]}`.
pub fn parse_braid_json(text: &str) -> Result<BraidWord> {
    #[derive(Deserialize)]
    struct B {
        #[serde(default)]
        format: Option<String>,
        strands: usize,
        word: Vec<i32>,
    }
    let b: B = serde_json::from_str(text)?;
    if let Some(f) = &b.format {
        if f != "kf-1" {
            return Err(Error::Parse(format!("unsupported format '{f}'")));
        }
    }
    BraidWord::new(b.strands, b.word)
}

pub fn braid_json(b: &BraidWord) -> Value {
    json!({"format": "kf-1", "strands": b.strands, "word": b.letters})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let d = parse_pd("[[1,3,2,4],[3,1,4,2]]").unwrap().diagram;
        assert_eq!((d.num_crossings(), d.num_components()), (2, 2));
        let u = parse_pd(r#"{"name":"u","pd":[],"unknot":true}"#).unwrap().diagram;
        assert_eq!((u.num_crossings(), u.num_components()), (0, 1));
        assert!(matches!(parse_pd("[[1,2,3]]"), Err(Error::Arity { index: 0, len: 3 })));
        assert!(parse_pd("[]").is_err());
    }

    #[test]
    fn knottheory_syntax() {
        let d = parse_pd("PD[X[1, 4, 2, 5], X[3, 6, 4, 1], X[5, 2, 6, 3]]").unwrap().diagram;
        assert_eq!((d.num_crossings(), d.num_components()), (3, 1));
        assert_eq!(d.n_minus(), 3);
    }

    #[test]
    fn round_trip() {
        let d = parse_pd("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]").unwrap().diagram;
        let back = parse_pd(&pd_json(&d, "t").to_string()).unwrap().diagram;
        assert_eq!(back, d);
    }
}
