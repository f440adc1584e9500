//! Alexander polynomial from Fox derivatives of the Wirtinger presentation.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Symmetric, with value 1 at `t = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderPoly(pub LaurentPoly);

impl AlexanderPoly {
    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    /// `|Δ(−1)|`.
    pub fn determinant(&self) -> u128 {
        self.0.eval_unit(-1).unsigned_abs()
    }

    /// Degree span divided by two.
    pub fn genus_bound(&self) -> i32 {
        self.0.max_exp().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, c) in self.0.terms() {
            m.insert(e.to_string(), Value::from(c));
        }
        Value::Object(m)
    }
}

/// Shift to a symmetric exponent range and fix the sign so the value at 1 is 1.
pub fn normalize_alexander(p: &LaurentPoly) -> Result<AlexanderPoly> {
    let (Some(lo), Some(hi)) = (p.min_exp(), p.max_exp()) else {
        return Err(Error::Unsupported("Alexander polynomial vanishes".into()));
    };
    if (hi - lo) % 2 != 0 {
        return Err(Error::Unsupported("Alexander polynomial has odd degree span".into()));
    }
    let s = p.shift(-(lo + hi) / 2);
    let s = if s.eval_unit(1) < 0 { s.scale(-1) } else { s };
    Ok(AlexanderPoly(s))
}

fn det_poly(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut neg = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    neg = !neg;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("fraction-free elimination divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if neg {
        -&d
    } else {
        d
    }
}

/// Normalized Alexander polynomial of a knot diagram.
pub fn alexander(d: &PlanarDiagram) -> Result<AlexanderPoly> {
    if d.num_components() != 1 {
        return Err(Error::Unsupported(format!(
            "Alexander polynomial needs a knot, got {} components",
            d.num_components()
        )));
    }
    let t = d.crossings();
    if t.is_empty() {
        return Ok(AlexanderPoly(LaurentPoly::one()));
    }
    // Wirtinger generators: arcs joined through the crossings they pass over
    let max = d.max_label() as usize;
    let mut parent: Vec<usize> = (0..=max).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for tc in t {
        let (a, b) = (find(&mut parent, tc[1] as usize), find(&mut parent, tc[3] as usize));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut gens: BTreeMap<usize, usize> = BTreeMap::new();
    for a in d.arcs() {
        let r = find(&mut parent, a as usize);
        let k = gens.len();
        gens.entry(r).or_insert(k);
    }
    let ng = gens.len();
    let x = LaurentPoly::monomial(1, 1);
    let one = LaurentPoly::one();
    let mut m = vec![vec![LaurentPoly::zero(); ng]; t.len()];
    for (c, tc) in t.iter().enumerate() {
        let g = |a: u32, p: &mut [usize]| gens[&find(p, a as usize)];
        let (k, i, j) = (g(tc[1], &mut parent), g(tc[0], &mut parent), g(tc[2], &mut parent));
        let (ck, ci, cj) = if d.is_positive(c) {
            (&one - &x, x.clone(), one.scale(-1))
        } else {
            (&x - &one, one.clone(), x.scale(-1))
        };
        for (col, v) in [(k, ck), (i, ci), (j, cj)] {
            m[c][col] = &m[c][col] + &v;
        }
    }
    // drop one relation and one generator
    m.pop();
    for row in m.iter_mut() {
        row.pop();
    }
    normalize_alexander(&det_poly(m))
}

/// Coefficients are ±1, alternate in sign and start and end with +1.
pub fn is_lspace_form(p: &AlexanderPoly) -> bool {
    let cs: Vec<i64> = p.0.terms().map(|(_, c)| c).collect();
    !cs.is_empty()
        && cs.iter().enumerate().all(|(i, &c)| c == if i % 2 == 0 { 1 } else { -1 })
        && cs.len() % 2 == 1
}
