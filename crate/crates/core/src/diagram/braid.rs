//! Braid words and their closures.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::fragment::Handedness;
use crate::diagram::pd::{OrientRule, PlanarDiagram};
use crate::diagram::plat::{Plat, PlatOp};
use crate::error::{Error, Result};

/// Letter `i > 0` is the positive generator σ_i, `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    #[serde(rename = "word")]
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Braid("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::Braid(format!("letter {l} invalid on {strands} strands")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parse shorthand like `(2,1,3,2)^3,1,2,3,3,2`; strands default to max |letter| + 1.
    pub fn parse_shorthand(s: &str, strands: Option<usize>) -> Result<Self> {
        let letters = parse_seq(s.trim())?;
        let need = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
        BraidWord::new(strands.unwrap_or(need), letters)
    }

    /// Closure of the braid, with positive letters giving positive crossings.
    /// Arcs are numbered consecutively along components.
    pub fn closure(&self) -> PlanarDiagram {
        if self.letters.is_empty() {
            return PlanarDiagram::unlink(self.strands);
        }
        let ops = self
            .letters
            .iter()
            .map(|&l| PlatOp::Cross {
                pos: l.unsigned_abs() as usize - 1,
                hand: if l > 0 { Handedness::Right } else { Handedness::Left },
            })
            .collect();
        let out = Plat { width: self.strands, caps: None, ops }.build();
        // basepoint on strand 1
        PlanarDiagram::assemble(
            out.crossings,
            out.free_loops,
            &OrientRule::Incoming(out.incoming),
            Some(out.start_labels[0]),
            true,
        )
        .expect("braid closures are well formed")
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BraidWord::parse_shorthand(s, None)
    }
}

fn parse_seq(s: &str) -> Result<Vec<i32>> {
    let bad = |m: &str| Error::Braid(format!("{m} in '{s}'"));
    let mut out = vec![];
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    let src = |a: usize, b: usize| chars[a..b].iter().collect::<String>();
    while i < chars.len() {
        if chars[i] == ',' {
            i += 1;
            continue;
        }
        let body: Vec<i32>;
        if chars[i] == '(' || chars[i] == '[' {
            let close = if chars[i] == '(' { ')' } else { ']' };
            let mut depth = 0;
            let mut j = i;
            loop {
                if j >= chars.len() {
                    return Err(bad("unbalanced bracket"));
                }
                if chars[j] == '(' || chars[j] == '[' {
                    depth += 1;
                } else if chars[j] == ')' || chars[j] == ']' {
                    depth -= 1;
                    if depth == 0 {
                        if chars[j] != close {
                            return Err(bad("mismatched bracket"));
                        }
                        break;
                    }
                }
                j += 1;
            }
            body = parse_seq(&src(i + 1, j))?;
            i = j + 1;
        } else {
            let mut j = i;
            if chars[j] == '-' || chars[j] == '+' {
                j += 1;
            }
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let tok = src(i, j);
            body = vec![tok.parse::<i32>().map_err(|_| bad(&format!("bad letter '{tok}'")))?];
            i = j;
        }
        let mut reps = 1usize;
        if i < chars.len() && chars[i] == '^' {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            reps = src(i + 1, j).parse().map_err(|_| bad("bad exponent"))?;
            i = j;
        }
        for _ in 0..reps {
            out.extend_from_slice(&body);
        }
        if i < chars.len() && chars[i] != ',' {
            return Err(bad(&format!("unexpected '{}'", chars[i])));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand() {
        let b: BraidWord = "(2,1,3,2)^3,1,2,3,3,2".parse().unwrap();
        assert_eq!(b.strands, 4);
        assert_eq!(b.letters.len(), 17);
        assert_eq!(&b.letters[..5], &[2, 1, 3, 2, 2]);
        let b: BraidWord = "[(2,1,3,2)^3,-1,2,1,1,2]".parse().unwrap();
        assert_eq!(b.letters[12], -1);
        assert!("1,x".parse::<BraidWord>().is_err());
        assert!(BraidWord::new(2, vec![2]).is_err());
    }

    #[test]
    fn closures() {
        let t = BraidWord::new(2, vec![1, 1, 1]).unwrap().closure();
        assert_eq!((t.num_crossings(), t.num_components(), t.n_plus()), (3, 1, 3));
        let u = BraidWord::new(1, vec![]).unwrap().closure();
        assert_eq!((u.num_crossings(), u.num_components()), (0, 1));
        let k1: BraidWord = "(2,1,3,2)^3,1,2,3,3,2".parse().unwrap();
        let d = k1.closure();
        assert_eq!((d.num_crossings(), d.num_components()), (17, 1));
        assert!(d.basepoint().is_some());
    }
}
