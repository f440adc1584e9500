//! Rational slopes `p/q`, with `1/0` as the infinite slope.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalSlope {
    p: i64,
    q: i64,
}

impl RationalSlope {
    /// Build `p/q` in lowest terms; `q < 0` is normalized by negating both.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::Slope("0/0 is not a slope".into()));
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        let p = if q == 0 { 1 } else { p };
        Ok(RationalSlope { p, q })
    }

    pub fn integer(n: i64) -> Self {
        RationalSlope { p: n, q: 1 }
    }

    pub fn infinity() -> Self {
        RationalSlope { p: 1, q: 0 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    pub fn as_integer(&self) -> Option<i64> {
        (self.q == 1).then_some(self.p)
    }

    /// `self - n`.
    pub fn minus_integer(&self, n: i64) -> Self {
        if self.is_infinite() {
            return *self;
        }
        RationalSlope { p: self.p - n * self.q, q: self.q }
    }

    /// Regular continued fraction `[b0; b1, ..., bm]` with `bi >= 1` for `i >= 1`
    /// and `bm >= 2` when `m >= 1`.
    pub fn continued_fraction(&self) -> Vec<i64> {
        assert!(!self.is_infinite());
        let (mut a, mut b) = (self.p, self.q);
        let mut out = vec![];
        while b != 0 {
            let t = Integer::div_floor(&a, &b);
            out.push(t);
            let r = a - t * b;
            a = b;
            b = r;
        }
        out
    }
}

impl fmt::Display for RationalSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for RationalSlope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "∞") {
            return Ok(Self::infinity());
        }
        let bad = || Error::Slope(format!("cannot parse slope '{s}'"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                RationalSlope::new(p, q)
            }
            None => Ok(Self::integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_normalize() {
        let r: RationalSlope = "6/-4".parse().unwrap();
        assert_eq!((r.p(), r.q()), (-3, 2));
        assert!("1/0".parse::<RationalSlope>().unwrap().is_infinite());
        assert!("0/0".parse::<RationalSlope>().is_err());
        assert_eq!("19".parse::<RationalSlope>().unwrap().as_integer(), Some(19));
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(RationalSlope::new(7, 3).unwrap().continued_fraction(), vec![2, 3]);
        assert_eq!(RationalSlope::new(-7, 3).unwrap().continued_fraction(), vec![-3, 1, 2]);
        assert_eq!(RationalSlope::integer(-4).continued_fraction(), vec![-4]);
    }
}
