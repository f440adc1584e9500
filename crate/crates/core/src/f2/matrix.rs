//! Dense bit-packed matrices over the two-element field.

use std::fmt;

const W: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(W);
        F2Matrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// From rows of 0/1 entries; panics on ragged input.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.stride + j / W] >> (j % W)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.stride + j / W];
        let bit = 1u64 << (j % W);
        if v {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i * self.stride + j / W] ^= 1u64 << (j % W);
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Column indices of the set bits of row `i`.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i).iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * W + b)
            })
        })
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in self.row_ones(i).collect::<Vec<_>>() {
                let (src, dst) = (k * other.stride, i * out.stride);
                for w in 0..out.stride {
                    out.data[dst + w] ^= other.data[src + w];
                }
            }
        }
        out
    }

    /// Rank by word-parallel Gaussian elimination on a private copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate()
    }

    /// Row-reduce in place; returns the rank.
    pub(crate) fn eliminate(&mut self) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (wi, bit) = (col / W, 1u64 << (col % W));
            let pivot = (rank..self.rows).find(|&r| self.data[r * self.stride + wi] & bit != 0);
            let Some(p) = pivot else { continue };
            if p != rank {
                for w in 0..self.stride {
                    self.data.swap(p * self.stride + w, rank * self.stride + w);
                }
            }
            let base = rank * self.stride;
            for r in rank + 1..self.rows {
                if self.data[r * self.stride + wi] & bit != 0 {
                    let off = r * self.stride;
                    for w in wi..self.stride {
                        let v = self.data[base + w];
                        self.data[off + w] ^= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// True if no bits are set beyond column `cols` in any row.
    pub fn tail_clean(&self) -> bool {
        if self.cols % W == 0 {
            return true;
        }
        let mask = !0u64 << (self.cols % W);
        (0..self.rows).all(|i| self.data[i * self.stride + self.stride - 1] & mask == 0)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows.min(32) {
            let s: String = (0..self.cols.min(96)).map(|j| if self.get(i, j) { '1' } else { '.' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(F2Matrix::identity(5).rank(), 5);
        assert_eq!(F2Matrix::zeros(4, 7).rank(), 0);
        assert_eq!(F2Matrix::from_rows(&[vec![1, 1], vec![1, 1]]).rank(), 1);
        let m = F2Matrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert!(m.tail_clean());
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let mut m = F2Matrix::zeros(3, 130);
        m.set(0, 129, true);
        m.set(1, 64, true);
        m.set(1, 129, true);
        m.set(2, 64, true);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
        assert_eq!(m.row_ones(1).collect::<Vec<_>>(), vec![64, 129]);
    }
}
