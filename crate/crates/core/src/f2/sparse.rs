//! Sparse matrices over the two-element field, stored as sorted row supports.

use crate::f2::matrix::F2Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseF2 {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u32>>,
}

enum Cand {
    Row(u32),
    Col(u32),
}

impl SparseF2 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseF2 { rows, cols, data: vec![vec![]; rows] }
    }

    /// From row supports; duplicate entries cancel in pairs.
    pub fn from_rows(cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let data = rows
            .into_iter()
            .map(|mut r| {
                r.sort_unstable();
                let mut out: Vec<u32> = Vec::with_capacity(r.len());
                for x in r {
                    assert!((x as usize) < cols, "column {x} out of range");
                    if out.last() == Some(&x) {
                        out.pop();
                    } else {
                        out.push(x);
                    }
                }
                out
            })
            .collect::<Vec<_>>();
        SparseF2 { rows: data.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn to_dense(&self) -> F2Matrix {
        let mut m = F2Matrix::zeros(self.rows, self.cols);
        for (i, r) in self.data.iter().enumerate() {
            for &c in r {
                m.set(i, c as usize, true);
            }
        }
        m
    }

    /// `x ↦ other(self(x))` where rows are sources and entries are images.
    pub fn then(&self, other: &SparseF2) -> SparseF2 {
        assert_eq!(self.cols, other.rows);
        let rows = self.data.iter().map(|r| r.iter().flat_map(|&k| other.data[k as usize].iter().copied()).collect());
        SparseF2::from_rows(other.cols, rows.collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Rank. Pivots on rows or columns with a single entry are cancelled first;
    /// whatever remains is reduced densely.
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut row_alive = vec![true; self.rows];
        let mut col_alive = vec![true; self.cols];
        let mut col_rows: Vec<Vec<u32>> = vec![vec![]; self.cols];
        let mut col_deg = vec![0u32; self.cols];
        for (r, row) in rows.iter().enumerate() {
            for &c in row {
                col_rows[c as usize].push(r as u32);
                col_deg[c as usize] += 1;
            }
        }
        let mut stack: Vec<Cand> = vec![];
        for (r, row) in rows.iter().enumerate() {
            if row.len() == 1 {
                stack.push(Cand::Row(r as u32));
            }
        }
        for (c, &d) in col_deg.iter().enumerate() {
            if d == 1 {
                stack.push(Cand::Col(c as u32));
            }
        }
        let mut rank = 0;
        while let Some(cand) = stack.pop() {
            match cand {
                Cand::Row(r) => {
                    let r = r as usize;
                    if !row_alive[r] || rows[r].len() != 1 {
                        continue;
                    }
                    let c = rows[r][0] as usize;
                    row_alive[r] = false;
                    rows[r].clear();
                    col_alive[c] = false;
                    for &r2 in &col_rows[c] {
                        let r2 = r2 as usize;
                        if !row_alive[r2] {
                            continue;
                        }
                        if let Ok(pos) = rows[r2].binary_search(&(c as u32)) {
                            rows[r2].remove(pos);
                            if rows[r2].len() == 1 {
                                stack.push(Cand::Row(r2 as u32));
                            }
                        }
                    }
                    rank += 1;
                }
                Cand::Col(c) => {
                    let c = c as usize;
                    if !col_alive[c] || col_deg[c] != 1 {
                        continue;
                    }
                    let r = col_rows[c]
                        .iter()
                        .map(|&r| r as usize)
                        .find(|&r| row_alive[r] && rows[r].binary_search(&(c as u32)).is_ok())
                        .expect("degree-one column has a live row");
                    row_alive[r] = false;
                    for &c2 in &rows[r] {
                        let c2 = c2 as usize;
                        col_deg[c2] -= 1;
                        if col_deg[c2] == 1 && col_alive[c2] {
                            stack.push(Cand::Col(c2 as u32));
                        }
                    }
                    rows[r].clear();
                    col_alive[c] = false;
                    rank += 1;
                }
            }
        }
        let live: Vec<usize> = (0..self.rows).filter(|&r| row_alive[r] && !rows[r].is_empty()).collect();
        if live.is_empty() {
            return rank;
        }
        let mut col_index = vec![u32::MAX; self.cols];
        let mut ncols = 0;
        for &r in &live {
            for &c in &rows[r] {
                if col_index[c as usize] == u32::MAX {
                    col_index[c as usize] = ncols;
                    ncols += 1;
                }
            }
        }
        let mut dense = F2Matrix::zeros(live.len(), ncols as usize);
        for (i, &r) in live.iter().enumerate() {
            for &c in &rows[r] {
                dense.set(i, col_index[c as usize] as usize, true);
            }
        }
        rank + dense.eliminate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_matches_dense() {
        let m = SparseF2::from_rows(4, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![3], vec![3, 3]]);
        assert_eq!(m.row(4), &[] as &[u32]);
        assert_eq!(m.rank(), m.to_dense().rank());
        assert_eq!(m.rank(), 3);
    }
}
