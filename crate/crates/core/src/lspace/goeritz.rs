//! Determinant from the Goeritz matrix of a checkerboard coloring.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diagram::PlanarDiagram;

/// Faces of the diagram: for each `(crossing, slot)` the face lying to the left of a
/// strand that arrives at that slot, i.e. the corner between `slot − 1` and `slot`.
fn faces(d: &PlanarDiagram) -> (usize, Vec<[usize; 4]>) {
    let t = d.crossings();
    let n = t.len();
    let mut other = vec![[(0usize, 0usize); 4]; n];
    let max = d.max_label() as usize;
    let mut first: Vec<Option<(usize, usize)>> = vec![None; max + 1];
    for (c, tc) in t.iter().enumerate() {
        for (p, &a) in tc.iter().enumerate() {
            match first[a as usize] {
                None => first[a as usize] = Some((c, p)),
                Some((c0, p0)) => {
                    other[c][p] = (c0, p0);
                    other[c0][p0] = (c, p);
                }
            }
        }
    }
    let mut face = vec![[usize::MAX; 4]; n];
    let mut count = 0;
    for c in 0..n {
        for p in 0..4 {
            if face[c][p] != usize::MAX {
                continue;
            }
            // arriving at (c, p): turn left, leave through p − 1, arrive at its other end
            let (mut cc, mut pp) = (c, p);
            while face[cc][pp] == usize::MAX {
                face[cc][pp] = count;
                (cc, pp) = other[cc][(pp + 3) % 4];
            }
            count += 1;
        }
    }
    (count, face)
}

fn connected(d: &PlanarDiagram) -> bool {
    let t = d.crossings();
    let n = t.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(c) = stack.pop() {
        for &a in &t[c] {
            for (c2, tc) in t.iter().enumerate() {
                if !seen[c2] && tc.contains(&a) {
                    seen[c2] = true;
                    stack.push(c2);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Goeritz matrix over the faces of one checkerboard color, with the last
/// face removed. `None` for diagrams with a disconnected projection.
pub fn goeritz_matrix(d: &PlanarDiagram) -> Option<Vec<Vec<i64>>> {
    if d.num_crossings() == 0 || d.free_loops() > 0 || !connected(d) {
        return None;
    }
    let (nf, face) = faces(d);
    // corners of (c, p) and (c, p+1) lie on opposite sides of one strand: different colors
    let mut adj = vec![vec![]; nf];
    for f in &face {
        for p in 0..4 {
            adj[f[p]].push(f[(p + 1) % 4]);
            adj[f[(p + 1) % 4]].push(f[p]);
        }
    }
    let mut color = vec![u8::MAX; nf];
    color[0] = 0;
    let mut stack = vec![0];
    while let Some(f) = stack.pop() {
        for &g in &adj[f] {
            if color[g] == u8::MAX {
                color[g] = 1 - color[f];
                stack.push(g);
            }
        }
    }
    let white: Vec<usize> = (0..nf).filter(|&f| color[f] == 0).collect();
    let idx = |f: usize| white.iter().position(|&w| w == f).expect("white face");
    let m = white.len();
    let mut g = vec![vec![0i64; m]; m];
    for f in &face {
        // face[p] is the corner between p − 1 and p; corners 1 and 3 are (0,1) and (2,3)
        let (eta, a, b) = if color[f[1]] == 0 { (1, f[1], f[3]) } else { (-1, f[0], f[2]) };
        if a == b {
            continue;
        }
        let (i, j) = (idx(a), idx(b));
        g[i][j] -= eta;
        g[j][i] -= eta;
        g[i][i] += eta;
        g[j][j] += eta;
    }
    g.pop();
    for row in g.iter_mut() {
        row.pop();
    }
    Some(g)
}

/// Determinant of an integer matrix by fraction-free elimination.
pub(crate) fn bareiss(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `|det|` of the link: 1 for the crossingless unknot, 0 for split diagrams.
pub fn determinant(d: &PlanarDiagram) -> BigInt {
    if d.num_crossings() == 0 {
        return if d.num_components() == 1 { BigInt::one() } else { BigInt::zero() };
    }
    match goeritz_matrix(d) {
        Some(g) => bareiss(&g).abs(),
        None => BigInt::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        assert_eq!(bareiss(&[vec![2, 1], vec![1, 2]]), BigInt::from(3));
        assert_eq!(bareiss(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(bareiss(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }
}
