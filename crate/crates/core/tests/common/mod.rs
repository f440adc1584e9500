#![allow(dead_code)]

use knotfill::diagram::{BraidWord, PlanarDiagram};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Named small diagrams: braid closures of standard knots and links, unlinks, and
/// seeded random braids.
pub fn corpus() -> Vec<(String, PlanarDiagram)> {
    let words: &[(&str, &str, usize)] = &[
        ("unknot-1", "1", 2),
        ("unknot-2", "1,-2", 3),
        ("hopf+", "1,1", 2),
        ("hopf-", "-1,-1", 2),
        ("trefoil", "1,1,1", 2),
        ("trefoil-left", "-1,-1,-1", 2),
        ("fig8", "1,-2,1,-2", 3),
        ("T(2,4)", "1,1,1,1", 2),
        ("5_1", "1,1,1,1,1", 2),
        ("5_2", "1,1,1,2,-1,2", 3),
        ("T(2,6)", "1,1,1,1,1,1", 2),
        ("6_2", "1,1,1,-2,1,-2", 3),
        ("6_3", "1,1,-2,1,-2,-2", 3),
        ("T(3,3)", "(1,2)^3", 3),
        ("borromean", "(1,-2)^3", 3),
        ("7_1", "1,1,1,1,1,1,1", 2),
        ("T(3,4)", "(1,2)^4", 3),
        ("T(3,5)", "(1,2)^5", 3),
        ("split-trefoil", "1,1,1", 3),
    ];
    let mut out: Vec<(String, PlanarDiagram)> = words
        .iter()
        .map(|&(n, w, s)| (n.to_string(), BraidWord::parse_shorthand(w, Some(s)).unwrap().closure()))
        .collect();
    out.push(("unknot-0".into(), PlanarDiagram::unknot()));
    out.push(("unlink-2".into(), PlanarDiagram::unlink(2)));
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for i in 0..8 {
        let strands = rng.gen_range(2..=4);
        let len = rng.gen_range(3..=10);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        out.push((format!("random-{i}"), BraidWord::new(strands, letters).unwrap().closure()));
    }
    out
}

/// Rank over F2 by textbook elimination on a dense boolean matrix.
pub fn dense_rank(mut m: Vec<Vec<bool>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c]) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][c] {
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}
