//! Rank over F2 and homology of a small bigraded complex.

use knotfill::f2::{F2Matrix, GradedComplexF2, SparseF2};

fn main() {
    let m = F2Matrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
    println!("rank of the 3-cycle incidence matrix: {}", m.rank());

    // 0 -> F2^2 -> F2^1 -> 0 at q = 0, with d = [1 1]
    let mut c = GradedComplexF2::new();
    c.set_gens(0, 0, 2);
    c.set_gens(1, 0, 1);
    c.set_diff(0, 0, SparseF2::from_rows(1, vec![vec![0], vec![0]]));
    assert!(c.is_complex());
    println!("homology: {:?}", c.homology_dims());
    println!("euler characteristic: {:?}", c.euler_characteristic());
}
