//! Property tests over random braids, matrices, complexes and slopes.

mod common;

use knotfill::diagram::{BraidWord, RationalSlope, TangleTemplate};
use knotfill::f2::{F2Matrix, GradedComplexF2, SparseF2};
use knotfill::khovanov::{jones_from_kh, kauffman_jones, kh_table, Engine, KhOptions};
use knotfill::lspace::{alexander, determinant, formal_semigroup, is_actual_semigroup, series_members};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|s| {
        prop::collection::vec((1..s as i32, any::<bool>()), 1..=9)
            .prop_map(move |v| BraidWord::new(s, v.into_iter().map(|(g, p)| if p { g } else { -g }).collect()).unwrap())
    })
}

fn bool_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(any::<bool>(), c), r))
}

fn to_f2(m: &[Vec<bool>]) -> F2Matrix {
    F2Matrix::from_rows(&m.iter().map(|r| r.iter().map(|&b| b as u8).collect()).collect::<Vec<_>>())
}

/// `(target, source)`-indexed dense map to the source-rows sparse form.
fn to_sparse(m: &[Vec<bool>], targets: usize, sources: usize) -> SparseF2 {
    let rows = (0..sources).map(|s| (0..targets).filter(|&t| m[t][s]).map(|t| t as u32).collect()).collect();
    SparseF2::from_rows(targets, rows)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn scan_equals_cube(b in braid()) {
        let d = b.closure();
        let s = kh_table(&d, "", &KhOptions::default()).unwrap();
        let c = kh_table(&d, "", &KhOptions { engine: Engine::Cube, ..KhOptions::default() }).unwrap();
        prop_assert_eq!(s.entries(), c.entries());
    }

    #[test]
    fn jones_oracle(b in braid()) {
        let d = b.closure();
        let t = kh_table(&d, "", &KhOptions::default()).unwrap();
        prop_assert_eq!(jones_from_kh(&t), kauffman_jones(&d).unwrap());
    }

    #[test]
    fn mirror_rule(b in braid()) {
        let d = b.closure();
        let t = kh_table(&d, "", &KhOptions::default()).unwrap();
        let m = kh_table(&d.mirror(), "", &KhOptions::default()).unwrap();
        prop_assert_eq!(m, t.negated());
        prop_assert_eq!(d.mirror().mirror().pd_code(), d.pd_code());
    }

    #[test]
    fn determinant_for_knots(b in braid()) {
        let d = b.closure();
        prop_assume!(d.num_components() == 1);
        prop_assert_eq!(determinant(&d).to_u128().unwrap(), alexander(&d).unwrap().determinant());
    }

    #[test]
    fn rank_matches_dense_oracle(m in bool_matrix(70)) {
        let f = to_f2(&m);
        prop_assert_eq!(f.rank(), common::dense_rank(m.clone()));
        prop_assert_eq!(f.rank(), f.transpose().rank());
        let mut rev = m.clone();
        rev.reverse();
        for r in rev.iter_mut() {
            r.reverse();
        }
        prop_assert_eq!(to_f2(&rev).rank(), f.rank());
    }

    #[test]
    fn homology_of_conjugated_complexes(
        u in (0usize..4, 0usize..4, 0usize..4),
        pairs in (0usize..4, 0usize..4),
        ops in prop::collection::vec((0usize..3, any::<u8>(), any::<u8>()), 0..40),
    ) {
        let (u0, u1, u2) = u;
        let (b, c) = pairs;
        let n = [u0 + b, u1 + b + c, u2 + c];
        prop_assume!(n.iter().all(|&x| x > 0));
        // d0: C0 -> C1 as an n1 x n0 matrix, d1: C1 -> C2 as n2 x n1
        let mut d0 = vec![vec![false; n[0]]; n[1]];
        let mut d1 = vec![vec![false; n[1]]; n[2]];
        for i in 0..b {
            d0[u1 + i][u0 + i] = true;
        }
        for i in 0..c {
            d1[u2 + i][u1 + b + i] = true;
        }
        for (deg, x, y) in ops {
            let (i, j) = (x as usize % n[deg], y as usize % n[deg]);
            if i == j {
                continue;
            }
            // basis change e_j -> e_j + e_i in C_deg, applied to both neighbors
            match deg {
                0 => for row in d0.iter_mut() { row[i] ^= row[j]; },
                1 => {
                    let rj = d0[j].clone();
                    for (a, bb) in d0[i].iter_mut().zip(rj) { *a ^= bb; }
                    for row in d1.iter_mut() { row[j] ^= row[i]; }
                }
                _ => {
                    let rj = d1[j].clone();
                    for (a, bb) in d1[i].iter_mut().zip(rj) { *a ^= bb; }
                }
            }
        }
        let mut cx = GradedComplexF2::new();
        for (h, &k) in n.iter().enumerate() {
            cx.set_gens(h as i32, 0, k);
        }
        cx.set_diff(0, 0, to_sparse(&d0, n[1], n[0]));
        cx.set_diff(1, 0, to_sparse(&d1, n[2], n[1]));
        prop_assert!(cx.is_complex());
        let h = cx.homology_dims();
        let get = |k: i32| h.get(&(k, 0)).copied().unwrap_or(0);
        prop_assert_eq!((get(0), get(1), get(2)), (u0, u1, u2));
        let r0 = common::dense_rank(d0.clone());
        let r1 = common::dense_rank(d1.clone());
        prop_assert_eq!(get(1), n[1] - r0 - r1);
    }

    #[test]
    fn rational_fillings_of_the_trivial_tangle(p in -25i64..25, q in 1i64..9) {
        prop_assume!(num_integer::gcd(p, q) == 1);
        let r = RationalSlope::new(p, q).unwrap();
        let d = TangleTemplate::trivial().fill(r).unwrap();
        prop_assert_eq!(determinant(&d).to_i64().unwrap(), p.abs());
        prop_assert_eq!(d.num_components(), if p % 2 == 0 { 2 } else { 1 });
    }

    #[test]
    fn integer_fillings_step_by_one_crossing(n in -30i64..30) {
        let t = TangleTemplate::trivial();
        let s = t.skein_step(n);
        let from = t.fill_integer(s.from).unwrap();
        let to = t.fill_integer(s.to).unwrap();
        prop_assert_eq!(from.num_crossings(), to.num_crossings() + 1);
        prop_assert!(from.resolve_crossing(s.crossing, s.kind).unwrap().same_up_to_relabeling(&to));
    }

    #[test]
    fn torus_knot_semigroups(p in 2usize..5, k in 1usize..6) {
        let q = p * k + 1;
        let letters: Vec<i32> = (0..q).flat_map(|_| 1..p as i32).collect();
        let d = BraidWord::new(p, letters).unwrap().closure();
        let a = alexander(&d).unwrap();
        let s = formal_semigroup(&a).unwrap();
        prop_assert!(is_actual_semigroup(&s));
        let bound = 2 * a.genus_bound() as i64 + 5;
        let members = series_members(&a, bound);
        prop_assert_eq!(&members, &(0..bound).filter(|&x| s.contains(x)).collect::<Vec<_>>());
        let generated: Vec<i64> = (0..bound)
            .filter(|&x| (0..=x / p as i64).any(|i| (x - i * p as i64) % q as i64 == 0))
            .collect();
        prop_assert_eq!(members, generated);
    }
}
