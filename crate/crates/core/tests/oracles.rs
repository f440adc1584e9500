//! Reduced Kh against independent oracles: the full cube, the Kauffman bracket,
//! the Goeritz and Alexander determinants.

mod common;

use std::collections::BTreeMap;

use knotfill::diagram::{parse_pd, BraidWord, PlanarDiagram};
use knotfill::khovanov::{jones_from_kh, kauffman_jones, kh_table, Engine, KhOptions, KhTable};
use knotfill::lspace::{alexander, determinant};
use num_traits::ToPrimitive;

fn scan(d: &PlanarDiagram) -> KhTable {
    kh_table(d, "", &KhOptions::default()).unwrap()
}

fn cube(d: &PlanarDiagram) -> KhTable {
    kh_table(d, "", &KhOptions { engine: Engine::Cube, ..KhOptions::default() }).unwrap()
}

#[test]
fn corpus_is_large_enough() {
    assert!(common::corpus().len() >= 25);
    assert!(common::corpus().iter().all(|(_, d)| d.num_crossings() <= 12));
}

#[test]
fn scan_matches_cube() {
    for (name, d) in common::corpus() {
        assert_eq!(scan(&d).entries(), cube(&d).entries(), "{name}");
    }
}

#[test]
fn euler_characteristic_is_the_bracket() {
    for (name, d) in common::corpus() {
        assert_eq!(jones_from_kh(&scan(&d)), kauffman_jones(&d).unwrap(), "{name}");
    }
}

#[test]
fn goeritz_determinant_is_alexander_at_minus_one() {
    for (name, d) in common::corpus() {
        if d.num_components() != 1 {
            continue;
        }
        let a = alexander(&d).unwrap();
        assert_eq!(determinant(&d).to_u128().unwrap(), a.determinant(), "{name}");
    }
}

#[test]
fn kh_bounds_determinant_with_equality_when_thin() {
    for (name, d) in common::corpus() {
        let t = scan(&d);
        let det = determinant(&d).to_usize().unwrap();
        assert!(t.total_dim() >= det, "{name}");
        if t.width().unwrap() == 1 {
            assert_eq!(t.total_dim(), det, "{name}");
        }
    }
}

#[test]
fn mirror_negates_gradings() {
    for (name, d) in common::corpus() {
        assert_eq!(scan(&d.mirror()), scan(&d).negated(), "{name}");
    }
}

#[test]
fn small_knot_values() {
    let u = scan(&PlanarDiagram::unknot());
    assert_eq!(u.entries(), &BTreeMap::from([((0, 0), 1)]));
    let tref = scan(&"1,1,1".parse::<BraidWord>().unwrap().closure());
    assert_eq!((tref.total_dim(), tref.width().unwrap()), (3, 1));
    let fig8 = scan(&"1,-2,1,-2".parse::<BraidWord>().unwrap().closure());
    assert_eq!((fig8.total_dim(), fig8.width().unwrap()), (5, 1));
    let one = scan(&"1".parse::<BraidWord>().unwrap().closure());
    assert_eq!(one.entries(), &BTreeMap::from([((0, 0), 1)]));
}

#[test]
fn presentations_of_the_same_knot_agree() {
    let tref_pd = parse_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]").unwrap().diagram;
    let tref_braid = "1,1,1".parse::<BraidWord>().unwrap().closure();
    assert_eq!(scan(&tref_pd), scan(&tref_braid));
    let fig8_pd = parse_pd("[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]").unwrap().diagram;
    let fig8_braid = "1,-2,1,-2".parse::<BraidWord>().unwrap().closure();
    assert_eq!(scan(&fig8_pd).entries(), scan(&fig8_braid).entries());
}

#[test]
fn relabeling_and_basepoint_do_not_matter() {
    let d = "(1,2)^4".parse::<BraidWord>().unwrap().closure();
    let shifted: Vec<Vec<i64>> = d.pd_code().iter().map(|t| t.iter().map(|&a| a as i64 + 100).collect()).collect();
    let e = parse_pd(&serde_json::to_string(&shifted).unwrap()).unwrap().diagram;
    assert_eq!(scan(&d).entries(), scan(&e).entries());
    for arc in d.arcs() {
        let moved = d.clone().with_basepoint(arc).unwrap();
        assert_eq!(scan(&moved).entries(), scan(&d).entries());
    }
}

#[test]
fn budget_is_an_error_not_a_crash() {
    let d = "(1,2)^5".parse::<BraidWord>().unwrap().closure();
    let r = kh_table(&d, "", &KhOptions { engine: Engine::Cube, max_generators: 10 });
    assert!(matches!(r, Err(knotfill::Error::Budget(_))));
    let r = kh_table(&d, "", &KhOptions { engine: Engine::Scan, max_generators: 2 });
    assert!(matches!(r, Err(knotfill::Error::Budget(_))));
}
