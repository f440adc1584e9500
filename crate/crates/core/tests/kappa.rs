//! Filling families, transition search and κ.

use std::collections::BTreeMap;

use knotfill::cli::catalog::{kappa_k2_expected, template_t1, template_t1_plat, template_t2};
use knotfill::diagram::TangleTemplate;
use knotfill::kappa::{
    classify_steps, compute_family, compute_kappa, find_transition, kappa_auto, AutoOptions, FamilyOptions, StepKind,
};
use knotfill::khovanov::{kh_table, KhOptions};
use knotfill::lspace::determinant;
use knotfill::Error;
use num_traits::ToPrimitive;

fn mirrored() -> FamilyOptions {
    FamilyOptions { mirror: true, ..FamilyOptions::default() }
}

#[test]
fn trivial_tangle_has_empty_kappa() {
    let t = TangleTemplate::trivial();
    for mirror in [false, true] {
        let opts = AutoOptions { family: FamilyOptions { mirror, ..Default::default() }, ..Default::default() };
        let (k, p, _) = kappa_auto(&t, -5, 5, &opts).unwrap();
        assert_eq!(p.n, 0);
        assert_eq!(k.total_dim(), 0);
        assert!(k.width().is_err());
    }
}

#[test]
fn torus_link_family_alternates_around_zero() {
    let fam = compute_family(&TangleTemplate::trivial(), -6, 6, &FamilyOptions::default(), &mut BTreeMap::new()).unwrap();
    for (n, t) in &fam.tables {
        assert_eq!(t.total_dim() as i64, n.abs().max(1) + if *n == 0 { 1 } else { 0 }, "T({n})");
    }
    let steps = classify_steps(&fam).unwrap();
    let pattern: String = steps.iter().map(|s| s.kind.letter()).collect();
    assert_eq!(pattern, "IIIIISISSSSS");
}

#[test]
fn k2_family_steps_and_kappa() {
    let t = template_t2();
    let fam = compute_family(&t, 11, 21, &mirrored(), &mut BTreeMap::new()).unwrap();
    for t in fam.tables.values() {
        assert_eq!(t.width().unwrap(), 2);
    }
    let p = find_transition(&fam).unwrap();
    assert_eq!(p.n, 16);
    for s in &p.steps {
        if s.n <= 15 {
            assert_eq!(s.kind, StepKind::Injective, "f_{}", s.n);
        }
        if s.n >= 18 {
            assert_eq!(s.kind, StepKind::Surjective, "f_{}", s.n);
        }
    }
    let k = compute_kappa(&t, &fam, &p).unwrap();
    assert_eq!(k.to_json()["entries"], kappa_k2_expected());
}

#[test]
fn enlarging_the_range_keeps_kappa() {
    let t = template_t2();
    let opts = AutoOptions { family: mirrored(), ..AutoOptions::default() };
    let (a, _, _) = kappa_auto(&t, 11, 21, &opts).unwrap();
    let (b, _, _) = kappa_auto(&t, 9, 23, &opts).unwrap();
    assert_eq!((a.n, &a.entries), (b.n, &b.entries));
}

#[test]
fn narrow_range_is_widened() {
    let t = template_t2();
    let opts = AutoOptions { family: mirrored(), ..AutoOptions::default() };
    let (k, p, _) = kappa_auto(&t, 15, 17, &opts).unwrap();
    assert_eq!(k.n, 16);
    assert!(p.margin_below >= 4 && p.margin_above >= 4);
}

#[test]
fn range_without_transition_is_reported() {
    let t = template_t2();
    let fam = compute_family(&t, 20, 24, &mirrored(), &mut BTreeMap::new()).unwrap();
    assert!(matches!(find_transition(&fam), Err(Error::NoTransition { .. })));
    assert!(matches!(
        compute_family(&t, 3, 3, &mirrored(), &mut BTreeMap::new()),
        Err(Error::Family(_))
    ));
    let opts = AutoOptions { family: mirrored(), max_span: 6, ..AutoOptions::default() };
    assert!(matches!(kappa_auto(&t, 22, 24, &opts), Err(Error::NoTransition { .. })));
}

#[test]
fn kappa_sits_inside_earlier_fillings() {
    let t = template_t2();
    let opts = AutoOptions { family: mirrored(), ..AutoOptions::default() };
    let (k, p, fam) = kappa_auto(&t, 11, 21, &opts).unwrap();
    // carry the raw table down through the injective maps and compare pointwise
    let mut shift = (0, 0);
    let mut n = p.n - 1;
    while n >= fam.lo {
        for (&(h, q), &d) in &k.raw {
            assert!(fam.tables[&n].dim(h + shift.0, q + shift.1) >= d, "T({n}) at {:?}", (h, q));
        }
        if n == fam.lo {
            break;
        }
        let b = fam.bidegrees[&n];
        shift = (shift.0 + b.0, shift.1 + b.1);
        n -= 1;
    }
}

#[test]
fn bundled_t1_matches_its_plat_construction() {
    let small = template_t1();
    let big = template_t1_plat();
    assert!(small.base.crossings.len() < big.base.crossings.len());
    for n in 12..=24 {
        let a = small.fill_integer(n).unwrap();
        let b = big.fill_integer(n).unwrap();
        assert_eq!(determinant(&a), determinant(&b));
        assert_eq!(determinant(&a).to_i64().unwrap(), n, "det T1({n})");
    }
    for n in [17, 18, 19, 20, 21] {
        let a = kh_table(&small.fill_coherent(n).unwrap(), "", &KhOptions::default()).unwrap();
        let b = kh_table(&big.fill_coherent(n).unwrap(), "", &KhOptions::default()).unwrap();
        assert_eq!(a.entries(), b.entries(), "Kh T1({n})");
    }
}
