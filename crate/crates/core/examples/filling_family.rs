//! Kh of a run of fillings, with the injective/surjective type of each skein map.

use std::collections::BTreeMap;

use knotfill::cli::catalog::template_t2;
use knotfill::kappa::{classify_steps, compute_family, FamilyOptions};

fn main() -> knotfill::Result<()> {
    let t = template_t2();
    let opts = FamilyOptions { mirror: true, ..FamilyOptions::default() };
    let fam = compute_family(&t, 12, 20, &opts, &mut BTreeMap::new())?;
    for (n, tab) in &fam.tables {
        println!("T({n}): dim {:>2}, width {}", tab.total_dim(), tab.width()?);
    }
    for s in classify_steps(&fam)? {
        println!("f_{}: {:?}, defect at (h, q) = {:?}, bidegree {:?}", s.n, s.kind, s.defect, fam.bidegrees[&s.n]);
    }
    Ok(())
}
