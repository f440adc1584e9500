//! Determinant, Alexander polynomial and formal semigroups.

use knotfill::cli::Catalog;
use knotfill::lspace::{alexander, determinant, formal_semigroup, is_actual_semigroup, is_lspace_form, series_members};

fn main() -> knotfill::Result<()> {
    let catalog = Catalog::builtin();
    for name in ["trefoil", "fig8", "T34", "P-2,3,7", "K1", "K2"] {
        let d = catalog.get(name)?.diagram().expect("diagram");
        let a = alexander(&d)?;
        println!("{name}: det {}, Δ = {}", determinant(&d), a.poly().render("t"));
        if is_lspace_form(&a) {
            let s = formal_semigroup(&a)?;
            let bound = 2 * a.genus_bound() as i64 + 5;
            assert_eq!(series_members(&a, bound), (0..bound).filter(|&x| s.contains(x)).collect::<Vec<_>>());
            println!("    elements below {}: {:?}, semigroup: {}", s.threshold, s.elements_below(), is_actual_semigroup(&s));
        } else {
            println!("    not of L-space form");
        }
    }
    Ok(())
}
