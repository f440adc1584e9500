//! κ for both catalog knots and for the trivial tangle.

use knotfill::cli::Catalog;
use knotfill::kappa::{kappa_auto, AutoOptions, FamilyOptions};

fn main() -> knotfill::Result<()> {
    let catalog = Catalog::builtin();
    for name in ["K1", "K2", "trivial"] {
        let e = catalog.get(name)?;
        let t = e.template.as_ref().expect("template");
        let g = e.n_guess.unwrap_or(t.framing);
        let opts = AutoOptions { family: FamilyOptions { mirror: e.mirror_template, ..Default::default() }, ..Default::default() };
        let (k, p, _) = kappa_auto(t, g - 5, g + 5, &opts)?;
        println!("{name}: steps {} over {}..{}", p.pattern, k.range.0, k.range.1);
        print!("{}", k.render_text());
        println!("{}\n", k.to_json());
    }
    Ok(())
}
