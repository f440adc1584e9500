//! Tangle templates: validation, integer and rational fillings, skein steps.

use knotfill::cli::catalog::{template_t1, template_t2};
use knotfill::diagram::{RationalSlope, TangleTemplate};
use knotfill::lspace::determinant;

fn main() -> knotfill::Result<()> {
    for t in [TangleTemplate::trivial(), template_t1(), template_t2()] {
        let report = t.validate();
        println!("{}: base {} crossings, framing {}, valid {}", t.name, t.base.crossings.len(), t.framing, report.passed());
        for c in &report.checks {
            println!("    {:<20} {}", c.name, c.detail);
        }
        for n in [0, 1, 2, 19] {
            let d = t.fill_integer(n)?;
            println!("    T({n}): {} crossings, {} components, det {}", d.num_crossings(), d.num_components(), determinant(&d));
        }
        let r: RationalSlope = "37/2".parse()?;
        let d = t.fill(r)?;
        println!("    T({r}): {} crossings, det {}", d.num_crossings(), determinant(&d));
        let s = t.skein_step(20);
        println!("    T(20) and T(19): resolve crossing {} of T({}) with kind {}", s.crossing, s.from, s.kind);
    }
    Ok(())
}
