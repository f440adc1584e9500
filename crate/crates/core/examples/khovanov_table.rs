//! Reduced Khovanov homology over F2 with both engines, printed as a δ-grid.

use knotfill::diagram::BraidWord;
use knotfill::khovanov::{kh_table, Engine, KhOptions};

fn main() -> knotfill::Result<()> {
    for (name, word) in [("trefoil", "1,1,1"), ("figure-eight", "1,-2,1,-2"), ("T(3,4)", "(1,2)^4")] {
        let d = word.parse::<BraidWord>()?.closure();
        let scan = kh_table(&d, name, &KhOptions::default())?;
        let cube = kh_table(&d, name, &KhOptions { engine: Engine::Cube, ..KhOptions::default() })?;
        assert_eq!(scan.entries(), cube.entries());
        println!("{name}: dim {}, width {}", scan.total_dim(), scan.width()?);
        print!("{}", scan.render_text());
    }
    Ok(())
}
