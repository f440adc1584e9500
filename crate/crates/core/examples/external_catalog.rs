//! Reading a directory of named PD codes, as `KF_CATALOG_DIR` does for the CLI.

use knotfill::cli::catalog::load_dir;
use knotfill::cli::Catalog;
use knotfill::lspace::determinant;

fn main() -> knotfill::Result<()> {
    let dir = std::env::temp_dir().join(format!("kf-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    std::fs::write(dir.join("small.txt"), "# name and PD code per line\n3_1 PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]\n")?;
    std::fs::write(dir.join("hopf.json"), r#"{"format": "kf-1", "name": "L2a1", "pd": [[1,3,2,4],[3,1,4,2]]}"#)?;
    let mut catalog = Catalog::builtin();
    catalog.extend(load_dir(&dir)?);
    for name in ["3_1", "L2a1"] {
        let d = catalog.get(name)?.diagram().expect("diagram");
        println!("{name}: {} crossings, det {}", d.num_crossings(), determinant(&d));
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
