//! Driving the command line from code; every JSON output carries `"format": "kf-1"`.

use knotfill::cli::run;

fn main() -> knotfill::Result<()> {
    for args in [
        vec!["kf", "kh", "--braid", "1,1,1", "--format", "json"],
        vec!["kf", "width", "--catalog", "fig8"],
        vec!["kf", "det", "--catalog", "T1", "--slope", "19"],
        vec!["kf", "semigroup", "--catalog", "T34"],
        vec!["kf", "validate", "--catalog", "T2"],
        vec!["kf", "kappa", "--catalog", "K2", "--range", "12..20", "--format", "latex"],
    ] {
        println!("$ {}", args[1..].join(" "));
        print!("{}", run(args)?.output);
    }
    Ok(())
}
