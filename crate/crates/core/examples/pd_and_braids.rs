//! Parse PD codes and braid words, mirror, resolve crossings and count smoothing circles.

use knotfill::diagram::{parse_pd, BraidWord};

fn main() -> knotfill::Result<()> {
    let hopf = parse_pd("[[1,3,2,4],[3,1,4,2]]")?.diagram;
    println!("Hopf link: {} crossings, {} components", hopf.num_crossings(), hopf.num_components());

    let trefoil: BraidWord = "1,1,1".parse()?;
    let d = trefoil.closure();
    println!("trefoil: n+ = {}, n- = {}, PD {:?}", d.n_plus(), d.n_minus(), d.pd_code());
    let m = d.mirror();
    println!("mirror: n+ = {}, n- = {}", m.n_plus(), m.n_minus());

    let (zero, _) = d.smoothing_circles(&[false; 3])?;
    let (one, _) = d.smoothing_circles(&[true; 3])?;
    println!("all-0 smoothing: {zero} circles, all-1 smoothing: {one} circles");

    let r = d.resolve_crossing(0, 1)?;
    println!("1-smoothing crossing 0: {} crossings, {} components", r.num_crossings(), r.num_components());

    let k1 = BraidWord::parse_shorthand("(2,1,3,2)^3,1,2,3,3,2", Some(4))?.closure();
    println!("K1 as a braid closure: {} crossings, {} component", k1.num_crossings(), k1.num_components());
    println!("{}", knotfill::diagram::pd_json(&k1, "K1"));
    Ok(())
}
