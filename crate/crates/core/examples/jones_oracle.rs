//! The graded Euler characteristic of reduced Kh against the Kauffman bracket state sum.

use knotfill::diagram::BraidWord;
use knotfill::khovanov::{jones_from_kh, kauffman_jones, kh_table, KhOptions};

fn main() -> knotfill::Result<()> {
    for word in ["1", "1,1", "1,1,1", "-1,-1,-1", "1,-2,1,-2", "(1,2)^4", "1,1,1,1,1", "1,2,-3,2,1,-3"] {
        let d = word.parse::<BraidWord>()?.closure();
        let kh = jones_from_kh(&kh_table(&d, word, &KhOptions::default())?);
        let bracket = kauffman_jones(&d)?;
        println!("{word:>14}: {kh}  {}", if kh == bracket { "agrees" } else { "DIFFERS" });
    }
    Ok(())
}
