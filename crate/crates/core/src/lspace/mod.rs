//! Classical invariants: determinant, Alexander polynomial and formal semigroups.

pub mod alexander;
pub mod goeritz;
pub mod semigroup;

use serde_json::{json, Map, Value};

pub use alexander::{alexander, is_lspace_form, normalize_alexander, AlexanderPoly};
pub use goeritz::{determinant, goeritz_matrix};
pub use semigroup::{formal_semigroup, is_actual_semigroup, series_members, FormalSemigroup};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::diagram::PlanarDiagram;
use crate::error::Result;

/// A JSON number when it fits, otherwise a decimal string.
pub fn big_json(x: &BigInt) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// The combined report used by the `semigroup` and `alexander` commands.
pub fn invariants_json(d: &PlanarDiagram, name: &str) -> Result<Value> {
    let a = alexander(d)?;
    let det = determinant(d);
    let lf = is_lspace_form(&a);
    let mut obj = Map::new();
    obj.insert("format".into(), json!("kf-1"));
    obj.insert("name".into(), json!(name));
    obj.insert("alexander".into(), a.to_json());
    obj.insert("det".into(), big_json(&det));
    obj.insert("lspace_form".into(), json!(lf));
    if lf {
        let s = formal_semigroup(&a)?;
        obj.insert("semigroup".into(), s.to_json());
    }
    Ok(Value::Object(obj))
}
