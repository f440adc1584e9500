//! Link diagrams: PD codes, braids, tangles and fillings.

pub mod braid;
pub mod fragment;
pub mod io;
pub mod pd;
pub mod plat;
pub mod slope;
pub mod template;

pub use braid::BraidWord;
pub use fragment::{End, Fragment, Handedness};
pub use io::{parse_pd, pd_json};
pub use pd::{OrientRule, PlanarDiagram};
pub use slope::RationalSlope;
pub use template::{inversion_quotient, SkeinStep, TangleTemplate, ValidationReport};
