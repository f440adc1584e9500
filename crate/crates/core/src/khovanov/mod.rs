//! Reduced Khovanov homology over F2.
//!
//! Two engines: a crossing-by-crossing scan with delooping and Gaussian
//! elimination, and the full cube of resolutions as a reference.

pub mod cube;
pub mod jones;
pub mod scan;
pub mod table;

use std::str::FromStr;

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

pub use cube::{build_reduced_complex, reduced_kh_cube};
pub use jones::kauffman_jones;
pub use scan::{reduced_kh_scan, ScanOptions};
pub use table::{delta, width_of, KhTable};

/// Which algorithm computes the homology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    #[default]
    Scan,
    Cube,
}

impl FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scan" => Ok(Engine::Scan),
            "cube" => Ok(Engine::Cube),
            _ => Err(Error::Parse(format!("unknown engine {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KhOptions {
    /// Generator budget: objects alive during a scan, or cube generators.
    pub max_generators: usize,
    pub engine: Engine,
}

impl Default for KhOptions {
    fn default() -> Self {
        KhOptions { max_generators: ScanOptions::default().max_objects, engine: Engine::Scan }
    }
}

/// Reduced Khovanov homology as a bigraded table.
pub fn kh_table(d: &PlanarDiagram, name: &str, opts: &KhOptions) -> Result<KhTable> {
    let entries = match opts.engine {
        Engine::Scan => reduced_kh_scan(d, &ScanOptions { max_objects: opts.max_generators })?,
        Engine::Cube => reduced_kh_cube(d, opts.max_generators)?,
    };
    Ok(KhTable::new(name, entries))
}

/// Total dimension of reduced homology with default options.
pub fn reduced_dimension(d: &PlanarDiagram) -> Result<usize> {
    Ok(kh_table(d, "", &KhOptions::default())?.total_dim())
}

/// Homological width of reduced homology with default options.
pub fn width(d: &PlanarDiagram) -> Result<i64> {
    kh_table(d, "", &KhOptions::default())?.width()
}

/// Graded Euler characteristic of a table.
pub fn jones_from_kh(t: &KhTable) -> LaurentPoly {
    t.jones()
}
