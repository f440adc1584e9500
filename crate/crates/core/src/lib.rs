//! Reduced Khovanov homology over F2, tangle-filling families and the κ-invariant
//! of strongly invertible knots, with classical invariants alongside.

pub mod cli;
pub mod diagram;
pub mod error;
pub mod f2;
pub mod kappa;
pub mod khovanov;
pub mod lspace;
pub mod poly;

pub use error::{Error, Result};
