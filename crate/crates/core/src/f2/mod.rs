//! Linear algebra and graded homology over the two-element field.

pub mod complex;
pub mod matrix;
pub mod sparse;

pub use complex::GradedComplexF2;
pub use matrix::F2Matrix;
pub use sparse::SparseF2;
