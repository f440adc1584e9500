//! The κ-invariant of a strongly invertible knot from the integer fillings of its
//! tangle exterior.
//!
//! For each `n` the skein map `f_n: Kh(T(n)) → Kh(T(n−1))` is either injective with
//! one-dimensional cokernel or surjective with one-dimensional kernel, and which one
//! is visible from total dimensions. κ is the image of `f_N ∘ f_{N+1}` for the
//! transition index `N`, regraded so that `q` agrees with `Kh(T(0))`.

mod family;
mod invariant;

pub use family::{classify_steps, compute_family, step_bidegree, FamilyOptions, FillingFamily, StepClass, StepKind};
pub use invariant::{
    compute_kappa, find_transition, kappa_auto, kappa_width, AutoOptions, KappaCase, KappaTable, TransitionProfile,
};
