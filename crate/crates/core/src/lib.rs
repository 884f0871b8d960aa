//! Rotation group of the six-dimensional complex unit sphere.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: small dense matrices, determinant, matrix exponential.
//! * [`group`]: the order-12 group of signed permutation matrices and its
//!   Cayley table.
//! * [`generators`]: Lie-algebra generators, commutators and the Lie axioms.
//! * [`closed_form`]: trigonometric closed forms of the 6×6 and U(3) group
//!   matrices, their spectrum and the ℂ³ ↔ ℝ⁶ embedding.
//! * [`dynamics`]: the action on six-vectors, progressions, orbits,
//!   trajectories and periodic quadrature.
//! * [`cli`]: the `cusphere` command-line front end.

pub mod cli;
pub mod closed_form;
pub mod dynamics;
pub mod error;
pub mod generators;
pub mod group;
pub mod numerics;

pub use error::{Error, Result};
pub use generators::{Angles, ScaleParams};
pub use numerics::{Matrix, Scalar};
