//! Computer algebra for deforming algebraic cycles through Koszul complexes.
//!
//! The crate works over affine space over ℚ localized at the origin. A cycle
//! is a rational combination of Koszul complexes of (ε-deformed) regular
//! sequences at codimension-`p` points; its Chern-character image is a
//! generalized-fraction class in local cohomology, and it is a Milnor
//! K-theoretic cycle exactly when the summed boundary class at the origin is
//! trivial. The [`cycles`] module runs the obstruction-elimination pipeline on
//! top of that calculus.

pub mod algebra;
pub mod cohomology;
pub mod cycles;
mod error;
pub mod koszul;

pub use error::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;
