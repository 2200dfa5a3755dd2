//! Closed-form resolvent kernels, spectra and special functions for exactly
//! solvable one-dimensional Schrödinger operators, together with independent
//! numerical oracles that check them.
//!
//! Layers, bottom to top:
//! - [`complexmath`]: branch-pinned complex helpers and the gamma function.
//! - [`hypergeom`]: regularized ₀F₁ and ₁F₁, the asymptotic ₂F₀ sum, `U_α`.
//! - [`bessel`], [`whittaker`]: Bessel, Whittaker, isotonic and Weber functions.
//! - [`operators`]: operator families, spectra, resolvent and semigroup kernels.
//! - [`verify`]: finite-difference, quadrature and Wronskian oracles.

pub mod bessel;
pub mod complexmath;
pub mod error;
pub mod hypergeom;
mod ode;
pub mod operators;
pub mod verify;
pub mod whittaker;

pub use complexmath::C;
pub use error::{Error, Result};
pub use hypergeom::{EvalPath, Jet, SeriesPolicy, SpecialValue};
