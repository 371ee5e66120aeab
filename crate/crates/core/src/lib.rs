//! Integer and half-odd-integer spherical harmonics, built and checked in
//! exact arithmetic.
//!
//! The crate is layered bottom-up:
//!
//! * [`symtrig`]: exact computer algebra on `sin^p cos^q e^{i mu phi}` sums.
//! * [`harmonics`]: Legendre-type polynomials, unnormalized `Y_l^m`, exact norms.
//! * [`operators`]: `M_x`, `M_y`, `M_z`, `M^2` and the ladder operators, with
//!   eigenvalue extraction and ladder classification.
//! * [`numeric`]: a floating-point oracle (finite differences, Gaussian
//!   quadrature, phase checks) that only sees expressions through evaluation.

pub mod error;
pub mod harmonics;
pub mod numeric;
pub mod operators;
pub mod symtrig;

pub use error::{Error, Result};
