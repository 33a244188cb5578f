//! Exact-arithmetic effective positivity bounds.
//!
//! Every threshold is computed over big rationals. Irrational quantities
//! (fractional powers) are carried as certified [`numeric::Bracket`]s and
//! rounded in the direction that keeps a reported criterion sufficient.

pub mod adjoint;
pub mod error;
pub mod intersection;
pub mod jumping;
pub mod lelong;
pub mod matsusaka;
pub mod multiplier;
pub mod numeric;
pub mod numpoly;
pub mod positivity;
pub mod report;

pub use error::{Error, Result};
pub use numeric::{Bracket, Rational};
