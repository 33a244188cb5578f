//! Exact rationals, certified brackets and combinatorial helpers.

mod bracket;
mod combinat;
mod factored;
mod rational;
pub mod serde_int;

pub use bracket::{bracket_powi, nth_root_bracket, pow_bracket, Bracket};
pub use combinat::{binom, binom_signed, ceil_q, elem_sym, elem_sym_all, factorial, floor_q};
pub use factored::{CoprimeBasis, Factored};
pub use rational::Rational;
pub use serde_int::{bigint, bigint_map, opt_bigint};

/// Default bracket width.
pub fn default_tol() -> Rational {
    Rational::new(1, 1_000_000_000_000i64)
}
