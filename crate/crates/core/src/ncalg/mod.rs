//! Exact arithmetic substrate: rationals, half-integer binomials and the free
//! noncommutative algebra on the letters `U_0, U_1, U_2, ...`.

pub(crate) mod format;
mod poly;
mod rational;
mod word;

pub use format::{format_rational_latex, TermRecord};
pub use poly::NCPoly;
pub use rational::{factorial, half_integer_binomial, parse_rational, Rational};
pub use word::{word_weight, Word};
