//! Exact computation of the matrix KdV hierarchy and flat-space heat-kernel
//! invariants, with a spectral verifier for the one-dimensional matrix
//! Schrödinger operator.
//!
//! The crate is split along the computation pipeline:
//!
//! * [`ncalg`] exact rationals, half-integer binomials and the free
//!   noncommutative algebra in the symbols `U_0, U_1, ...`;
//! * [`opcalc`] repeated application of `L = ∂² + U` to monomials `x^{2j}`;
//! * [`hierarchy`] the polynomials `G_n[U]` by the operator route and by the
//!   closed combinatorial route, plus `h_n` and the flow right-hand side;
//! * [`flatheat`] heat endomorphisms `A_n` and traces `a_n` for
//!   `D = -(Δ + Σ B_k ∂_k + C)` on flat `R^d`;
//! * [`numverify`] Fourier collocation of `L`, heat-trace fits and RK4
//!   integration of the hierarchy flows.

pub mod error;
pub mod flatheat;
pub mod hierarchy;
pub mod ncalg;
pub mod numverify;
pub mod opcalc;

pub use error::{Error, Result};
pub use ncalg::{half_integer_binomial, NCPoly, Rational, Word};
