//! Heat-kernel endomorphisms of flat-space Laplace-type operators
//! `D = -(Σ_i ∂_i² + Σ_k B_k ∂_k + C)` on `R^d`.
//!
//! On the diagonal the heat kernel of `D` expands as
//! `K(x, x, t) ~ Σ_n A_n(x) t^{n - d/2}`, and
//!
//! ```text
//! A_n = (4π)^{-d/2} (-1)^n Σ_{j=0}^{3n} binom(3n+d/2, j+d/2) / (4^j j! (j+n)!)
//!       · D^{j+n}(ρ^{2j} I) |_{y=x}
//! ```
//!
//! with `ρ² = Σ y_i²` the squared distance from the evaluation point. The
//! symbols `B_k` and `C` stay formal and noncommuting, so the output holds
//! for every fiber rank.

mod endo;
mod jet;
mod letter;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::ncalg::{factorial, half_integer_binomial, Rational};
use crate::{Error, Result};

pub use endo::{EndoPoly, EndoRecord, LetterRecord, MultiTermRecord, Prefactor, TracePoly};
pub use jet::{jet_apply_d, jet_apply_d_power, rho_squared_power, MultiJet};
pub use letter::{MultiLetter, MultiWord, Symbol};

/// Default largest `n` in dimension `d ≥ 2`.
pub const DEFAULT_MAX_N_MULTI: u32 = 3;
/// Default largest `n` in dimension one.
pub const DEFAULT_MAX_N_LINE: u32 = 8;

#[derive(Debug, Clone, Copy)]
pub struct FlatHeat {
    max_n_line: u32,
    max_n_multi: u32,
}

impl Default for FlatHeat {
    fn default() -> Self {
        FlatHeat {
            max_n_line: DEFAULT_MAX_N_LINE,
            max_n_multi: DEFAULT_MAX_N_MULTI,
        }
    }
}

impl FlatHeat {
    /// Same cap in every dimension.
    pub fn with_max_n(max_n: u32) -> Self {
        FlatHeat {
            max_n_line: max_n,
            max_n_multi: max_n,
        }
    }

    fn check(&self, n: u32, d: u32) -> Result<()> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        let cap = if d == 1 {
            self.max_n_line
        } else {
            self.max_n_multi
        };
        if n > cap {
            return Err(Error::LevelCap { n, cap });
        }
        Ok(())
    }

    /// `A_n(x, D)` at the origin of flat coordinates.
    pub fn heat_endomorphism(&self, n: u32, d: u32, with_b: bool) -> Result<EndoPoly> {
        self.check(n, d)?;
        let parts = (0..=3 * n)
            .into_par_iter()
            .map(|j| {
                let weight = term_weight(n, j, d)?;
                let jet = jet_apply_d_power(&rho_squared_power(j, d), j + n, with_b);
                Ok(jet
                    .at_origin()
                    .into_iter()
                    .map(|(w, c)| (w, c * &weight))
                    .collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = EndoPoly::zero(d);
        for (w, c) in parts.into_iter().flatten() {
            out.add_term(w, c);
        }
        Ok(out)
    }

    /// `a_n(x, D) = tr A_n(x, D)`.
    pub fn heat_invariant_trace(&self, n: u32, d: u32, with_b: bool) -> Result<TracePoly> {
        Ok(self.heat_endomorphism(n, d, with_b)?.trace())
    }
}

/// `(-1)^n binom(3n+d/2, j+d/2) / (4^j j! (j+n)!)`.
fn term_weight(n: u32, j: u32, d: u32) -> Result<Rational> {
    let binom = half_integer_binomial(3 * n, j, d)?;
    let den = (BigInt::from(1) << (2 * j as usize)) * factorial(j) * factorial(j + n);
    let w = binom / Rational::from_integer(den);
    Ok(if n % 2 == 1 { -w } else { w })
}

pub fn heat_endomorphism(n: u32, d: u32, with_b: bool) -> Result<EndoPoly> {
    FlatHeat::default().heat_endomorphism(n, d, with_b)
}

pub fn heat_invariant_trace(n: u32, d: u32, with_b: bool) -> Result<TracePoly> {
    FlatHeat::default().heat_invariant_trace(n, d, with_b)
}
