//! The matrix KdV hierarchy `∂_t U = ∂_x G_n[U]`.
//!
//! `G_n` is computed two ways that share nothing but the prefactors:
//!
//! * the operator route applies `L = ∂² + U` to `x^{2j}` and reads off the
//!   constant term ([`crate::opcalc::capital_p`]);
//! * the closed route sums chain-weighted binomial products over
//!   compositions ([`c_coefficient`]).
//!
//! Both give `G_n = (2n)!/(2·n!) Σ_{j=0}^{n} binom(n+1/2, j+1/2)
//! (-1)^j / (4^j j! (j+n)!) · P_{nj}`.

mod closed;
mod tabulated;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::ncalg::{factorial, half_integer_binomial, NCPoly, Rational};
use crate::opcalc::capital_p;
use crate::{Error, Result};

pub use closed::{c_coefficient, compositions, ChainBound, Composition};
pub use tabulated::tabulated_g;

/// Levels above this are refused unless a larger cap is requested.
pub const DEFAULT_MAX_LEVEL: u32 = 8;

#[derive(Debug, Clone, Copy)]
pub struct Hierarchy {
    max_level: u32,
}

impl Default for Hierarchy {
    fn default() -> Self {
        Hierarchy {
            max_level: DEFAULT_MAX_LEVEL,
        }
    }
}

/// `(2n)! / (2·n!)`, the factor relating `G_n` to `h_n`.
pub fn g_over_h(n: u32) -> Rational {
    Rational::new(factorial(2 * n), factorial(n) * BigInt::from(2))
}

/// `binom(n+1/2, j+1/2) (-1)^j / (4^j j! (j+n)!)`.
pub(crate) fn level_weight(n: u32, j: u32) -> Rational {
    let binom = half_integer_binomial(n, j, 1).expect("j ≤ n");
    let den = (BigInt::from(1) << (2 * j as usize)) * factorial(j) * factorial(j + n);
    let w = binom / Rational::from_integer(den);
    if j % 2 == 1 {
        -w
    } else {
        w
    }
}

impl Hierarchy {
    pub fn with_max_level(max_level: u32) -> Self {
        Hierarchy { max_level }
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    fn check_level(&self, n: u32) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroLevel);
        }
        if n > self.max_level {
            return Err(Error::LevelCap {
                n,
                cap: self.max_level,
            });
        }
        Ok(())
    }

    /// `G_n` from the constant terms of `L^{j+n}(x^{2j})`.
    pub fn g_operator(&self, n: u32) -> Result<NCPoly> {
        self.check_level(n)?;
        let parts = (0..=n)
            .into_par_iter()
            .map(|j| capital_p(n, j).map(|p| p.scaled(&level_weight(n, j))))
            .collect::<Result<Vec<_>>>()?;
        let sum = parts.into_iter().fold(NCPoly::zero(), |acc, p| acc + p);
        Ok(sum.scaled(&g_over_h(n)))
    }

    /// `G_n` from the closed composition formula.
    pub fn g_closed(&self, n: u32) -> Result<NCPoly> {
        self.g_closed_with(n, ChainBound::AtMost)
    }

    /// Closed route with an explicit chain bound. [`ChainBound::Exact`] pins
    /// the chain top and is kept only to show that it disagrees with the
    /// operator route.
    pub fn g_closed_with(&self, n: u32, bound: ChainBound) -> Result<NCPoly> {
        self.check_level(n)?;
        let parts = (0..=n)
            .into_par_iter()
            .map(|j| {
                let p = closed::p_from_compositions(n, j, bound)?;
                Ok(p.scaled(&level_weight(n, j)))
            })
            .collect::<Result<Vec<_>>>()?;
        let sum = parts.into_iter().fold(NCPoly::zero(), |acc, p| acc + p);
        Ok(sum.scaled(&g_over_h(n)))
    }

    /// `h_n = 2·n!/(2n)! · G_n`, with `h_0 = 1`.
    pub fn h_invariant(&self, n: u32) -> Result<NCPoly> {
        if n == 0 {
            return Ok(NCPoly::one());
        }
        let g = self.g_operator(n)?;
        Ok(g.scaled(&(Rational::from_integer(1.into()) / g_over_h(n))))
    }

    /// Right-hand side `∂_x G_n` of the `n`-th flow.
    pub fn kdv_rhs(&self, n: u32) -> Result<NCPoly> {
        Ok(self.g_operator(n)?.dx())
    }
}

pub fn g_operator(n: u32) -> Result<NCPoly> {
    Hierarchy::default().g_operator(n)
}

pub fn g_closed(n: u32) -> Result<NCPoly> {
    Hierarchy::default().g_closed(n)
}

pub fn h_invariant(n: u32) -> Result<NCPoly> {
    Hierarchy::default().h_invariant(n)
}

pub fn kdv_rhs_symbolic(n: u32) -> Result<NCPoly> {
    Hierarchy::default().kdv_rhs(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, &[u32])]) -> NCPoly {
        NCPoly::from_int_terms(terms.iter().map(|&(c, w)| (c, w.to_vec())))
    }

    #[test]
    fn low_levels_by_both_routes() {
        for n in 1..=3 {
            let expect = tabulated_g(n).unwrap();
            assert_eq!(g_operator(n).unwrap(), expect, "operator n={n}");
            assert_eq!(g_closed(n).unwrap(), expect, "closed n={n}");
        }
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_invariant(0).unwrap(), NCPoly::one());
        assert_eq!(h_invariant(1).unwrap(), poly(&[(1, &[0])]));
        let sixth = Rational::new(1.into(), 6.into());
        assert_eq!(
            h_invariant(2).unwrap(),
            poly(&[(1, &[2]), (3, &[0, 0])]).scaled(&sixth)
        );
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(kdv_rhs_symbolic(1).unwrap(), poly(&[(1, &[1])]));
        assert_eq!(
            kdv_rhs_symbolic(2).unwrap(),
            poly(&[(1, &[3]), (3, &[0, 1]), (3, &[1, 0])])
        );
        let rhs3 = kdv_rhs_symbolic(3).unwrap();
        assert_eq!(rhs3, tabulated_g(3).unwrap().dx());
        assert!(rhs3.is_homogeneous_of(7));
    }

    #[test]
    fn level_cap_and_zero_level() {
        assert!(matches!(g_operator(0), Err(Error::ZeroLevel)));
        assert!(matches!(
            g_operator(9),
            Err(Error::LevelCap { n: 9, cap: 8 })
        ));
        assert!(Hierarchy::with_max_level(2).g_closed(3).is_err());
    }

    #[test]
    fn exact_chain_bound_breaks_level_two() {
        let h = Hierarchy::default();
        assert_ne!(
            h.g_closed_with(2, ChainBound::Exact).unwrap(),
            h.g_operator(2).unwrap()
        );
    }
}
