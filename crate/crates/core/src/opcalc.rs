//! Univariate operator calculus for `L = ∂² + U(x)`.
//!
//! A [`Jet1D`] is a polynomial in `x` whose coefficients are noncommutative
//! polynomials in the letters `U_k(x)`. Powers of `L` are applied by repeated
//! differentiation and left multiplication by `U_0`; the constant term of
//! `L^{j+n}(x^{2j})` renamed `U_i(0) → U_i` is `P_{nj}[U]`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::ncalg::{NCPoly, Rational, Word};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Jet1D {
    terms: BTreeMap<(u32, Word), Rational>,
}

impl Jet1D {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `x^a` times the identity word.
    pub fn monomial(a: u32) -> Self {
        Self::term(a, Word::identity(), Rational::one())
    }

    pub fn term(x_exponent: u32, word: Word, coeff: Rational) -> Self {
        let mut j = Self::zero();
        j.add_term(x_exponent, word, coeff);
        j
    }

    pub fn add_term(&mut self, x_exponent: u32, word: Word, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((x_exponent, word)) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Word, &Rational)> {
        self.terms.iter().map(|((a, w), c)| (*a, w, c))
    }

    pub fn max_x_exponent(&self) -> Option<u32> {
        self.terms.keys().map(|(a, _)| *a).max()
    }

    /// The `x⁰` part as a polynomial in the letters, i.e. evaluation at `x = 0`.
    pub fn constant_term(&self) -> NCPoly {
        self.terms
            .iter()
            .filter(|((a, _), _)| *a == 0)
            .map(|((_, w), c)| (w.clone(), c.clone()))
            .collect()
    }

    /// Drops every term whose `x` exponent exceeds `max`.
    pub fn truncate_x(&mut self, max: u32) {
        self.terms.retain(|(a, _), _| *a <= max);
    }
}

/// Total x-derivative: power rule on `x^a`, Leibniz letter increment on the
/// word.
pub fn jet_dx(j: &Jet1D) -> Jet1D {
    let mut out = Jet1D::zero();
    for ((a, w), c) in &j.terms {
        if *a > 0 {
            out.add_term(a - 1, w.clone(), c * Rational::from_integer((*a).into()));
        }
        for dw in w.derivatives() {
            out.add_term(*a, dw, c.clone());
        }
    }
    out
}

/// `L j = ∂²j + U_0 · j`.
pub fn jet_apply_l(j: &Jet1D) -> Jet1D {
    let mut out = jet_dx(&jet_dx(j));
    for ((a, w), c) in &j.terms {
        out.add_term(*a, w.prepend(0), c.clone());
    }
    out
}

/// Applies `L` `times` times. Terms of x-degree above `2·(remaining)` can
/// never reach `x⁰` and are pruned when `prune` is set; only use this when
/// the caller reads the constant term alone.
pub fn jet_apply_l_power(j: &Jet1D, times: u32, prune: bool) -> Jet1D {
    let mut cur = j.clone();
    for step in 0..times {
        if prune {
            cur.truncate_x(2 * (times - step));
        }
        cur = jet_apply_l(&cur);
    }
    cur
}

/// `P_{nj}[U]`: the constant term of `L^{j+n}(x^{2j})`.
pub fn capital_p(n: u32, j: u32) -> Result<NCPoly> {
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    Ok(jet_apply_l_power(&Jet1D::monomial(2 * j), j + n, true).constant_term())
}

impl fmt::Debug for Jet1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((a, w), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*x^{a}*{w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn jet(terms: &[(i64, u32, &[u32])]) -> Jet1D {
        let mut j = Jet1D::zero();
        for &(c, a, w) in terms {
            j.add_term(a, Word::new(w.to_vec()), q(c));
        }
        j
    }

    #[test]
    fn dx_examples() {
        assert_eq!(jet_dx(&Jet1D::monomial(2)), jet(&[(2, 1, &[])]));
        assert_eq!(
            jet_dx(&jet(&[(1, 1, &[0])])),
            jet(&[(1, 0, &[0]), (1, 1, &[1])])
        );
        assert_eq!(jet_dx(&jet(&[(1, 0, &[2])])), jet(&[(1, 0, &[3])]));
    }

    #[test]
    fn apply_l_examples() {
        assert_eq!(jet_apply_l(&Jet1D::monomial(0)), jet(&[(1, 0, &[0])]));
        let once = jet_apply_l(&Jet1D::monomial(2));
        assert_eq!(once, jet(&[(2, 0, &[]), (1, 2, &[0])]));
        let twice = jet_apply_l(&once);
        assert_eq!(
            twice,
            jet(&[(4, 0, &[0]), (4, 1, &[1]), (1, 2, &[2]), (1, 2, &[0, 0])])
        );
    }

    #[test]
    fn capital_p_examples() {
        let u0 = |c| NCPoly::from_int_terms([(c, vec![0])]);
        assert_eq!(capital_p(1, 0).unwrap(), u0(1));
        assert_eq!(capital_p(1, 1).unwrap(), u0(4));
        assert_eq!(capital_p(1, 3).unwrap(), u0(2880));
        assert_eq!(
            capital_p(2, 1).unwrap(),
            NCPoly::from_int_terms([(14, vec![2]), (6, vec![0, 0])])
        );
        assert_eq!(
            capital_p(2, 2).unwrap(),
            NCPoly::from_int_terms([(528, vec![2]), (144, vec![0, 0])])
        );
        assert!(matches!(capital_p(0, 1), Err(Error::ZeroLevel)));
    }

    #[test]
    fn pruning_does_not_change_constant_term() {
        for n in 1..=3 {
            for j in 0..=3 {
                let start = Jet1D::monomial(2 * j);
                let full = jet_apply_l_power(&start, j + n, false).constant_term();
                let pruned = jet_apply_l_power(&start, j + n, true).constant_term();
                assert_eq!(full, pruned, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn capital_p_is_homogeneous_of_weight_2n() {
        for n in 1..=4u32 {
            for j in 0..=n {
                let p = capital_p(n, j).unwrap();
                assert!(p.is_homogeneous_of(2 * u64::from(n)), "n={n} j={j}: {p}");
            }
        }
    }

    #[test]
    fn p_n0_is_power_of_l_on_identity() {
        for n in 1..=5u32 {
            let mut cur = Jet1D::monomial(0);
            for _ in 0..n {
                cur = jet_apply_l(&cur);
            }
            assert_eq!(capital_p(n, 0).unwrap(), cur.constant_term());
        }
    }
}
