use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::letter::{MultiLetter, MultiWord, Symbol};
use crate::ncalg::{factorial, Rational};

/// Polynomial in `y_1, ..., y_d` with coefficients in the free algebra on
/// the [`MultiLetter`]s.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiJet {
    dim: u32,
    terms: BTreeMap<(Vec<u32>, MultiWord), Rational>,
}

impl MultiJet {
    pub fn zero(dim: u32) -> Self {
        MultiJet {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The constant jet `1 · I`.
    pub fn identity(dim: u32) -> Self {
        let mut j = Self::zero(dim);
        j.add_term(
            vec![0; dim as usize],
            MultiWord::identity(),
            Rational::one(),
        );
        j
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn add_term(&mut self, beta: Vec<u32>, word: MultiWord, coeff: Rational) {
        debug_assert_eq!(beta.len(), self.dim as usize);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((beta, word)) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &MultiWord, &Rational)> {
        self.terms.iter().map(|((b, w), c)| (b.as_slice(), w, c))
    }

    pub fn coeff(&self, beta: &[u32], word: &MultiWord) -> Rational {
        self.terms
            .get(&(beta.to_vec(), word.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Value at `y = 0`: the `β = 0` part.
    pub fn at_origin(&self) -> BTreeMap<MultiWord, Rational> {
        self.terms
            .iter()
            .filter(|((b, _), _)| b.iter().all(|&x| x == 0))
            .map(|((_, w), c)| (w.clone(), c.clone()))
            .collect()
    }

    pub fn truncate_degree(&mut self, max: u32) {
        self.terms.retain(|(b, _), _| b.iter().sum::<u32>() <= max);
    }

    /// `∂/∂y_i`, acting on both the monomial and the letters.
    pub fn partial(&self, i: usize) -> MultiJet {
        let mut out = MultiJet::zero(self.dim);
        for ((beta, w), c) in &self.terms {
            if beta[i] > 0 {
                let mut b = beta.clone();
                b[i] -= 1;
                out.add_term(b, w.clone(), c * Rational::from_integer(beta[i].into()));
            }
            for dw in w.partials(i) {
                out.add_term(beta.clone(), dw, c.clone());
            }
        }
        out
    }

    fn left_multiply(&self, letter: &MultiLetter, out: &mut MultiJet, sign: &Rational) {
        for ((beta, w), c) in &self.terms {
            out.add_term(beta.clone(), w.prepend(letter.clone()), c * sign);
        }
    }

    fn absorb_scaled(&mut self, other: MultiJet, sign: &Rational) {
        for ((b, w), c) in other.terms {
            self.add_term(b, w, c * sign);
        }
    }
}

/// `(Σ y_i²)^j · I`, by the multinomial theorem.
pub fn rho_squared_power(j: u32, d: u32) -> MultiJet {
    let mut out = MultiJet::zero(d);
    let jf = factorial(j);
    let mut parts = vec![0u32; d as usize];
    multinomial(j, 0, &mut parts, &mut |m| {
        let den: BigInt = m.iter().map(|&x| factorial(x)).product();
        let beta = m.iter().map(|&x| 2 * x).collect();
        out.add_term(beta, MultiWord::identity(), Rational::new(jf.clone(), den));
    });
    out
}

fn multinomial(left: u32, i: usize, parts: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if i + 1 == parts.len() {
        parts[i] = left;
        emit(parts);
        return;
    }
    for x in 0..=left {
        parts[i] = x;
        multinomial(left - x, i + 1, parts, emit);
    }
    parts[i] = 0;
}

/// `D m = -(Σ_i ∂_i² m + Σ_k B_k ∂_k m + C m)`; the `B` terms are skipped
/// when `with_b` is false.
pub fn jet_apply_d(m: &MultiJet, with_b: bool) -> MultiJet {
    let d = m.dim;
    let minus = -Rational::one();
    let mut out = MultiJet::zero(d);
    for i in 0..d as usize {
        let first = m.partial(i);
        if with_b {
            first.left_multiply(
                &MultiLetter::plain(Symbol::B(i as u32 + 1), d),
                &mut out,
                &minus,
            );
        }
        out.absorb_scaled(first.partial(i), &minus);
    }
    m.left_multiply(&MultiLetter::plain(Symbol::C, d), &mut out, &minus);
    out
}

/// `D^times m`, dropping terms whose y-degree can no longer reach zero.
pub fn jet_apply_d_power(m: &MultiJet, times: u32, with_b: bool) -> MultiJet {
    let mut cur = m.clone();
    for step in 0..times {
        cur.truncate_degree(2 * (times - step));
        cur = jet_apply_d(&cur, with_b);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn letter(s: Symbol, alpha: &[u32]) -> MultiLetter {
        MultiLetter::new(s, alpha.to_vec())
    }

    #[test]
    fn rho_powers() {
        let id = rho_squared_power(0, 3);
        assert_eq!(id, MultiJet::identity(3));

        let r1 = rho_squared_power(1, 2);
        assert_eq!(r1.len(), 2);
        assert_eq!(r1.coeff(&[2, 0], &MultiWord::identity()), q(1));
        assert_eq!(r1.coeff(&[0, 2], &MultiWord::identity()), q(1));

        let r2 = rho_squared_power(2, 2);
        assert_eq!(r2.len(), 3);
        assert_eq!(r2.coeff(&[4, 0], &MultiWord::identity()), q(1));
        assert_eq!(r2.coeff(&[2, 2], &MultiWord::identity()), q(2));
        assert_eq!(r2.coeff(&[0, 4], &MultiWord::identity()), q(1));
    }

    #[test]
    fn d_on_identity_is_minus_c() {
        let out = jet_apply_d(&MultiJet::identity(2), true);
        let mut expect = MultiJet::zero(2);
        expect.add_term(
            vec![0, 0],
            MultiWord::new(vec![letter(Symbol::C, &[0, 0])]),
            q(-1),
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn d_on_y_squared() {
        let out = jet_apply_d(&rho_squared_power(1, 1), false);
        let origin = out.at_origin();
        assert_eq!(origin.len(), 1);
        assert_eq!(origin[&MultiWord::identity()], q(-2));
        assert_eq!(
            out.coeff(&[2], &MultiWord::new(vec![letter(Symbol::C, &[0])])),
            q(-1)
        );
    }

    #[test]
    fn d_on_y_with_b() {
        let mut y = MultiJet::zero(1);
        y.add_term(vec![1], MultiWord::identity(), q(1));
        let out = jet_apply_d(&y, true);
        let mut expect = MultiJet::zero(1);
        expect.add_term(
            vec![0],
            MultiWord::new(vec![letter(Symbol::B(1), &[0])]),
            q(-1),
        );
        expect.add_term(
            vec![1],
            MultiWord::new(vec![letter(Symbol::C, &[0])]),
            q(-1),
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn leibniz_on_letters() {
        // D(C) in d = 1: -(C'' + B C' + C C)
        let mut m = MultiJet::zero(1);
        m.add_term(vec![0], MultiWord::new(vec![letter(Symbol::C, &[0])]), q(1));
        let out = jet_apply_d(&m, true);
        assert_eq!(
            out.coeff(&[0], &MultiWord::new(vec![letter(Symbol::C, &[2])])),
            q(-1)
        );
        assert_eq!(
            out.coeff(
                &[0],
                &MultiWord::new(vec![letter(Symbol::B(1), &[0]), letter(Symbol::C, &[1])])
            ),
            q(-1)
        );
        assert_eq!(
            out.coeff(
                &[0],
                &MultiWord::new(vec![letter(Symbol::C, &[0]), letter(Symbol::C, &[0])])
            ),
            q(-1)
        );
        assert_eq!(out.len(), 3);
    }
}
