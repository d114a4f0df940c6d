use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Rational, Word};

/// Finite linear combination of [`Word`]s with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality. Iteration follows the canonical term order of [`Word`].
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Word, Rational>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Word::identity(), Rational::one())
    }

    /// The single letter `U_k`.
    pub fn letter(k: u32) -> Self {
        Self::term(Word::letter(k), Rational::one())
    }

    pub fn term(word: Word, coeff: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coeff);
        p
    }

    /// Builds a polynomial from `(coefficient, letters)` pairs with integer
    /// coefficients; handy for literals in tests and docs.
    pub fn from_int_terms<I, W>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, W)>,
        W: Into<Vec<u32>>,
    {
        let mut p = Self::zero();
        for (c, w) in terms {
            p.add_term(Word::new(w.into()), Rational::from_integer(c.into()));
        }
        p
    }

    pub fn add_term(&mut self, word: Word, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn scaled(&self, c: &Rational) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Noncommutative product: bilinear extension of word concatenation.
    pub fn mul_poly(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }

    /// Formal x-derivative: Leibniz rule over the letters, `U_k ↦ U_{k+1}`.
    pub fn dx(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            for dw in w.derivatives() {
                out.add_term(dw, c.clone());
            }
        }
        out
    }

    /// Transposition anti-automorphism: reverses every word.
    pub fn reverse(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.reversed(), c.clone());
        }
        out
    }

    /// Image in the commutative polynomial ring: letters of each word sorted
    /// ascending and like terms merged.
    pub fn abelianize(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.sorted(), c.clone());
        }
        out
    }

    /// `Some(w)` when every word has weight `w` (the zero polynomial is
    /// homogeneous of every weight and reports `None`).
    pub fn homogeneous_weight(&self) -> Option<u64> {
        let mut weights = self.terms.keys().map(Word::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, weight: u64) -> bool {
        self.terms.keys().all(|w| w.weight() == weight)
    }

    pub fn max_letter(&self) -> Option<u32> {
        self.terms
            .keys()
            .flat_map(|w| w.letters().iter().copied())
            .max()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// First term (in canonical order) where `self` and `other` disagree,
    /// reported as `(word, self coeff, other coeff)`.
    pub fn first_difference(&self, other: &NCPoly) -> Option<(Word, Rational, Rational)> {
        let mut words: Vec<&Word> = self.terms.keys().chain(other.terms.keys()).collect();
        words.sort();
        words.dedup();
        words.into_iter().find_map(|w| {
            let (a, b) = (self.coeff(w), other.coeff(w));
            (a != b).then(|| (w.clone(), a, b))
        })
    }
}

impl FromIterator<(Word, Rational)> for NCPoly {
    fn from_iter<T: IntoIterator<Item = (Word, Rational)>>(iter: T) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }
}

impl AddAssign<&NCPoly> for NCPoly {
    fn add_assign(&mut self, rhs: &NCPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl AddAssign for NCPoly {
    fn add_assign(&mut self, rhs: NCPoly) {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(mut self, rhs: NCPoly) -> NCPoly {
        self += rhs;
        self
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(mut self) -> NCPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self + &(-rhs.clone())
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        self + (-rhs)
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.mul_poly(rhs)
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        self.mul_poly(&rhs)
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Plain-text form with ASCII letter names, e.g. `U2 + 3*U0*U0`.
impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.is_identity() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}
