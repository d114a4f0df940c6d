use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A noncommutative monomial `U_{k_1} U_{k_2} ··· U_{k_p}`; letter `k` stands
/// for the `k`-th x-derivative of the potential.
///
/// Ordering is the canonical term order: degree, then weight, then the
/// letters lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(k: u32) -> Self {
        Word(vec![k])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        word_weight(self)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `U_0 · self`.
    pub fn prepend(&self, k: u32) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(k);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn sorted(&self) -> Word {
        let mut v = self.0.clone();
        v.sort_unstable();
        Word(v)
    }

    /// Words obtained by raising one letter by one derivative order, in
    /// position order.
    pub fn derivatives(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut v = self.0.clone();
            v[i] += 1;
            Word(v)
        })
    }
}

/// `Σ k_i + 2p`.
pub fn word_weight(w: &Word) -> u64 {
    w.0.iter().map(|&k| u64::from(k) + 2).sum()
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "U{k}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        assert_eq!(word_weight(&Word::identity()), 0);
        assert_eq!(word_weight(&Word::new(vec![2])), 4);
        assert_eq!(word_weight(&Word::new(vec![0, 0, 0])), 6);
    }

    #[test]
    fn canonical_order() {
        let mut ws = [
            Word::new(vec![0, 0, 0]),
            Word::new(vec![4]),
            Word::new(vec![2, 0]),
            Word::new(vec![1, 1]),
            Word::new(vec![0, 2]),
            Word::identity(),
            Word::new(vec![0]),
        ];
        ws.sort();
        let got: Vec<_> = ws.iter().map(|w| w.letters().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![],
                vec![0],
                vec![4],
                vec![0, 2],
                vec![1, 1],
                vec![2, 0],
                vec![0, 0, 0]
            ]
        );
    }
}
