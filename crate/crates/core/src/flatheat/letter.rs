use std::cmp::Ordering;
use std::fmt;

/// Coefficient symbol of `D = -(Δ + Σ B_k ∂_k + C)`; `B(k)` is 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Symbol {
    B(u32),
    C,
}

impl Symbol {
    pub fn name(&self) -> String {
        match self {
            Symbol::B(k) => format!("B{k}"),
            Symbol::C => "C".to_string(),
        }
    }

    pub fn parse(s: &str) -> Option<Symbol> {
        if s == "C" {
            return Some(Symbol::C);
        }
        let k: u32 = s.strip_prefix('B')?.parse().ok()?;
        (k >= 1).then_some(Symbol::B(k))
    }
}

/// A symbol with a partial-derivative multi-index of length `d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiLetter {
    pub symbol: Symbol,
    pub alpha: Vec<u32>,
}

impl MultiLetter {
    pub fn new(symbol: Symbol, alpha: Vec<u32>) -> Self {
        MultiLetter { symbol, alpha }
    }

    /// The undifferentiated symbol in dimension `d`.
    pub fn plain(symbol: Symbol, d: u32) -> Self {
        MultiLetter {
            symbol,
            alpha: vec![0; d as usize],
        }
    }

    pub fn order(&self) -> u32 {
        self.alpha.iter().sum()
    }

    /// `B` letters weigh `1 + |α|`, `C` letters `2 + |α|`.
    pub fn weight(&self) -> u64 {
        let base = match self.symbol {
            Symbol::B(_) => 1,
            Symbol::C => 2,
        };
        base + u64::from(self.order())
    }
}

impl fmt::Display for MultiLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol.name())?;
        if self.order() > 0 {
            let a: Vec<String> = self.alpha.iter().map(u32::to_string).collect();
            write!(f, "[{}]", a.join(","))?;
        }
        Ok(())
    }
}

/// Ordered product of [`MultiLetter`]s; canonical order is degree, weight,
/// then lexicographic letters.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct MultiWord(Vec<MultiLetter>);

impl MultiWord {
    pub fn new(letters: Vec<MultiLetter>) -> Self {
        MultiWord(letters)
    }

    pub fn identity() -> Self {
        MultiWord(Vec::new())
    }

    pub fn letters(&self) -> &[MultiLetter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(MultiLetter::weight).sum()
    }

    pub fn prepend(&self, letter: MultiLetter) -> MultiWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        MultiWord(v)
    }

    /// Leibniz terms of `∂_i` acting on the word.
    pub fn partials(&self, i: usize) -> impl Iterator<Item = MultiWord> + '_ {
        (0..self.0.len()).map(move |pos| {
            let mut v = self.0.clone();
            v[pos].alpha[i] += 1;
            MultiWord(v)
        })
    }

    pub fn rotated(&self, by: usize) -> MultiWord {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let len = v.len();
            v.rotate_left(by % len);
        }
        MultiWord(v)
    }

    /// Lexicographically least cyclic rotation; representative of the trace
    /// class of the word.
    pub fn canonical_rotation(&self) -> MultiWord {
        (0..self.0.len().max(1))
            .map(|r| self.rotated(r))
            .min_by(|a, b| a.0.cmp(&b.0))
            .unwrap_or_default()
    }
}

impl Ord for MultiWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join("*"))
    }
}
