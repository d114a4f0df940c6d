use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::ncalg::{factorial, NCPoly, Rational, Word};
use crate::{Error, Result};

/// How the top of the chain `l_0 ≤ ... ≤ l_{p-1}` is constrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChainBound {
    /// `l_{p-1} ≤ j+n-p`. Agrees with the operator route.
    #[default]
    AtMost,
    /// `l_{p-1} = j+n-p`. Disagrees with the operator route from level 2 on.
    Exact,
}

/// Ordered parts `(k_1, ..., k_p)`, `p ≥ 1`, indexing the word
/// `U_{k_1} ··· U_{k_p}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn word(&self) -> Word {
        Word::new(self.0.clone())
    }
}

/// All compositions of `2(n-p)` into `p` nonnegative parts, lexicographic.
/// Empty when `p > n` or `p == 0`.
pub fn compositions(n: u32, p: usize) -> Vec<Composition> {
    if p == 0 || p as u32 > n {
        return Vec::new();
    }
    let total = 2 * (n - p as u32);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fill(total, p, &mut cur, &mut out);
    out
}

fn fill(remaining: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
    if slots == 1 {
        cur.push(remaining);
        out.push(Composition(cur.clone()));
        cur.pop();
        return;
    }
    for k in 0..=remaining {
        cur.push(k);
        fill(remaining - k, slots - 1, cur, out);
        cur.pop();
    }
}

/// Sum over chains `0 ≤ l_0 ≤ ... ≤ l_{p-1}` with `2 l_i ≥ k_1 + ... + k_{i+1}`
/// of `binom(2l_0, k_1) binom(2l_1 - k_1, k_2) ··· binom(2l_{p-1} - k_1 - ... - k_{p-1}, k_p)`,
/// the chain top bounded by `j+n-p` as selected by `bound`.
pub fn c_coefficient(k: &Composition, j: u32, n: u32, bound: ChainBound) -> Result<BigInt> {
    let p = k.len();
    let err = |reason| Error::Composition {
        parts: k.0.clone(),
        n,
        p,
        reason,
    };
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    if p == 0 {
        return Err(err("empty composition"));
    }
    if p as u32 > n {
        return Err(err("more blocks than the level allows"));
    }
    let sum: u64 = k.0.iter().map(|&x| u64::from(x)).sum();
    if sum != 2 * u64::from(n - p as u32) {
        return Err(err("parts must sum to 2(n-p)"));
    }
    let top = j + n - p as u32;
    let mut total = BigInt::zero();
    chains(&k.0, 0, 0, 0, top, bound, &BigInt::one(), &mut total);
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn chains(
    parts: &[u32],
    i: usize,
    floor: u32,
    prefix: u32,
    top: u32,
    bound: ChainBound,
    acc: &BigInt,
    total: &mut BigInt,
) {
    if i == parts.len() {
        *total += acc;
        return;
    }
    let next_prefix = prefix + parts[i];
    let lo = floor.max(next_prefix.div_ceil(2));
    let last = i + 1 == parts.len();
    for l in lo..=top {
        if last && bound == ChainBound::Exact && l != top {
            continue;
        }
        let b = binomial(BigInt::from(2 * l - prefix), BigInt::from(parts[i]));
        chains(parts, i + 1, l, next_prefix, top, bound, &(acc * b), total);
    }
}

/// `P_{nj} = (2j)! Σ_p Σ_k C_k · U_{k_1} ··· U_{k_p}`.
pub(crate) fn p_from_compositions(n: u32, j: u32, bound: ChainBound) -> Result<NCPoly> {
    let scale = factorial(2 * j);
    let mut out = NCPoly::zero();
    for p in 1..=n as usize {
        for k in compositions(n, p) {
            let c = c_coefficient(&k, j, n, bound)?;
            out.add_term(k.word(), Rational::from_integer(c * &scale));
        }
    }
    Ok(out)
}
