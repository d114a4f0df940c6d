use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `binom(top + d/2, bot + d/2)` as the exact telescoping product
/// `(bot+d/2+1)(bot+d/2+2)···(top+d/2) / (top-bot)!`.
///
/// For even `d` this is the ordinary binomial coefficient; for odd `d` it is
/// the Γ-ratio `Γ(top+1+d/2) / ((top-bot)! Γ(bot+1+d/2))`.
pub fn half_integer_binomial(top: u32, bot: u32, d: u32) -> Result<Rational> {
    if top < bot {
        return Err(Error::BinomialOrder { top, bot });
    }
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    // Work with doubled values so every factor is an integer: (2 bot + d + 2i) / 2.
    let span = top - bot;
    let mut num = BigInt::one();
    for i in 1..=span {
        num *= BigInt::from(2 * u64::from(bot) + u64::from(d) + 2 * u64::from(i));
    }
    let den = factorial(span) * (BigInt::one() << span as usize);
    Ok(Rational::new(num, den))
}

/// Parses `"num/den"` or a bare integer into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
