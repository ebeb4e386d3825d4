//! Exact rational series kernels: univariate `q`-series, bivariate
//! `(q, ζ)` series, trivariate `(q₁, ζ, q₂)` series, and the eta, Eisenstein
//! and theta building blocks.

mod q3series;
mod qseries;
mod qzseries;
mod special;

pub use q3series::{is_positive, log_of_binomials, series_log1p_product, Monomial, Q3Bounds, Q3Series};
pub use qseries::QSeries;
pub use qzseries::QZSeries;
pub use special::{binary_theta, dedekind_eta, eisenstein_e2, euler_product};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rat;

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Sum of divisors σ₁(n).
pub fn sigma1(n: u64) -> u64 {
    divisors(n).into_iter().sum()
}

/// Möbius function.
pub fn moebius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        -result
    } else {
        result
    }
}

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(a.parse().ok()?, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// True when the rational is an integer.
pub fn is_integral(v: &Rat) -> bool {
    v.denom().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_functions() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(sigma1(4), 7);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(8), 0);
        assert_eq!(moebius(23), -1);
        assert_eq!(parse_rat("-46/11"), Some(ratio(-46, 11)));
        assert_eq!(parse_rat("24"), Some(rat(24)));
        assert_eq!(parse_rat("1/0"), None);
    }
}
