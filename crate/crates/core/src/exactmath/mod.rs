//! Exact arithmetic over the rationals.
//!
//! Everything in this crate is computed with arbitrary-precision rationals;
//! there is no floating point anywhere. This module provides the rational
//! scalar, dense univariate polynomials in `t`, places of the projective
//! line with their valuations, GCD-free bases, and the polynomial parser.

mod parse;
mod place;
mod poly;

pub use parse::{parse_poly, ParseError, ParseErrorKind};
pub use place::{gcd_free_basis, valuation, Place, Valuation, ValuationError};
pub use poly::{eval_mod, Poly};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q` (optional leading sign) into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() || den.is_negative() {
        return None;
    }
    Some(Rational::new(num, den))
}
