//! Exact rational helpers.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `numer / denom`. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Renders as `num/den`, including a `/1` for integers, so machine-readable
/// output never mixes two notations.
pub fn to_fraction_string(value: &Rational) -> String {
    let mut out = String::new();
    let _ = write!(out, "{}/{}", value.numer(), value.denom());
    out
}

/// Parses `num/den` or a plain integer.
pub fn parse_fraction(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn floor_to_u64(value: &Rational) -> Option<u64> {
    value.floor().to_integer().to_u64()
}

pub fn ceil_to_u64(value: &Rational) -> Option<u64> {
    value.ceil().to_integer().to_u64()
}

/// Lossy decimal view for human-facing tables only.
pub fn approx_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// If `value` is a positive dyadic rational `m / 2^l` with `m` odd, returns
/// `(m, l)`.
pub fn odd_dyadic_parts(value: &Rational) -> Option<(BigInt, u64)> {
    if !value.is_positive() {
        return None;
    }
    let denom = value.denom();
    let shift = denom.trailing_zeros().unwrap_or(0);
    if (denom >> shift) != BigInt::one() {
        return None;
    }
    let numer = value.numer();
    if numer.is_even() {
        return None;
    }
    Some((numer.clone(), shift))
}
