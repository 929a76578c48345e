//! The Exponential Rule's round-encoding weight updates.
//!
//! Every weight before round `k` has the form `(2k-1)/2^l`, so the weight
//! itself tells the update which round it is in.

use alloc::string::ToString;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Rounds beyond this need `2^(k!)` with more than `10!` bits.
pub const DEFAULT_MAX_ROUND: u64 = 10;

/// `r(x) = (m+1)/2` where `m` is the least integer with `2^l x = m`.
pub fn r(x: &Rational) -> Result<u64> {
    let (m, _) =
        rational::odd_dyadic_parts(x).ok_or_else(|| Error::ExponentialUndefined(rational::to_fraction_string(x)))?;
    let k: BigInt = (m + BigInt::one()) / BigInt::from(2);
    u64::try_from(k).map_err(|_| Error::ExponentialUndefined(rational::to_fraction_string(x)))
}

/// `k!` as a bit count, for `k <= 20`.
pub fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

/// `f(x)` (`won == false`) or `g(x)` (`won == true`).
pub fn update(x: &Rational, won: bool, max_round: u64) -> Result<Rational> {
    let k = r(x)?;
    if k > max_round || k > 20 {
        return Err(Error::ExponentialTooLarge(k));
    }
    let kk = BigInt::from(k);
    let factor = Rational::new(&kk * 2 + 1, &kk * 2 - 1);
    let mut y = factor * x;
    if won {
        let shift = usize::try_from(factorial(k)).map_err(|_| Error::ExponentialTooLarge(k))?;
        y /= Rational::from_integer(BigInt::one() << shift);
    }
    Ok(y)
}

/// Checks that every weight before round `round` (1-based) has numerator
/// `2*round - 1` and a power-of-two denominator.
pub fn check_round_encoding(weights: &[Rational], round: u64) -> Result<()> {
    let expected = BigInt::from(2 * round - 1);
    for w in weights {
        let ok = matches!(rational::odd_dyadic_parts(w), Some((m, _)) if m == expected);
        if !ok {
            return Err(Error::Invariant(
                "exponential rule: weight ".to_string()
                    + &rational::to_fraction_string(w)
                    + " breaks the round encoding",
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn r_values() {
        assert_eq!(r(&int(1)).unwrap(), 1);
        assert_eq!(r(&ratio(3, 2)).unwrap(), 2);
        assert_eq!(r(&ratio(5, 4)).unwrap(), 3);
        assert_eq!(r(&ratio(3, 4)).unwrap(), 2);
        assert!(matches!(r(&ratio(1, 3)), Err(Error::ExponentialUndefined(_))));
        assert!(matches!(r(&int(2)), Err(Error::ExponentialUndefined(_))));
    }

    #[test]
    fn updates() {
        let cap = DEFAULT_MAX_ROUND;
        assert_eq!(update(&int(1), false, cap).unwrap(), int(3));
        // 3 / (2^{1!} * 1)
        assert_eq!(update(&int(1), true, cap).unwrap(), ratio(3, 2));
        let y = update(&ratio(3, 4), false, cap).unwrap();
        assert_eq!(y, ratio(5, 4));
        assert_eq!(r(&y).unwrap(), 3);
        // round 2 winner: 5 / (2^{2!} * 3) * 3/4
        assert_eq!(update(&ratio(3, 4), true, cap).unwrap(), ratio(5, 16));
    }

    #[test]
    fn round_cap() {
        let x = Rational::new(BigInt::from(7), BigInt::one());
        assert_eq!(update(&x, false, 3), Err(Error::ExponentialTooLarge(4)));
    }
}
