//! A PAV variant whose voters' weights are multiplied by π the first time
//! they are left unsatisfied.
//!
//! Weights live in `Q + Q·π`. Scores with equal π-coefficients compare
//! exactly; otherwise the comparison goes through a certified dyadic
//! enclosure of π and fails loudly if the enclosure cannot decide.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::AddAssign;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{DecisionInstance, TieBreaker};
use crate::rational::{self, Rational};

/// Bits of the dyadic enclosure.
pub const PI_PRECISION_BITS: usize = 256;

/// `rational + pi * π`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PiWeight {
    pub rational: Rational,
    pub pi: Rational,
}

impl PiWeight {
    pub fn rational(value: Rational) -> Self {
        Self {
            rational: value,
            pi: Rational::zero(),
        }
    }

    pub fn pi_multiple(value: Rational) -> Self {
        Self {
            rational: Rational::zero(),
            pi: value,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.pi.is_zero()
    }
}

impl AddAssign<&PiWeight> for PiWeight {
    fn add_assign(&mut self, rhs: &PiWeight) {
        self.rational += &rhs.rational;
        self.pi += &rhs.pi;
    }
}

/// Per-voter state: the current weight and the satisfaction so far.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiVoter {
    pub weight: PiWeight,
    pub sat: usize,
}

impl PiVoter {
    pub fn fresh() -> Self {
        Self {
            weight: PiWeight::rational(Rational::one()),
            sat: 0,
        }
    }
}

/// `lo < π < hi`, both multiples of `2^-PI_PRECISION_BITS`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiBounds {
    pub lo: Rational,
    pub hi: Rational,
}

impl PiBounds {
    /// Machin's formula `π = 16 atan(1/5) - 4 atan(1/239)`; the alternating
    /// series gives exact bounds from consecutive partial sums.
    pub fn compute() -> Self {
        let (lo5, hi5) = atan_inverse_bounds(5, PI_PRECISION_BITS + 8);
        let (lo239, hi239) = atan_inverse_bounds(239, PI_PRECISION_BITS + 8);
        let lo = rational::int(16) * lo5 - rational::int(4) * hi239;
        let hi = rational::int(16) * hi5 - rational::int(4) * lo239;
        let scale = Rational::from_integer(BigInt::one() << PI_PRECISION_BITS);
        let lo = (lo * &scale).floor() / &scale;
        let hi = (hi * &scale).ceil() / &scale;
        Self { lo, hi }
    }

    /// Compares `a` and `b` as real numbers.
    pub fn compare(&self, a: &PiWeight, b: &PiWeight) -> Result<Ordering> {
        let da = &a.rational - &b.rational;
        let db = &a.pi - &b.pi;
        if db.is_zero() {
            return Ok(da.cmp(&Rational::zero()));
        }
        let (x, y) = (&da + &db * &self.lo, &da + &db * &self.hi);
        let (low, high) = if x <= y { (x, y) } else { (y, x) };
        if low.is_positive() {
            Ok(Ordering::Greater)
        } else if high.is_negative() {
            Ok(Ordering::Less)
        } else {
            Err(Error::PiIndeterminate)
        }
    }
}

/// Bounds on `atan(1/x)` whose gap is below `2^-bits`.
fn atan_inverse_bounds(x: i64, bits: usize) -> (Rational, Rational) {
    let x2 = BigInt::from(x * x);
    let mut power = BigInt::from(x);
    let mut sum = Rational::zero();
    let limit = BigInt::one() << bits;
    let mut k: i64 = 0;
    loop {
        let denom = BigInt::from(2 * k + 1) * &power;
        let term = Rational::new(BigInt::one(), denom.clone());
        let prev = sum.clone();
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        if denom > limit {
            return if prev < sum { (prev, sum) } else { (sum, prev) };
        }
        power *= &x2;
        k += 1;
    }
}

pub fn initial(n: usize) -> Vec<PiVoter> {
    alloc::vec![PiVoter::fresh(); n]
}

/// `f`: a rational weight gains the π factor; marked weights are unchanged.
pub fn lose(voter: &PiVoter) -> PiVoter {
    let weight = if voter.weight.is_rational() {
        PiWeight::pi_multiple(voter.weight.rational.clone())
    } else {
        voter.weight.clone()
    };
    PiVoter {
        weight,
        sat: voter.sat,
    }
}

/// `g`: the weight resets to `1/(sat+1)` or `π/(sat+1)`, counting this win.
pub fn win(voter: &PiVoter) -> PiVoter {
    let sat = voter.sat + 1;
    let value = rational::ratio(1, sat as i64 + 1);
    let weight = if voter.weight.is_rational() {
        PiWeight::rational(value)
    } else {
        PiWeight::pi_multiple(value)
    };
    PiVoter { weight, sat }
}

pub fn scores(instance: &DecisionInstance, voters: &[PiVoter]) -> Vec<PiWeight> {
    let mut out = alloc::vec![PiWeight::default(); instance.candidates().len()];
    for (v, state) in voters.iter().enumerate() {
        for &c in instance.approvals(v) {
            out[c] += &state.weight;
        }
    }
    out
}

pub(crate) fn argmax(
    instance: &DecisionInstance,
    scores: &[PiWeight],
    tb: &TieBreaker,
    bounds: &PiBounds,
) -> Result<usize> {
    let mut best = 0;
    for c in 1..scores.len() {
        let better = match bounds.compare(&scores[c], &scores[best])? {
            Ordering::Greater => true,
            Ordering::Equal => tb.prefers(instance.candidate(c), instance.candidate(best)),
            Ordering::Less => false,
        };
        if better {
            best = c;
        }
    }
    Ok(best)
}

pub fn step(
    voters: &[PiVoter],
    instance: &DecisionInstance,
    tb: &TieBreaker,
    bounds: &PiBounds,
) -> Result<(usize, Vec<PiVoter>)> {
    let winner = argmax(instance, &scores(instance, voters), tb, bounds)?;
    let next = voters
        .iter()
        .enumerate()
        .map(|(v, s)| if instance.approves(v, winner) { win(s) } else { lose(s) })
        .collect();
    Ok((winner, next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn enclosure_is_tight_and_correct() {
        let b = PiBounds::compute();
        // 3.14159265358979 < π < 3.14159265358980
        assert!(b.lo > ratio(314_159_265_358_979, 100_000_000_000_000));
        assert!(b.hi < ratio(314_159_265_358_980, 100_000_000_000_000));
        let width = &b.hi - &b.lo;
        let eps = Rational::new(BigInt::one(), BigInt::one() << 250);
        assert!(width < eps);
    }

    #[test]
    fn comparisons() {
        let b = PiBounds::compute();
        let pi = PiWeight::pi_multiple(int(1));
        let three = PiWeight::rational(int(3));
        let twenty_two_sevenths = PiWeight::rational(ratio(22, 7));
        assert_eq!(b.compare(&pi, &three).unwrap(), Ordering::Greater);
        assert_eq!(b.compare(&pi, &twenty_two_sevenths).unwrap(), Ordering::Less);
        assert_eq!(b.compare(&pi, &pi).unwrap(), Ordering::Equal);
        let near = PiWeight::rational(b.lo.clone() + (&b.hi - &b.lo) / int(2));
        assert_eq!(b.compare(&pi, &near), Err(Error::PiIndeterminate));
    }

    #[test]
    fn updates() {
        let fresh = PiVoter::fresh();
        let lost = lose(&fresh);
        assert_eq!(lost.weight, PiWeight::pi_multiple(int(1)));
        assert_eq!(lose(&lost), lost);
        let won = win(&lost);
        assert_eq!(won.weight, PiWeight::pi_multiple(ratio(1, 2)));
        let pav_like = win(&win(&fresh));
        assert_eq!(pav_like.weight, PiWeight::rational(ratio(1, 3)));
    }
}
