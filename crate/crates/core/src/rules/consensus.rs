//! Perpetual Consensus.
//!
//! Every voter gains 1 per round; the `n` units are then taken back from the
//! positively weighted approvers of the winner, split equally.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Signed;

use super::wam;
use crate::error::{Error, Result};
use crate::model::{DecisionInstance, TieBreaker};
use crate::rational::{self, Rational};

pub fn step(
    weights: &[Rational],
    instance: &DecisionInstance,
    tb: &TieBreaker,
) -> Result<(usize, Vec<Rational>)> {
    let n = weights.len();
    let winner = wam::argmax_score(instance, weights, true, tb);
    let positive: Vec<usize> = (0..n)
        .filter(|&v| instance.approves(v, winner) && weights[v].is_positive())
        .collect();
    if positive.is_empty() {
        return Err(Error::ConsensusNoPositiveApprover);
    }
    let share = Rational::new((n as i64).into(), (positive.len() as i64).into());
    let mut next: Vec<Rational> = weights.iter().map(|w| w + rational::one()).collect();
    for v in positive {
        next[v] -= &share;
    }
    check_conservation(&next)?;
    Ok((winner, next))
}

/// `sum(weights) == n`.
pub fn check_conservation(weights: &[Rational]) -> Result<()> {
    let total: Rational = weights.iter().sum();
    if total != rational::int(weights.len() as i64) {
        return Err(Error::Invariant(format!(
            "consensus weights sum to {} instead of {}",
            rational::to_fraction_string(&total),
            weights.len()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use alloc::vec;

    #[test]
    fn hand_trace() {
        let inst = DecisionInstance::singletons(&["a", "a", "b"]).unwrap();
        let tb = TieBreaker::lexicographic();
        let (w1, s) = step(&wam::ones(3), &inst, &tb).unwrap();
        assert_eq!(inst.candidate(w1), "a");
        assert_eq!(s, vec![ratio(1, 2), ratio(1, 2), int(2)]);
        let (w2, s) = step(&s, &inst, &tb).unwrap();
        assert_eq!(inst.candidate(w2), "b");
        assert_eq!(s, vec![ratio(3, 2), ratio(3, 2), int(0)]);
        let (w3, _) = step(&s, &inst, &tb).unwrap();
        assert_eq!(inst.candidate(w3), "a");
    }

    #[test]
    fn unanimous_round_changes_nothing() {
        let inst = DecisionInstance::singletons(&["c", "c", "c"]).unwrap();
        let w = vec![ratio(1, 2), ratio(1, 2), int(2)];
        let (_, next) = step(&w, &inst, &TieBreaker::lexicographic()).unwrap();
        assert_eq!(next, w);
    }

    #[test]
    fn single_voter() {
        let inst = DecisionInstance::from_sets(&[&["b", "c"]]).unwrap();
        let (w, next) = step(&wam::ones(1), &inst, &TieBreaker::lexicographic()).unwrap();
        assert_eq!(inst.candidate(w), "b");
        assert_eq!(next, wam::ones(1));
    }
}
