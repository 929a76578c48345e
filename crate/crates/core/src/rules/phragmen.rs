//! Perpetual Phragmén: each win is a unit load spread over a set of the
//! winner's approvers so that their common resulting load is minimal.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{DecisionInstance, TieBreaker};
use crate::rational::{self, Rational};

/// Minimal common load for `candidate` and the voters that carry it.
///
/// Approvers are sorted by `(load, rank)`; the optimal set is a prefix of
/// that order, and the prefix is extended only while the next voter's load is
/// strictly below the current value.
pub fn best_prefix(
    loads: &[Rational],
    instance: &DecisionInstance,
    candidate: usize,
    ranks: &[usize],
) -> Option<(Rational, Vec<usize>)> {
    let mut approvers = instance.approvers(candidate);
    if approvers.is_empty() {
        return None;
    }
    approvers.sort_by(|&a, &b| loads[a].cmp(&loads[b]).then(ranks[a].cmp(&ranks[b])));
    let mut sum = rational::one() + &loads[approvers[0]];
    let mut value = sum.clone();
    let mut size = 1usize;
    for &v in &approvers[1..] {
        if loads[v] >= value {
            break;
        }
        sum += &loads[v];
        size += 1;
        value = &sum / rational::int(size as i64);
    }
    approvers.truncate(size);
    Some((value, approvers))
}

/// One round. Unapproved candidates are never eligible.
pub fn step(
    loads: &[Rational],
    instance: &DecisionInstance,
    tb: &TieBreaker,
    ranks: &[usize],
) -> Result<(usize, Vec<Rational>)> {
    let mut best: Option<(usize, Rational, Vec<usize>)> = None;
    for c in 0..instance.candidates().len() {
        let Some((value, set)) = best_prefix(loads, instance, c, ranks) else {
            continue;
        };
        let better = match &best {
            None => true,
            Some((b, bv, _)) => {
                value < *bv || (value == *bv && tb.prefers(instance.candidate(c), instance.candidate(*b)))
            }
        };
        if better {
            best = Some((c, value, set));
        }
    }
    let (winner, value, set) = best.ok_or(Error::PhragmenNoApprovers)?;
    let mut next = loads.to_vec();
    for v in set {
        next[v] = value.clone();
    }
    Ok((winner, next))
}

/// Loads sum to the number of rounds played and span at most 1.
pub fn check_invariants(loads: &[Rational], rounds: usize) -> Result<()> {
    let total: Rational = loads.iter().sum();
    if total != rational::int(rounds as i64) {
        return Err(Error::Invariant(format!(
            "phragmen loads sum to {} after {rounds} rounds",
            rational::to_fraction_string(&total)
        )));
    }
    if let (Some(min), Some(max)) = (loads.iter().min(), loads.iter().max()) {
        if max - min > rational::one() {
            return Err(Error::Invariant(format!(
                "phragmen load spread {} exceeds 1",
                rational::to_fraction_string(&(max - min))
            )));
        }
    }
    Ok(())
}

pub(crate) fn zeros(n: usize) -> Vec<Rational> {
    alloc::vec![Rational::zero(); n]
}
