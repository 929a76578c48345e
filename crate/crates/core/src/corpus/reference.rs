//! From-scratch reference implementations.
//!
//! Every round recomputes the rule's weights from the full history using the
//! closed-form definitions, sharing no stepping code with [`crate::rules`].
//! Quadratic in the number of rounds and exponential for Phragmén; intended
//! for small inputs only.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{ChoiceSequence, DecisionInstance, DecisionSequence, TieBreaker};
use crate::rational::{self, Rational};
use crate::rules::{PiBounds, PiWeight, RuleId};

pub const MAX_VOTERS: usize = 8;
pub const MAX_ROUNDS: usize = 10;

/// Winners of `rule` on `sequence`, recomputed from scratch each round.
pub fn naive_choices(rule: RuleId, sequence: &DecisionSequence, tb: &TieBreaker) -> Result<ChoiceSequence> {
    if sequence.voters() > MAX_VOTERS {
        return Err(Error::SizeBoundExceeded("at most 8 voters"));
    }
    if sequence.len() > MAX_ROUNDS {
        return Err(Error::SizeBoundExceeded("at most 10 rounds"));
    }
    let pi = if rule == RuleId::PiPav { Some(PiBounds::compute()) } else { None };
    let mut winners: Vec<usize> = Vec::with_capacity(sequence.len());
    for t in 0..sequence.len() {
        let past = &sequence.rounds()[..t];
        let instance = sequence.round(t);
        let w = match rule {
            RuleId::Av => weighted_winner(instance, &alloc::vec![Rational::one(); sequence.voters()], tb),
            RuleId::Pav => weighted_winner(instance, &pav_weights(past, &winners, sequence.voters()), tb),
            RuleId::Reset => weighted_winner(instance, &reset_weights(past, &winners, sequence.voters()), tb),
            RuleId::Exponential => {
                weighted_winner(instance, &exponential_weights(past, &winners, sequence.voters()), tb)
            }
            RuleId::Consensus => consensus_winner(instance, &consensus_weights(past, &winners, sequence.voters())?, tb),
            RuleId::RotatingDictator => {
                let order = tb.voter_sequence(sequence.voters())?;
                let d = order[t % order.len()];
                instance
                    .best_of(instance.approvals(d).iter().copied(), tb)
                    .expect("approval sets are non-empty")
            }
            RuleId::Phragmen => {
                let loads = phragmen_loads(past, &winners, sequence.voters(), tb)?;
                phragmen_choice(instance, &loads, tb)?.0
            }
            RuleId::PiPav => {
                let bounds = pi.as_ref().expect("bounds computed for pi-pav");
                pi_winner(instance, &pi_weights(past, &winners, sequence.voters()), tb, bounds)?
            }
        };
        winners.push(w);
    }
    Ok(ChoiceSequence(
        winners
            .iter()
            .enumerate()
            .map(|(t, &w)| sequence.round(t).candidate(w).to_string())
            .collect(),
    ))
}

fn satisfied(past: &[DecisionInstance], winners: &[usize], round: usize, voter: usize) -> bool {
    past[round].approves(voter, winners[round])
}

/// `1 / (sat + 1)`.
pub fn pav_weights(past: &[DecisionInstance], winners: &[usize], n: usize) -> Vec<Rational> {
    (0..n)
        .map(|v| {
            let sat = (0..past.len()).filter(|&r| satisfied(past, winners, r, v)).count();
            rational::ratio(1, sat as i64 + 1)
        })
        .collect()
}

/// `1 +` rounds lost since the last win (or since the start).
pub fn reset_weights(past: &[DecisionInstance], winners: &[usize], n: usize) -> Vec<Rational> {
    (0..n)
        .map(|v| {
            let losses = (0..past.len())
                .rev()
                .take_while(|&r| !satisfied(past, winners, r, v))
                .count();
            rational::int(losses as i64 + 1)
        })
        .collect()
}

/// `(2t+1) / 2^(sum of j! over won rounds j)`, rounds counted from 1.
pub fn exponential_weights(past: &[DecisionInstance], winners: &[usize], n: usize) -> Vec<Rational> {
    let t = past.len() as i64;
    (0..n)
        .map(|v| {
            let exp: usize = (0..past.len())
                .filter(|&r| satisfied(past, winners, r, v))
                .map(|r| (1..=r + 1).product::<usize>())
                .sum();
            Rational::new(BigInt::from(2 * t + 1), BigInt::one() << exp)
        })
        .collect()
}

/// Signed weights replayed from the definition.
pub fn consensus_weights(past: &[DecisionInstance], winners: &[usize], n: usize) -> Result<Vec<Rational>> {
    let mut alpha = alloc::vec![Rational::one(); n];
    for (r, inst) in past.iter().enumerate() {
        let plus: Vec<usize> = (0..n)
            .filter(|&v| inst.approves(v, winners[r]) && alpha[v].is_positive())
            .collect();
        if plus.is_empty() {
            return Err(Error::ConsensusNoPositiveApprover);
        }
        let share = rational::ratio(n as i64, plus.len() as i64);
        for a in alpha.iter_mut() {
            *a += Rational::one();
        }
        for v in plus {
            alpha[v] -= &share;
        }
    }
    Ok(alpha)
}

fn weighted_winner(instance: &DecisionInstance, weights: &[Rational], tb: &TieBreaker) -> usize {
    best_by(instance, tb, |c| {
        (0..weights.len())
            .filter(|&v| instance.approves(v, c))
            .map(|v| weights[v].clone())
            .sum::<Rational>()
    })
}

fn consensus_winner(instance: &DecisionInstance, weights: &[Rational], tb: &TieBreaker) -> usize {
    best_by(instance, tb, |c| {
        (0..weights.len())
            .filter(|&v| instance.approves(v, c))
            .map(|v| weights[v].clone().max(Rational::zero()))
            .sum::<Rational>()
    })
}

/// Highest key, ties to the tie-breaker's preferred candidate.
fn best_by(instance: &DecisionInstance, tb: &TieBreaker, key: impl Fn(usize) -> Rational) -> usize {
    let keys: Vec<Rational> = (0..instance.candidates().len()).map(key).collect();
    let top = keys.iter().max().expect("rounds have candidates").clone();
    instance
        .best_of((0..keys.len()).filter(|&c| keys[c] == top), tb)
        .expect("a maximum exists")
}

/// Over every non-empty subset of approvers, the least `(1 + sum)/size`,
/// carried by the smallest subset reaching it.
pub fn phragmen_optimum(loads: &[Rational], instance: &DecisionInstance, candidate: usize) -> Option<(Rational, Vec<usize>)> {
    let approvers = instance.approvers(candidate);
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for mask in 1u32..(1u32 << approvers.len()) {
        let set: Vec<usize> = (0..approvers.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| approvers[i])
            .collect();
        let sum: Rational = set.iter().map(|&v| loads[v].clone()).sum();
        let value = (sum + Rational::one()) / rational::int(set.len() as i64);
        let better = match &best {
            None => true,
            Some((bv, bs)) => value < *bv || (value == *bv && set.len() < bs.len()),
        };
        if better {
            best = Some((value, set));
        }
    }
    best
}

fn phragmen_choice(instance: &DecisionInstance, loads: &[Rational], tb: &TieBreaker) -> Result<(usize, Rational, Vec<usize>)> {
    let options: Vec<(usize, Rational, Vec<usize>)> = (0..instance.candidates().len())
        .filter_map(|c| phragmen_optimum(loads, instance, c).map(|(v, s)| (c, v, s)))
        .collect();
    let low = options.iter().map(|o| o.1.clone()).min().ok_or(Error::PhragmenNoApprovers)?;
    let winner = instance
        .best_of(options.iter().filter(|o| o.1 == low).map(|o| o.0), tb)
        .expect("non-empty");
    let (_, value, set) = options.into_iter().find(|o| o.0 == winner).expect("present");
    Ok((winner, value, set))
}

/// Loads replayed from round 1 with the brute-force optimum.
pub fn phragmen_loads(past: &[DecisionInstance], winners: &[usize], n: usize, tb: &TieBreaker) -> Result<Vec<Rational>> {
    let mut loads = alloc::vec![Rational::zero(); n];
    for (r, inst) in past.iter().enumerate() {
        let (w, value, set) = phragmen_choice(inst, &loads, tb)?;
        if w != winners[r] {
            return Err(Error::Invariant("phragmen replay diverged".to_string()));
        }
        for v in set {
            loads[v] = value.clone();
        }
    }
    Ok(loads)
}

/// `1/(sat+1)`, times π once the voter has lost a round.
pub fn pi_weights(past: &[DecisionInstance], winners: &[usize], n: usize) -> Vec<PiWeight> {
    (0..n)
        .map(|v| {
            let sat = (0..past.len()).filter(|&r| satisfied(past, winners, r, v)).count();
            let marked = sat < past.len();
            let value = rational::ratio(1, sat as i64 + 1);
            if marked {
                PiWeight::pi_multiple(value)
            } else {
                PiWeight::rational(value)
            }
        })
        .collect()
}

fn pi_winner(instance: &DecisionInstance, weights: &[PiWeight], tb: &TieBreaker, bounds: &PiBounds) -> Result<usize> {
    let mut best: Option<(usize, PiWeight)> = None;
    for c in 0..instance.candidates().len() {
        let mut s = PiWeight::default();
        for (v, w) in weights.iter().enumerate() {
            if instance.approves(v, c) {
                s += w;
            }
        }
        let better = match &best {
            None => true,
            Some((b, bs)) => match bounds.compare(&s, bs)? {
                Ordering::Greater => true,
                Ordering::Equal => tb.prefers(instance.candidate(c), instance.candidate(*b)),
                Ordering::Less => false,
            },
        };
        if better {
            best = Some((c, s));
        }
    }
    Ok(best.expect("rounds have candidates").0)
}
