//! Perpetual proportionality degree: how satisfied large cohesive groups are
//! on average.
//!
//! A group is cohesive when its members cast identical ballots in every
//! round. It is `ℓ`-large when `|N'| >= ℓ * n / k`.

use alloc::vec::Vec;

use rand::Rng;

use crate::corpus::enumerate::instance_from_masks;
use crate::corpus::random::seeded;
use crate::error::{Error, Result};
use crate::model::{DecisionHistory, DecisionSequence, TieBreaker};
use crate::rational::{self, Rational};
use crate::rules::{choices, Rule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSample {
    pub sequence: DecisionSequence,
    pub group: Vec<usize>,
    pub ell: Rational,
    pub average_satisfaction: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeEstimate {
    /// Least group average seen, with the group that produced it.
    pub minimum: Option<DegreeSample>,
    pub instances: u64,
    pub groups: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeConfig {
    pub instances: usize,
    pub max_voters: usize,
    pub max_rounds: usize,
    pub max_candidates: usize,
    pub seed: u64,
}

/// Classes of voters with identical ballots in every round.
pub fn cohesive_groups(sequence: &DecisionSequence) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    'voter: for v in 0..sequence.voters() {
        for g in groups.iter_mut() {
            let u = g[0];
            if sequence.rounds().iter().all(|r| r.approvals(u) == r.approvals(v)) {
                g.push(v);
                continue 'voter;
            }
        }
        groups.push(alloc::vec![v]);
    }
    groups
}

/// Whether `size` voters form an `ℓ`-large group.
pub fn is_large(size: usize, ell: &Rational, voters: usize, rounds: usize) -> bool {
    rational::int((size * rounds) as i64) >= ell * rational::int(voters as i64)
}

/// Least average satisfaction over the `ℓ`-large cohesive groups of one run.
pub fn group_minimum(rule: &Rule, sequence: &DecisionSequence, ell: &Rational) -> Result<Option<DegreeSample>> {
    let ch = choices(rule, sequence, &TieBreaker::lexicographic())?;
    let h = DecisionHistory::new(sequence.clone(), ch)?;
    let mut best: Option<DegreeSample> = None;
    for g in cohesive_groups(sequence) {
        if !is_large(g.len(), ell, sequence.voters(), sequence.len()) {
            continue;
        }
        let total: usize = g.iter().map(|&v| h.satisfaction(v).unwrap_or(0)).sum();
        let avg = rational::ratio(total as i64, g.len() as i64);
        if best.as_ref().map_or(true, |b| avg < b.average_satisfaction) {
            best = Some(DegreeSample {
                sequence: sequence.clone(),
                group: g,
                ell: ell.clone(),
                average_satisfaction: avg,
            });
        }
    }
    Ok(best)
}

/// Random sequences with a planted cohesive group of `ceil(ℓ n / k)` voters.
pub fn estimate_proportionality_degree(rule: &Rule, ell: &Rational, config: DegreeConfig) -> Result<DegreeEstimate> {
    if *ell <= Rational::from_integer(0.into()) {
        return Err(Error::InvalidParameter("ℓ must be positive"));
    }
    let min_rounds = rational::ceil_to_u64(ell).unwrap_or(u64::MAX) as usize;
    if min_rounds > config.max_rounds {
        return Err(Error::InvalidParameter("ℓ exceeds the largest round count"));
    }
    let mut rng = seeded(config.seed);
    let mut out = DegreeEstimate {
        minimum: None,
        instances: 0,
        groups: 0,
        seed: config.seed,
    };
    for _ in 0..config.instances {
        let n = rng.gen_range(1..=config.max_voters);
        let k = rng.gen_range(min_rounds.max(1)..=config.max_rounds);
        let c = rng.gen_range(1..=config.max_candidates);
        let size = rational::ceil_to_u64(&(ell * rational::int(n as i64) / rational::int(k as i64))).unwrap_or(0) as usize;
        let size = size.clamp(1, n);
        let options = (1u32 << c) - 1;
        let rounds = (0..k)
            .map(|_| {
                let shared = rng.gen_range(1..=options);
                let rows: Vec<u32> = (0..n)
                    .map(|v| if v < size { shared } else { rng.gen_range(1..=options) })
                    .collect();
                instance_from_masks(&rows, c)
            })
            .collect();
        let seq = DecisionSequence::new(n, rounds)?;
        out.instances += 1;
        if let Some(sample) = group_minimum(rule, &seq, ell)? {
            out.groups += 1;
            if out
                .minimum
                .as_ref()
                .map_or(true, |m| sample.average_satisfaction < m.average_satisfaction)
            {
                out.minimum = Some(sample);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::RuleId;

    #[test]
    fn unanimous_group_gets_everything() {
        let seq = DecisionSequence::simple(&[4], 3).unwrap();
        for id in RuleId::TABLE {
            let s = group_minimum(&Rule::from(id), &seq, &rational::int(3)).unwrap().unwrap();
            assert_eq!(s.average_satisfaction, rational::int(3));
        }
    }

    #[test]
    fn groups_by_identical_ballots() {
        let seq = DecisionSequence::simple(&[2, 1, 2], 2).unwrap();
        assert_eq!(cohesive_groups(&seq), [[0, 1].to_vec(), [2].to_vec(), [3, 4].to_vec()]);
    }
}
