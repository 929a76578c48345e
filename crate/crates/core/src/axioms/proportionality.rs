//! Simple proportionality and apportionment quotas on simple sequences.

use alloc::vec::Vec;

use crate::axioms::{AxiomVerdict, Budget, Witness};
use crate::corpus::enumerate::{compositions, partitions};
use crate::error::Result;
use crate::model::{ChoiceSequence, DecisionHistory, DecisionSequence, TieBreaker};
use crate::rules::{choices, Rule};

/// Exhaustive over every partition of every `n <= max_n`: the simple
/// `n`-round sequence must give each voter exactly its party size.
pub fn check_simple_proportionality(rule: &Rule, max_n: usize) -> Result<AxiomVerdict> {
    let tb = TieBreaker::lexicographic();
    let mut budget = Budget {
        examined: 0,
        exhaustive: true,
        closed: false,
    };
    for n in 1..=max_n {
        for sizes in partitions(n) {
            budget.examined += 1;
            let seq = DecisionSequence::simple(&sizes, n)?;
            let ch = choices(rule, &seq, &tb)?;
            let h = DecisionHistory::new(seq.clone(), ch.clone())?;
            for v in 0..n {
                let sat = h.satisfaction(v)?;
                let size = seq.party_size(v)?;
                if sat != size {
                    return Ok(AxiomVerdict::refuted(
                        Witness::SimpleProportionality {
                            party_sizes: sizes,
                            choices: ch,
                            voter: v,
                            satisfaction: sat,
                            party_size: size,
                        },
                        budget,
                    ));
                }
            }
        }
    }
    Ok(AxiomVerdict::holds(budget))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotaKind {
    Lower,
    Upper,
}

impl QuotaKind {
    pub fn as_str(self) -> &'static str {
        match self {
            QuotaKind::Lower => "lower",
            QuotaKind::Upper => "upper",
        }
    }
}

/// Per-party seat counts after every prefix of a seat sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotaReport {
    pub party_sizes: Vec<usize>,
    /// `seats[t][i]`: seats of party `i` after `t + 1` rounds.
    pub seats: Vec<Vec<usize>>,
}

impl QuotaReport {
    /// Builds the report from the winning party of each round.
    pub fn from_parties(party_sizes: &[usize], winners: &[usize]) -> Self {
        let mut running = alloc::vec![0usize; party_sizes.len()];
        let mut seats = Vec::with_capacity(winners.len());
        for &w in winners {
            running[w] += 1;
            seats.push(running.clone());
        }
        Self {
            party_sizes: party_sizes.to_vec(),
            seats,
        }
    }

    pub fn voters(&self) -> usize {
        self.party_sizes.iter().sum()
    }

    pub fn rounds(&self) -> usize {
        self.seats.len()
    }

    /// `floor(k * size / n)`.
    pub fn lower(&self, k: usize, party: usize) -> usize {
        k * self.party_sizes[party] / self.voters()
    }

    /// `ceil(k * size / n)`.
    pub fn upper(&self, k: usize, party: usize) -> usize {
        (k * self.party_sizes[party]).div_ceil(self.voters())
    }

    pub fn satisfaction(&self, k: usize, party: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.seats[k - 1][party]
        }
    }

    pub fn violates(&self, kind: QuotaKind, k: usize, party: usize) -> bool {
        if k == 0 || k > self.rounds() {
            return false;
        }
        let s = self.satisfaction(k, party);
        match kind {
            QuotaKind::Lower => s < self.lower(k, party),
            QuotaKind::Upper => s > self.upper(k, party),
        }
    }

    /// First `(prefix, party)` breaking the quota.
    pub fn first_violation(&self, kind: QuotaKind) -> Option<(usize, usize)> {
        (1..=self.rounds())
            .flat_map(|k| (0..self.party_sizes.len()).map(move |p| (k, p)))
            .find(|&(k, p)| self.violates(kind, k, p))
    }

    /// Seat totals after all rounds always add up to the number of rounds.
    pub fn totals(&self) -> Vec<usize> {
        self.seats
            .last()
            .cloned()
            .unwrap_or_else(|| alloc::vec![0; self.party_sizes.len()])
    }
}

fn party_of(choices: &ChoiceSequence, parties: usize) -> Vec<usize> {
    choices
        .winners()
        .iter()
        .map(|w| {
            (0..parties)
                .find(|&p| crate::model::party_label(p) == *w)
                .expect("simple sequences only elect parties")
        })
        .collect()
}

/// Runs `rule` on the simple `k`-round sequence and audits every prefix.
pub fn check_quota(rule: &Rule, party_sizes: &[usize], k: usize, kind: QuotaKind) -> Result<(QuotaReport, AxiomVerdict)> {
    let seq = DecisionSequence::simple(party_sizes, k)?;
    let ch = choices(rule, &seq, &TieBreaker::lexicographic())?;
    let report = QuotaReport::from_parties(party_sizes, &party_of(&ch, party_sizes.len()));
    let budget = Budget {
        examined: k as u64,
        exhaustive: true,
        closed: false,
    };
    let verdict = match report.first_violation(kind) {
        None => AxiomVerdict::holds(budget),
        Some((prefix, party)) => {
            let bound = match kind {
                QuotaKind::Lower => report.lower(prefix, party),
                QuotaKind::Upper => report.upper(prefix, party),
            };
            AxiomVerdict::refuted(
                Witness::Quota {
                    party_sizes: party_sizes.to_vec(),
                    kind,
                    prefix,
                    choices: ChoiceSequence(ch.winners()[..prefix].to_vec()),
                    party,
                    satisfaction: report.satisfaction(prefix, party),
                    bound,
                },
                budget,
            )
        }
    };
    Ok((report, verdict))
}

/// Every ordered party composition of every `n <= max_n`, `max_k` rounds.
pub fn quota_campaign(rule: &Rule, max_n: usize, max_k: usize, kind: QuotaKind) -> Result<AxiomVerdict> {
    let mut examined = 0;
    for n in 1..=max_n {
        for sizes in compositions(n) {
            let (_, v) = check_quota(rule, &sizes, max_k, kind)?;
            examined += 1;
            if v.is_refuted() {
                let mut v = v;
                v.budget.examined = examined;
                return Ok(v);
            }
        }
    }
    Ok(AxiomVerdict::holds(Budget {
        examined,
        exhaustive: true,
        closed: false,
    }))
}
