//! D'Hondt and Frege apportionment, and their correspondence with perpetual
//! rules on simple sequences.
//!
//! Party `i` is candidate [`party_label`]`(i)` of the simple sequence; both
//! methods break ties towards the lower party index, which matches the
//! lexicographic candidate order.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;

use crate::axioms::{AxiomVerdict, Budget, QuotaKind, QuotaReport, Witness};
use crate::corpus::random::seeded;
use crate::error::{Error, Result};
use crate::model::{party_label, DecisionSequence, TieBreaker};
use crate::rational::{self, Rational};
use crate::rules::{run_rule, Rule, RuleId, RuleState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dhondt,
    Frege,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Dhondt => "dhondt",
            Method::Frege => "frege",
        }
    }
}

impl core::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dhondt" | "d'hondt" => Ok(Method::Dhondt),
            "frege" => Ok(Method::Frege),
            _ => Err(Error::InvalidParameter("unknown apportionment method")),
        }
    }
}

/// Exact party shares summing to 1 and a house size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApportionmentInstance {
    shares: Vec<Rational>,
    house_size: usize,
}

impl ApportionmentInstance {
    pub fn new(shares: Vec<Rational>, house_size: usize) -> Result<Self> {
        if shares.is_empty() {
            return Err(Error::InvalidApportionment("no parties"));
        }
        if shares.iter().any(|p| !p.is_positive()) {
            return Err(Error::InvalidApportionment("shares must be positive"));
        }
        if shares.iter().sum::<Rational>() != rational::one() {
            return Err(Error::InvalidApportionment("shares must sum to 1"));
        }
        Ok(Self { shares, house_size })
    }

    /// Integer vote counts, normalized exactly.
    pub fn from_votes(votes: &[u64], house_size: usize) -> Result<Self> {
        if votes.contains(&0) {
            return Err(Error::InvalidApportionment("vote counts must be positive"));
        }
        let total: u64 = votes.iter().sum();
        let total = i64::try_from(total).map_err(|_| Error::InvalidApportionment("vote total too large"))?;
        let shares = votes
            .iter()
            .map(|&v| Rational::new(BigInt::from(v), BigInt::from(total)))
            .collect();
        Self::new(shares, house_size)
    }

    pub fn shares(&self) -> &[Rational] {
        &self.shares
    }

    pub fn house_size(&self) -> usize {
        self.house_size
    }

    pub fn parties(&self) -> usize {
        self.shares.len()
    }

    pub fn with_house_size(&self, house_size: usize) -> Self {
        Self {
            shares: self.shares.clone(),
            house_size,
        }
    }

    /// Least `n` with `n * p_i` integral for every party.
    pub fn min_voters(&self) -> usize {
        let lcm = self
            .shares
            .iter()
            .fold(BigInt::from(1), |acc, p| acc.lcm(p.denom()));
        lcm.to_usize().unwrap_or(usize::MAX)
    }

    /// Party sizes `n * p_i`.
    pub fn party_sizes(&self, voters: usize) -> Result<Vec<usize>> {
        self.shares
            .iter()
            .enumerate()
            .map(|(party, p)| {
                let size = p * rational::int(voters as i64);
                if !size.is_integer() {
                    return Err(Error::NonIntegralParty { party });
                }
                size.to_integer().to_usize().ok_or(Error::NonIntegralParty { party })
            })
            .collect()
    }
}

/// Party index of each seat, in award order.
pub type SeatSequence = Vec<usize>;

/// Lowest index among the maxima.
fn argmax(values: &[Rational]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Frege weights before each seat, plus the final weights.
pub fn frege_trace(instance: &ApportionmentInstance) -> Result<(SeatSequence, Vec<Vec<Rational>>)> {
    let mut s = instance.shares.clone();
    let mut seats = Vec::with_capacity(instance.house_size);
    let mut trace = alloc::vec![s.clone()];
    for _ in 0..instance.house_size {
        let w = argmax(&s);
        s[w] -= rational::one();
        for (si, p) in s.iter_mut().zip(&instance.shares) {
            *si += p;
        }
        check_frege_mass(&s)?;
        seats.push(w);
        trace.push(s.clone());
    }
    Ok((seats, trace))
}

/// `sum(s) == 1`.
pub fn check_frege_mass(weights: &[Rational]) -> Result<()> {
    let total: Rational = weights.iter().sum();
    if total != rational::one() {
        return Err(Error::Invariant(format!(
            "Frege weights sum to {}",
            rational::to_fraction_string(&total)
        )));
    }
    Ok(())
}

/// Each seat goes to the party with the largest accumulated weight; that
/// party pays 1 and every party then earns its share.
pub fn frege(instance: &ApportionmentInstance) -> Result<SeatSequence> {
    Ok(frege_trace(instance)?.0)
}

/// Greedy highest quotient `p_i / (s_i + 1)`.
pub fn dhondt(instance: &ApportionmentInstance) -> SeatSequence {
    let mut held = alloc::vec![0i64; instance.parties()];
    let mut seats = Vec::with_capacity(instance.house_size);
    for _ in 0..instance.house_size {
        let quotients: Vec<Rational> = instance
            .shares
            .iter()
            .zip(&held)
            .map(|(p, &s)| p / rational::int(s + 1))
            .collect();
        let w = argmax(&quotients);
        held[w] += 1;
        seats.push(w);
    }
    seats
}

pub fn apportion(method: Method, instance: &ApportionmentInstance) -> Result<SeatSequence> {
    match method {
        Method::Dhondt => Ok(dhondt(instance)),
        Method::Frege => frege(instance),
    }
}

pub fn totals(seats: &[usize], parties: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; parties];
    for &s in seats {
        out[s] += 1;
    }
    out
}

/// The simple `k`-round sequence with `n * p_i` voters in party `i`.
pub fn to_simple_sequence(instance: &ApportionmentInstance, voters: usize, k: usize) -> Result<DecisionSequence> {
    DecisionSequence::simple(&instance.party_sizes(voters)?, k)
}

fn parties_of(choices: &[String], parties: usize) -> Vec<usize> {
    choices
        .iter()
        .map(|c| (0..parties).find(|&p| party_label(p) == *c).unwrap_or(usize::MAX))
        .collect()
}

fn equivalence_budget(rounds: usize) -> Budget {
    Budget {
        examined: rounds as u64,
        exhaustive: true,
        closed: false,
    }
}

/// Runs Perpetual Consensus on the simple sequence and Frege on the shares;
/// the seat sequences must coincide and `|N(c_i)| * α_t(v) = n * s_t^i`
/// must hold exactly before every round and after the last.
pub fn verify_consensus_frege_identity(instance: &ApportionmentInstance, voters: usize) -> Result<AxiomVerdict> {
    let k = instance.house_size;
    let sizes = instance.party_sizes(voters)?;
    let seq = DecisionSequence::simple(&sizes, k)?;
    let run = run_rule(&Rule::from(RuleId::Consensus), &seq, &TieBreaker::lexicographic())?;
    let (seats, trace) = frege_trace(instance)?;
    let rule_seats = parties_of(run.choices.winners(), instance.parties());
    let n = rational::int(voters as i64);
    for t in 0..=k {
        let RuleState::Weights(alpha) = &run.states[t] else {
            return Err(Error::Invariant(String::from("consensus state must be weights")));
        };
        let mut voter = 0;
        for (party, &size) in sizes.iter().enumerate() {
            for v in voter..voter + size {
                if rational::int(size as i64) * &alpha[v] != &n * &trace[t][party] {
                    return Ok(mismatch(Method::Frege, RuleId::Consensus, &sizes, k, t, &rule_seats, &seats));
                }
            }
            voter += size;
        }
        if t < k && rule_seats[t] != seats[t] {
            return Ok(mismatch(Method::Frege, RuleId::Consensus, &sizes, k, t, &rule_seats, &seats));
        }
    }
    Ok(AxiomVerdict::holds(equivalence_budget(k)))
}

/// `rule` (Perpetual PAV or Perpetual Phragmén) on the simple sequence must
/// elect the D'Hondt seat sequence.
pub fn verify_dhondt_equivalence(rule: RuleId, instance: &ApportionmentInstance, voters: usize) -> Result<AxiomVerdict> {
    let k = instance.house_size;
    let sizes = instance.party_sizes(voters)?;
    let seq = DecisionSequence::simple(&sizes, k)?;
    let run = run_rule(&Rule::from(rule), &seq, &TieBreaker::lexicographic())?;
    let rule_seats = parties_of(run.choices.winners(), instance.parties());
    let seats = dhondt(instance);
    match (0..k).find(|&t| rule_seats[t] != seats[t]) {
        Some(t) => Ok(mismatch(Method::Dhondt, rule, &sizes, k, t, &rule_seats, &seats)),
        None => Ok(AxiomVerdict::holds(equivalence_budget(k))),
    }
}

fn mismatch(
    method: Method,
    rule: RuleId,
    sizes: &[usize],
    k: usize,
    round: usize,
    rule_seats: &[usize],
    seats: &[usize],
) -> AxiomVerdict {
    AxiomVerdict::refuted(
        Witness::Apportionment {
            method,
            rule,
            party_sizes: sizes.to_vec(),
            house_size: k,
            round,
            rule_seats: rule_seats.to_vec(),
            method_seats: seats.to_vec(),
        },
        equivalence_budget(k),
    )
}

/// Lower and upper quota at every prefix house size.
pub fn quota_audit(seats: &[usize], instance: &ApportionmentInstance) -> QuotaReport {
    let sizes = instance
        .party_sizes(instance.min_voters())
        .expect("min_voters makes every party integral");
    QuotaReport::from_parties(&sizes, seats)
}

/// A quota breach by an apportionment method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotaViolation {
    pub method: Method,
    pub kind: QuotaKind,
    /// Integer votes, in lowest terms.
    pub votes: Vec<usize>,
    /// House size at which the breach occurs.
    pub prefix: usize,
    pub party: usize,
    pub seats: usize,
    pub bound: usize,
}

/// Audits the first `house_size` seats of `method` for a `kind` breach.
pub fn find_quota_violation(method: Method, instance: &ApportionmentInstance, kind: QuotaKind) -> Result<Option<QuotaViolation>> {
    let seats = apportion(method, instance)?;
    let report = quota_audit(&seats, instance);
    Ok(report.first_violation(kind).map(|(prefix, party)| QuotaViolation {
        method,
        kind,
        votes: report.party_sizes.clone(),
        prefix,
        party,
        seats: report.satisfaction(prefix, party),
        bound: match kind {
            QuotaKind::Lower => report.lower(prefix, party),
            QuotaKind::Upper => report.upper(prefix, party),
        },
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub instances: usize,
    pub max_parties: usize,
    pub max_votes: u64,
    pub max_seats: usize,
    pub seed: u64,
}

/// Seeded random search for a quota breach; returns the breach with the
/// fewest total votes, then smallest house, among those found.
pub fn search_quota_violation(method: Method, kind: QuotaKind, config: SearchConfig) -> Result<Option<QuotaViolation>> {
    let mut rng = seeded(config.seed);
    let mut best: Option<QuotaViolation> = None;
    for _ in 0..config.instances {
        let m = rng.gen_range(2..=config.max_parties.max(2));
        let votes: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=config.max_votes)).collect();
        let k = rng.gen_range(1..=config.max_seats);
        let inst = ApportionmentInstance::from_votes(&votes, k)?;
        if let Some(v) = find_quota_violation(method, &inst, kind)? {
            let key = |v: &QuotaViolation| (v.votes.iter().sum::<usize>(), v.prefix);
            if best.as_ref().map_or(true, |b| key(&v) < key(b)) {
                best = Some(v);
            }
        }
    }
    Ok(best)
}

/// Smallest integer vote vector proportional to the shares.
pub fn votes_in_lowest_terms(instance: &ApportionmentInstance) -> Vec<usize> {
    instance
        .party_sizes(instance.min_voters())
        .expect("min_voters makes every party integral")
}

impl QuotaViolation {
    /// Recomputes the breach from the votes.
    pub fn replay(&self) -> Result<bool> {
        let votes: Vec<u64> = self.votes.iter().map(|&v| v as u64).collect();
        let inst = ApportionmentInstance::from_votes(&votes, self.prefix)?;
        let seats = apportion(self.method, &inst)?;
        let report = quota_audit(&seats, &inst);
        Ok(report.violates(self.kind, self.prefix, self.party)
            && report.satisfaction(self.prefix, self.party) == self.seats)
    }
}

/// `true` when the seat sequences of `k` and `k + 1` seats share a prefix.
pub fn is_house_monotone(method: Method, instance: &ApportionmentInstance) -> Result<bool> {
    let small = apportion(method, instance)?;
    let large = apportion(method, &instance.with_house_size(instance.house_size + 1))?;
    Ok(large.starts_with(&small))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::vec;

    fn thirds() -> ApportionmentInstance {
        ApportionmentInstance::new(vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)], 6).unwrap()
    }

    #[test]
    fn frege_hand_trace() {
        assert_eq!(frege(&thirds()).unwrap(), [0, 1, 0, 2, 1, 0]);
        assert_eq!(totals(&frege(&thirds()).unwrap(), 3), [3, 2, 1]);
    }

    #[test]
    fn frege_symmetric_tie() {
        let inst = ApportionmentInstance::new(vec![ratio(1, 2), ratio(1, 2)], 2).unwrap();
        assert_eq!(frege(&inst).unwrap(), [0, 1]);
    }

    #[test]
    fn single_party_takes_everything() {
        let inst = ApportionmentInstance::from_votes(&[7], 4).unwrap();
        assert_eq!(frege(&inst).unwrap(), [0; 4]);
        assert_eq!(dhondt(&inst), [0; 4]);
        let report = quota_audit(&dhondt(&inst), &inst);
        assert_eq!(report.first_violation(QuotaKind::Lower), None);
        assert_eq!(report.first_violation(QuotaKind::Upper), None);
    }

    #[test]
    fn dhondt_quotient_tables() {
        let a = ApportionmentInstance::from_votes(&[4, 3, 1], 5).unwrap();
        assert_eq!(totals(&dhondt(&a), 3), [3, 2, 0]);
        let b = ApportionmentInstance::from_votes(&[2, 3], 10).unwrap();
        assert_eq!(totals(&dhondt(&b), 2), [4, 6]);
    }

    #[test]
    fn simple_sequence_bridge() {
        let seq = to_simple_sequence(&thirds(), 6, 2).unwrap();
        assert_eq!(seq, DecisionSequence::simple(&[3, 2, 1], 2).unwrap());
        let halves = ApportionmentInstance::new(vec![ratio(1, 2), ratio(1, 2)], 1).unwrap();
        assert_eq!(to_simple_sequence(&halves, 3, 1), Err(Error::NonIntegralParty { party: 0 }));
        let twothirds = ApportionmentInstance::new(vec![ratio(2, 3), ratio(1, 3)], 3).unwrap();
        let expected = crate::model::DecisionInstance::singletons(&["a", "a", "b"]).unwrap();
        assert_eq!(
            to_simple_sequence(&twothirds, 3, 3).unwrap(),
            DecisionSequence::repeated(expected, 3).unwrap()
        );
    }

    #[test]
    fn consensus_matches_frege() {
        let inst = thirds().with_house_size(12);
        assert!(verify_consensus_frege_identity(&inst, 6).unwrap().holds_verdict());
        assert!(verify_consensus_frege_identity(&inst, 12).unwrap().holds_verdict());
    }

    #[test]
    fn pav_and_phragmen_match_dhondt() {
        let a = ApportionmentInstance::from_votes(&[2, 3], 10).unwrap();
        assert!(verify_dhondt_equivalence(RuleId::Pav, &a, 5).unwrap().holds_verdict());
        let b = ApportionmentInstance::from_votes(&[4, 3, 1], 5).unwrap();
        assert!(verify_dhondt_equivalence(RuleId::Phragmen, &b, 8).unwrap().holds_verdict());
    }

    #[test]
    fn reset_does_not_match_dhondt() {
        let a = ApportionmentInstance::from_votes(&[3, 1, 1, 1], 6).unwrap();
        let v = verify_dhondt_equivalence(RuleId::Reset, &a, 6).unwrap();
        assert!(v.is_refuted());
    }

    #[test]
    fn rejects_bad_shares() {
        assert!(ApportionmentInstance::new(vec![ratio(1, 2)], 1).is_err());
        assert!(ApportionmentInstance::new(vec![ratio(3, 2), ratio(-1, 2)], 1).is_err());
        assert!(ApportionmentInstance::from_votes(&[1, 0], 1).is_err());
    }

    #[test]
    fn house_monotone() {
        for k in 0..12 {
            let inst = ApportionmentInstance::from_votes(&[5, 3, 2], k).unwrap();
            assert!(is_house_monotone(Method::Dhondt, &inst).unwrap());
            assert!(is_house_monotone(Method::Frege, &inst).unwrap());
        }
    }
}
