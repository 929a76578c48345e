//! Dry-spell guarantees: exhaustive search over winner coalitions, seeded
//! random campaigns, and single-sequence checks.
//!
//! # Coalition search
//!
//! For every rule handled here, a round's effect on the state depends only
//! on the set `T` of voters approving the winner. `T` can win a round only if
//! its score beats what each outsider alone contributes to some other
//! candidate, and the profile "`T` approves `a`, every outsider approves a
//! private candidate" realizes exactly that condition (with `a` winning
//! ties). Exploring all such profiles from every reachable state therefore
//! visits every state reachable under any profile and any candidate tie
//! order. States are merged on a key that fully determines the future, so a
//! search that runs out of new states proves the bound for every length.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::axioms::{AxiomVerdict, Budget, Witness};
use crate::corpus::random::{random_sequence_of, seeded};
use crate::error::Result;
use crate::model::{party_label, DecisionHistory, DecisionInstance, DecisionSequence, TieBreaker};
use crate::rational::{self, Rational};
use crate::rules::{choices, Rule, RuleState, WamKind};

/// Upper bound on stored states before a search gives up on closure.
pub const DEFAULT_STATE_LIMIT: usize = 2_000_000;

/// `T` approves `a`; each outsider approves its own later-sorting candidate.
pub fn coalition_profile(voters: usize, mask: u32) -> DecisionInstance {
    let mut names = alloc::vec![String::from("a")];
    let mut approvals = Vec::with_capacity(voters);
    for v in 0..voters {
        if mask & (1 << v) != 0 {
            approvals.push(alloc::vec![0]);
        } else {
            names.push(party_label(v + 1));
            approvals.push(alloc::vec![names.len() - 1]);
        }
    }
    DecisionInstance::from_indices(names, approvals)
}

/// The Exponential Rule as relative exponents: every weight before round `r`
/// is `(2r-1)/2^e`, so only the exponents matter. Once the per-round penalty
/// `r!` dwarfs all accumulated differences, gaps wider than `C` bits (with
/// `2^C > n-1`) decide comparisons lexicographically and are clamped to `C`.
#[derive(Debug, Clone)]
struct ExpModel {
    gap: u64,
    compress_from: u64,
}

impl ExpModel {
    fn new(voters: usize) -> Self {
        let mut gap = 1u64;
        while (1u64 << gap) <= voters.saturating_sub(1) as u64 {
            gap += 1;
        }
        let mut r = 1u64;
        loop {
            let f: u64 = (1..=r).product();
            let before: u64 = (1..r).map(|i| (1..=i).product::<u64>()).sum();
            if f - before >= gap {
                break;
            }
            r += 1;
        }
        Self { gap, compress_from: r }
    }

    fn a_wins(&self, exps: &[u64], mask: u32) -> bool {
        let top = *exps.iter().max().expect("voters");
        let val = |e: u64| 1u128 << (top - e);
        let inside: u128 = (0..exps.len()).filter(|v| mask & (1 << v) != 0).map(|v| val(exps[v])).sum();
        (0..exps.len()).filter(|v| mask & (1 << v) == 0).all(|v| inside >= val(exps[v]))
    }

    /// Applies round `round`'s penalty to the winners and normalizes.
    fn update(&self, exps: &[u64], mask: u32, round: u64) -> Vec<u64> {
        let n = exps.len() as u64;
        let penalty = if round < self.compress_from {
            (1..=round).product()
        } else {
            n * self.gap
        };
        let mut next: Vec<u64> = exps
            .iter()
            .enumerate()
            .map(|(v, &e)| if mask & (1 << v) != 0 { e + penalty } else { e })
            .collect();
        let low = *next.iter().min().expect("voters");
        for e in next.iter_mut() {
            *e -= low;
        }
        if round + 1 >= self.compress_from {
            let mut levels: Vec<u64> = next.clone();
            levels.sort_unstable();
            levels.dedup();
            let mut mapped = alloc::vec![0u64; levels.len()];
            for i in 1..levels.len() {
                mapped[i] = mapped[i - 1] + (levels[i] - levels[i - 1]).min(self.gap);
            }
            for e in next.iter_mut() {
                *e = mapped[levels.binary_search(e).expect("present")];
            }
        }
        next
    }
}

#[derive(Debug, Clone)]
enum Abstract {
    Real(RuleState),
    Exp(Vec<u64>),
}

/// Global part, then one sorted entry per voter.
type Key = (Vec<Rational>, Vec<(Vec<Rational>, u8)>);

/// Every rule but Rotating Dictator treats voters alike, so states that
/// differ by a voter permutation have permuted futures; the coalition
/// profiles are closed under permutation, so such states are merged.
fn state_key(rule: &Rule, state: &Abstract, round: usize, voters: usize, exp: Option<&ExpModel>, dry: &[u8]) -> Key {
    let per_voter = |cols: Vec<Vec<Rational>>| {
        let mut rows: Vec<(Vec<Rational>, u8)> = cols.into_iter().zip(dry.iter().copied()).collect();
        rows.sort();
        rows
    };
    match state {
        Abstract::Exp(exps) => {
            let model = exp.expect("exp model");
            let tag = if (round as u64 + 1) < model.compress_from { round as i64 } else { -1 };
            (
                alloc::vec![rational::int(tag)],
                per_voter(exps.iter().map(|&e| alloc::vec![rational::int(e as i64)]).collect()),
            )
        }
        Abstract::Real(RuleState::Stateless) => (
            alloc::vec![rational::int((round % voters) as i64)],
            dry.iter().map(|&d| (Vec::new(), d)).collect(),
        ),
        Abstract::Real(RuleState::Loads(l)) if matches!(rule, Rule::Phragmen) => {
            let low = l.iter().min().cloned().unwrap_or_default();
            (Vec::new(), per_voter(l.iter().map(|x| alloc::vec![x - &low]).collect()))
        }
        Abstract::Real(RuleState::Weights(w)) | Abstract::Real(RuleState::Loads(w)) => {
            (Vec::new(), per_voter(w.iter().map(|x| alloc::vec![x.clone()]).collect()))
        }
        Abstract::Real(RuleState::PiWeights(p)) => (
            Vec::new(),
            per_voter(
                p.iter()
                    .map(|v| alloc::vec![v.weight.rational.clone(), v.weight.pi.clone(), rational::int(v.sat as i64)])
                    .collect(),
            ),
        ),
    }
}

struct Node {
    parent: usize,
    mask: u32,
}

fn path_masks(nodes: &[Node], mut idx: usize) -> Vec<u32> {
    let mut out = Vec::new();
    while idx != usize::MAX {
        out.push(nodes[idx].mask);
        idx = nodes[idx].parent;
    }
    out.reverse();
    out
}

fn is_exponential(rule: &Rule) -> bool {
    matches!(rule, Rule::Wam(spec) if spec.kind() == WamKind::Exponential)
}

/// Searches every reachable behaviour of `rule` with `voters` voters for a
/// dry spell of length `bound`, up to `max_rounds` rounds.
pub fn exhaustive(rule: &Rule, voters: usize, bound: usize, max_rounds: usize) -> Result<AxiomVerdict> {
    exhaustive_with_limit(rule, voters, bound, max_rounds, DEFAULT_STATE_LIMIT)
}

pub fn exhaustive_with_limit(
    rule: &Rule,
    voters: usize,
    bound: usize,
    max_rounds: usize,
    state_limit: usize,
) -> Result<AxiomVerdict> {
    assert!((1..=16).contains(&voters), "coalition search supports 1..=16 voters");
    let tb = TieBreaker::lexicographic();
    let exp = if is_exponential(rule) { Some(ExpModel::new(voters)) } else { None };
    let start = match &exp {
        Some(_) => Abstract::Exp(alloc::vec![0; voters]),
        None => Abstract::Real(rule.initial_state(voters)),
    };
    let mut budget = Budget {
        examined: 0,
        exhaustive: true,
        closed: false,
    };
    if bound == 0 {
        let seq = DecisionSequence::new(voters, alloc::vec![coalition_profile(voters, 1)])?;
        return Ok(AxiomVerdict::refuted(dry_witness(rule, &seq, voters, 0)?, budget));
    }
    let masks: Vec<u32> = (1..(1u32 << voters)).collect();
    let mut nodes: Vec<Node> = Vec::new();
    let mut seen: BTreeSet<Key> = BTreeSet::new();
    let mut frontier: Vec<(usize, Abstract, Vec<u8>)> = alloc::vec![(usize::MAX, start, alloc::vec![0u8; voters])];
    let profiles: Vec<DecisionInstance> = masks.iter().map(|&m| coalition_profile(voters, m)).collect();
    for round in 0..max_rounds {
        let mut next_frontier = Vec::new();
        for (node, state, dry) in &frontier {
            for (mi, &mask) in masks.iter().enumerate() {
                budget.examined += 1;
                let next_state = match (state, &exp) {
                    (Abstract::Exp(exps), Some(model)) => {
                        if !model.a_wins(exps, mask) {
                            continue;
                        }
                        Abstract::Exp(model.update(exps, mask, round as u64 + 1))
                    }
                    (Abstract::Real(s), _) => {
                        let (w, next) = rule.step(s, round, &profiles[mi], &tb)?;
                        if w != 0 {
                            continue;
                        }
                        Abstract::Real(next)
                    }
                    _ => unreachable!("state kind fixed per search"),
                };
                let mut next_dry = dry.clone();
                let mut broke = false;
                for (v, d) in next_dry.iter_mut().enumerate() {
                    if mask & (1 << v) != 0 {
                        *d = 0;
                    } else {
                        *d += 1;
                        broke |= *d as usize >= bound;
                    }
                }
                nodes.push(Node { parent: *node, mask });
                let idx = nodes.len() - 1;
                if broke {
                    let masks = path_masks(&nodes, idx);
                    let rounds = masks.iter().map(|&m| coalition_profile(voters, m)).collect();
                    let seq = DecisionSequence::new(voters, rounds)?;
                    budget.exhaustive = false;
                    return Ok(AxiomVerdict::refuted(dry_witness(rule, &seq, voters, bound)?, budget));
                }
                let key = state_key(rule, &next_state, round + 1, voters, exp.as_ref(), &next_dry);
                if seen.insert(key) {
                    if seen.len() > state_limit {
                        budget.exhaustive = false;
                        return Ok(AxiomVerdict::holds(budget));
                    }
                    next_frontier.push((idx, next_state, next_dry));
                } else {
                    nodes.pop();
                }
            }
        }
        frontier = next_frontier;
        if frontier.is_empty() {
            budget.closed = true;
            break;
        }
    }
    Ok(AxiomVerdict::holds(budget))
}

/// Replays `sequence` with the real rule and packages the longest dry spell.
fn dry_witness(rule: &Rule, sequence: &DecisionSequence, _voters: usize, _bound: usize) -> Result<Witness> {
    let tb = TieBreaker::lexicographic();
    let replay_rule = if is_exponential(rule) {
        Rule::exponential(sequence.len() as u64 + 1)
    } else {
        rule.clone()
    };
    let ch = choices(&replay_rule, sequence, &tb)?;
    let h = DecisionHistory::new(sequence.clone(), ch.clone())?;
    let (voter, length, start) = h.longest_dry_spell();
    Ok(Witness::DrySpell {
        sequence: sequence.clone(),
        tiebreak: tb,
        choices: ch,
        voter,
        start,
        length,
    })
}

/// Checks one sequence against the bound.
pub fn check_sequence(rule: &Rule, sequence: &DecisionSequence, tb: &TieBreaker, bound: usize) -> Result<AxiomVerdict> {
    let ch = choices(rule, sequence, tb)?;
    let h = DecisionHistory::new(sequence.clone(), ch.clone())?;
    let (voter, length, start) = h.longest_dry_spell();
    let budget = Budget {
        examined: 1,
        exhaustive: false,
        closed: false,
    };
    if length >= bound {
        Ok(AxiomVerdict::refuted(
            Witness::DrySpell {
                sequence: sequence.clone(),
                tiebreak: tb.clone(),
                choices: ch,
                voter,
                start,
                length,
            },
            budget,
        ))
    } else {
        Ok(AxiomVerdict::holds(budget))
    }
}

/// Seeded random campaign parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomConfig {
    pub instances: usize,
    pub min_voters: usize,
    pub max_voters: usize,
    pub min_rounds: usize,
    pub max_rounds: usize,
    pub max_candidates: usize,
    pub seed: u64,
}

/// Runs `rule` on random sequences; refutes if some voter reaches a dry
/// spell of `bound(n)`.
pub fn random(rule: &Rule, bound: impl Fn(usize) -> usize, config: RandomConfig) -> Result<AxiomVerdict> {
    use rand::Rng;
    let mut rng = seeded(config.seed);
    let tb = TieBreaker::lexicographic();
    for i in 0..config.instances {
        let n = rng.gen_range(config.min_voters..=config.max_voters);
        let k = rng.gen_range(config.min_rounds..=config.max_rounds);
        let c = rng.gen_range(1..=config.max_candidates);
        let seq = random_sequence_of(&mut rng, n, k, c);
        let v = check_sequence(rule, &seq, &tb, bound(n))?;
        if v.is_refuted() {
            let mut v = v.with_seed(config.seed);
            v.budget.examined = i as u64 + 1;
            return Ok(v);
        }
    }
    Ok(AxiomVerdict::holds(Budget {
        examined: config.instances as u64,
        exhaustive: false,
        closed: false,
    })
    .with_seed(config.seed))
}

/// Least `h` with `2^(k!) > n` for every `k >= h`, `k >= 1`.
pub fn exponential_h(n: usize) -> usize {
    let mut h = 1usize;
    loop {
        let f: u32 = (1..=h as u32).product();
        if f >= 64 || (1u64 << f) > n as u64 {
            return h;
        }
        h += 1;
    }
}

/// Smallest dry-spell length each rule is claimed never to reach; `None`
/// for rules with unbounded dry spells.
pub fn claimed_bound(rule: crate::rules::RuleId, n: usize) -> Option<usize> {
    use crate::rules::RuleId::*;
    match rule {
        Reset => Some((2 * n).saturating_sub(2).max(1)),
        Phragmen => Some(2 * n - 1),
        RotatingDictator => Some(n),
        Consensus => Some((n * n + 3 * n) / 4 + 1),
        Exponential => Some(n + exponential_h(n) + 1),
        Av | Pav | PiPav => None,
    }
}
