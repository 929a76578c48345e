//! Perpetual voting rules, stepped round by round.

pub mod consensus;
pub mod dictator;
pub mod exponential;
pub mod phragmen;
pub mod pi_pav;
pub mod wam;

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use pi_pav::{PiBounds, PiVoter, PiWeight};
pub use wam::{score, BasicWamSpec, MonotonicityCheck, UpdateFn, WamKind};

use crate::error::{Error, Result};
use crate::model::{ChoiceSequence, DecisionInstance, DecisionSequence, TieBreaker};
use crate::rational::Rational;

/// The named rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Av,
    Pav,
    Reset,
    Exponential,
    Consensus,
    RotatingDictator,
    Phragmen,
    PiPav,
}

impl RuleId {
    /// The seven rules of the comparison table, in table order.
    pub const TABLE: [RuleId; 7] = [
        RuleId::Av,
        RuleId::Pav,
        RuleId::Reset,
        RuleId::Exponential,
        RuleId::Consensus,
        RuleId::RotatingDictator,
        RuleId::Phragmen,
    ];

    pub const ALL: [RuleId; 8] = [
        RuleId::Av,
        RuleId::Pav,
        RuleId::Reset,
        RuleId::Exponential,
        RuleId::Consensus,
        RuleId::RotatingDictator,
        RuleId::Phragmen,
        RuleId::PiPav,
    ];

    /// Command-line identifier.
    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Av => "av",
            RuleId::Pav => "pav",
            RuleId::Reset => "reset",
            RuleId::Exponential => "exponential",
            RuleId::Consensus => "consensus",
            RuleId::RotatingDictator => "dictator",
            RuleId::Phragmen => "phragmen",
            RuleId::PiPav => "pi-pav",
        }
    }

    /// Row label for report tables.
    pub fn display_name(self) -> &'static str {
        match self {
            RuleId::Av => "AV",
            RuleId::Pav => "Per. PAV",
            RuleId::Reset => "Per. Reset",
            RuleId::Exponential => "Exponential Rule",
            RuleId::Consensus => "Per. Consensus",
            RuleId::RotatingDictator => "Rotating Dict.",
            RuleId::Phragmen => "Per. Phragmén",
            RuleId::PiPav => "π-marked PAV",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "av" => Ok(RuleId::Av),
            "pav" => Ok(RuleId::Pav),
            "reset" => Ok(RuleId::Reset),
            "exponential" | "exp" => Ok(RuleId::Exponential),
            "consensus" => Ok(RuleId::Consensus),
            "dictator" | "rotating-dictator" | "rotdict" => Ok(RuleId::RotatingDictator),
            "phragmen" | "phragmén" => Ok(RuleId::Phragmen),
            "pi-pav" | "pipav" => Ok(RuleId::PiPav),
            other => Err(alloc::format!("unknown rule `{other}`")),
        }
    }
}

/// A runnable rule. Cheap to clone.
#[derive(Debug, Clone)]
pub enum Rule {
    Wam(BasicWamSpec),
    Consensus,
    RotatingDictator,
    Phragmen,
    PiPav(Arc<PiBounds>),
}

impl From<RuleId> for Rule {
    fn from(id: RuleId) -> Self {
        match id {
            RuleId::Av => Rule::Wam(BasicWamSpec::av()),
            RuleId::Pav => Rule::Wam(BasicWamSpec::pav()),
            RuleId::Reset => Rule::Wam(BasicWamSpec::reset()),
            RuleId::Exponential => Rule::Wam(BasicWamSpec::exponential(exponential::DEFAULT_MAX_ROUND)),
            RuleId::Consensus => Rule::Consensus,
            RuleId::RotatingDictator => Rule::RotatingDictator,
            RuleId::Phragmen => Rule::Phragmen,
            RuleId::PiPav => Rule::PiPav(Arc::new(PiBounds::compute())),
        }
    }
}

/// Per-round rule state. Weights may be negative only for Consensus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RuleState {
    Weights(Vec<Rational>),
    Loads(Vec<Rational>),
    PiWeights(Vec<PiVoter>),
    /// Rotating Dictator keeps no state beyond the round number.
    Stateless,
}

impl RuleState {
    /// Per-voter numbers as `num/den` strings; π-weights render as
    /// `a+bπ`.
    pub fn render(&self) -> Vec<String> {
        use crate::rational::to_fraction_string as s;
        match self {
            RuleState::Weights(w) | RuleState::Loads(w) => w.iter().map(s).collect(),
            RuleState::PiWeights(p) => p
                .iter()
                .map(|v| {
                    if v.weight.is_rational() {
                        s(&v.weight.rational)
                    } else {
                        s(&v.weight.pi) + "π"
                    }
                })
                .collect(),
            RuleState::Stateless => Vec::new(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RuleState::Weights(_) => "weights",
            RuleState::Loads(_) => "loads",
            RuleState::PiWeights(_) => "weights",
            RuleState::Stateless => "none",
        }
    }

    pub fn as_rationals(&self) -> Option<&[Rational]> {
        match self {
            RuleState::Weights(w) | RuleState::Loads(w) => Some(w),
            _ => None,
        }
    }
}

impl Rule {
    pub fn exponential(max_round: u64) -> Self {
        Rule::Wam(BasicWamSpec::exponential(max_round))
    }

    pub fn id(&self) -> Option<RuleId> {
        match self {
            Rule::Wam(spec) => match spec.kind() {
                WamKind::Av => Some(RuleId::Av),
                WamKind::Pav => Some(RuleId::Pav),
                WamKind::Reset => Some(RuleId::Reset),
                WamKind::Exponential => Some(RuleId::Exponential),
                WamKind::Custom => None,
            },
            Rule::Consensus => Some(RuleId::Consensus),
            Rule::RotatingDictator => Some(RuleId::RotatingDictator),
            Rule::Phragmen => Some(RuleId::Phragmen),
            Rule::PiPav(_) => Some(RuleId::PiPav),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Rule::Wam(spec) => spec.name().to_string(),
            other => other.id().map(RuleId::as_str).unwrap_or("custom").to_string(),
        }
    }

    pub fn initial_state(&self, voters: usize) -> RuleState {
        match self {
            Rule::Wam(_) | Rule::Consensus => RuleState::Weights(wam::ones(voters)),
            Rule::Phragmen => RuleState::Loads(phragmen::zeros(voters)),
            Rule::PiPav(_) => RuleState::PiWeights(pi_pav::initial(voters)),
            Rule::RotatingDictator => RuleState::Stateless,
        }
    }

    /// Decides round `round` (0-based) from `state`, returning the winner's
    /// candidate index and the state for the next round. Conservation
    /// invariants are asserted on every call.
    pub fn step(
        &self,
        state: &RuleState,
        round: usize,
        instance: &DecisionInstance,
        tb: &TieBreaker,
    ) -> Result<(usize, RuleState)> {
        let mismatch = || Error::Invariant("rule state does not match the rule".to_string());
        if let Some(w) = state.as_rationals() {
            if w.len() != instance.voters() {
                return Err(Error::ArityMismatch {
                    round,
                    expected: w.len(),
                    found: instance.voters(),
                });
            }
        }
        match (self, state) {
            (Rule::Wam(spec), RuleState::Weights(w)) => {
                let (winner, next) = spec.step(w, instance, tb)?;
                if spec.kind() == WamKind::Exponential {
                    exponential::check_round_encoding(&next, round as u64 + 2)?;
                }
                Ok((winner, RuleState::Weights(next)))
            }
            (Rule::Consensus, RuleState::Weights(w)) => {
                let (winner, next) = consensus::step(w, instance, tb)?;
                Ok((winner, RuleState::Weights(next)))
            }
            (Rule::Phragmen, RuleState::Loads(l)) => {
                let ranks = tb.voter_ranks(instance.voters())?;
                let (winner, next) = phragmen::step(l, instance, tb, &ranks)?;
                phragmen::check_invariants(&next, round + 1)?;
                Ok((winner, RuleState::Loads(next)))
            }
            (Rule::PiPav(bounds), RuleState::PiWeights(p)) => {
                let (winner, next) = pi_pav::step(p, instance, tb, bounds)?;
                Ok((winner, RuleState::PiWeights(next)))
            }
            (Rule::RotatingDictator, RuleState::Stateless) => {
                Ok((dictator::step(round, instance, tb)?, RuleState::Stateless))
            }
            _ => Err(mismatch()),
        }
    }
}

/// Result of running a rule over a whole sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub choices: ChoiceSequence,
    /// Winner candidate index per round.
    pub winners: Vec<usize>,
    /// `states[i]` is the state before round `i`; the last entry is the state
    /// after the final round.
    pub states: Vec<RuleState>,
}

impl RunOutcome {
    pub fn winner_names(&self) -> &[String] {
        self.choices.winners()
    }
}

/// Runs `rule` over `sequence`, recording the full state trace.
pub fn run_rule(rule: &Rule, sequence: &DecisionSequence, tb: &TieBreaker) -> Result<RunOutcome> {
    let mut state = rule.initial_state(sequence.voters());
    let mut states = Vec::with_capacity(sequence.len() + 1);
    let mut winners = Vec::with_capacity(sequence.len());
    let mut names = Vec::with_capacity(sequence.len());
    for (round, instance) in sequence.rounds().iter().enumerate() {
        let (winner, next) = rule.step(&state, round, instance, tb)?;
        states.push(core::mem::replace(&mut state, next));
        winners.push(winner);
        names.push(instance.candidate(winner).to_string());
    }
    states.push(state);
    Ok(RunOutcome {
        choices: ChoiceSequence(names),
        winners,
        states,
    })
}

/// Just the winners.
pub fn choices(rule: &Rule, sequence: &DecisionSequence, tb: &TieBreaker) -> Result<ChoiceSequence> {
    let mut state = rule.initial_state(sequence.voters());
    let mut names = Vec::with_capacity(sequence.len());
    for (round, instance) in sequence.rounds().iter().enumerate() {
        let (winner, next) = rule.step(&state, round, instance, tb)?;
        state = next;
        names.push(instance.candidate(winner).to_string());
    }
    Ok(ChoiceSequence(names))
}
