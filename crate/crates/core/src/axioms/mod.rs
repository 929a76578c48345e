//! Executable axiom checkers.
//!
//! Every checker returns an [`AxiomVerdict`]: either the axiom held on the
//! searched space, or it was refuted and the verdict carries a [`Witness`]
//! that [`Witness::replay`] re-checks from scratch.

pub mod condition;
pub mod degree;
pub mod dictatorial;
pub mod dry_spell;
pub mod iud;
pub mod proportionality;

use alloc::string::String;
use alloc::vec::Vec;

use crate::apportionment::{self, ApportionmentInstance, Method};
use crate::error::Result;
use crate::model::{ChoiceSequence, DecisionHistory, DecisionInstance, DecisionSequence, TieBreaker};
use crate::rational::Rational;
use crate::rules::{choices, Rule, RuleId};

pub use proportionality::{QuotaKind, QuotaReport};

/// The axioms with a cell in the overview tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    BoundedDrySpells,
    Iud,
    SimpleProportionality,
    LowerQuota,
    UpperQuota,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::SimpleProportionality,
        Axiom::Iud,
        Axiom::BoundedDrySpells,
        Axiom::LowerQuota,
        Axiom::UpperQuota,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::BoundedDrySpells => "dryspell",
            Axiom::Iud => "iud",
            Axiom::SimpleProportionality => "simpleprop",
            Axiom::LowerQuota => "alq",
            Axiom::UpperQuota => "auq",
        }
    }
}

impl core::fmt::Display for Axiom {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Axiom {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dryspell" | "bd" => Ok(Axiom::BoundedDrySpells),
            "iud" => Ok(Axiom::Iud),
            "simpleprop" | "sp" => Ok(Axiom::SimpleProportionality),
            "alq" => Ok(Axiom::LowerQuota),
            "auq" => Ok(Axiom::UpperQuota),
            _ => Err(crate::error::Error::InvalidParameter("unknown axiom")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// No counterexample in the searched space.
    Holds,
    Refuted,
}

/// How much was searched.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    /// Sequences, states or pairs examined.
    pub examined: u64,
    /// The whole finite space was covered.
    pub exhaustive: bool,
    /// The search reached a fixed point, so the verdict holds for sequences
    /// of every length, not only the explored depth.
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub budget: Budget,
    /// Seed of a randomized campaign.
    pub seed: Option<u64>,
}

impl AxiomVerdict {
    pub fn holds(budget: Budget) -> Self {
        Self {
            status: Status::Holds,
            witness: None,
            budget,
            seed: None,
        }
    }

    pub fn refuted(witness: Witness, budget: Budget) -> Self {
        Self {
            status: Status::Refuted,
            witness: Some(witness),
            budget,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }

    pub fn holds_verdict(&self) -> bool {
        self.status == Status::Holds
    }
}

/// A counterexample.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// `voter` goes `length` consecutive rounds from `start` (0-based)
    /// without approving a winner.
    DrySpell {
        sequence: DecisionSequence,
        tiebreak: TieBreaker,
        choices: ChoiceSequence,
        voter: usize,
        start: usize,
        length: usize,
    },
    /// Inserting the uncontroversial `inserted` at `position` changed the
    /// other decisions.
    Iud {
        sequence: DecisionSequence,
        tiebreak: TieBreaker,
        position: usize,
        inserted: DecisionInstance,
        original: ChoiceSequence,
        perturbed: ChoiceSequence,
    },
    /// On the simple sequence with these party sizes, `voter`'s satisfaction
    /// differs from its party size.
    SimpleProportionality {
        party_sizes: Vec<usize>,
        choices: ChoiceSequence,
        voter: usize,
        satisfaction: usize,
        party_size: usize,
    },
    /// After `prefix` rounds of the simple sequence, the party `party`
    /// (0-based) broke its quota.
    Quota {
        party_sizes: Vec<usize>,
        kind: QuotaKind,
        prefix: usize,
        choices: ChoiceSequence,
        party: usize,
        satisfaction: usize,
        bound: usize,
    },
    /// On the simple sequence of these parties, `rule` and the apportionment
    /// `method` disagree first at `round` (or, for Frege, the weight
    /// identity fails before it).
    Apportionment {
        method: Method,
        rule: RuleId,
        party_sizes: Vec<usize>,
        house_size: usize,
        round: usize,
        rule_seats: Vec<usize>,
        method_seats: Vec<usize>,
    },
    /// `x * w_x >= (y + 1) * w_y`.
    WinCondition {
        x: usize,
        y: usize,
        lhs: Rational,
        rhs: Rational,
    },
}

impl Witness {
    /// The table axiom this witness refutes.
    pub fn axiom(&self) -> Option<Axiom> {
        match self {
            Witness::DrySpell { .. } => Some(Axiom::BoundedDrySpells),
            Witness::Iud { .. } => Some(Axiom::Iud),
            Witness::SimpleProportionality { .. } => Some(Axiom::SimpleProportionality),
            Witness::Quota { kind: QuotaKind::Lower, .. } => Some(Axiom::LowerQuota),
            Witness::Quota { kind: QuotaKind::Upper, .. } => Some(Axiom::UpperQuota),
            Witness::Apportionment { .. } | Witness::WinCondition { .. } => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Witness::DrySpell { .. } => "dry-spell",
            Witness::Iud { .. } => "iud",
            Witness::SimpleProportionality { .. } => "simple-proportionality",
            Witness::Quota { .. } => "quota",
            Witness::Apportionment { .. } => "apportionment",
            Witness::WinCondition { .. } => "win-condition",
        }
    }

    /// Re-runs `rule` on the witness and confirms the violation. Win-weight
    /// witnesses carry no rule and replay by re-checking the inequality.
    pub fn replay(&self, rule: &Rule) -> Result<bool> {
        match self {
            Witness::DrySpell {
                sequence,
                tiebreak,
                choices: expected,
                voter,
                length,
                ..
            } => {
                let got = choices(rule, sequence, tiebreak)?;
                if got != *expected {
                    return Ok(false);
                }
                let h = DecisionHistory::new(sequence.clone(), got)?;
                Ok(h.max_dry_spell(*voter)? >= *length)
            }
            Witness::Iud {
                sequence,
                tiebreak,
                position,
                inserted,
                original,
                perturbed,
            } => {
                let base = choices(rule, sequence, tiebreak)?;
                let spliced = choices(rule, &sequence.insert_round(*position, inserted.clone())?, tiebreak)?;
                let winner = inserted
                    .uncontroversial_winner()
                    .map(|c| inserted.candidate(c))
                    .unwrap_or_default();
                Ok(base == *original && spliced == *perturbed && spliced != base.inserted(*position, winner))
            }
            Witness::SimpleProportionality {
                party_sizes,
                choices: expected,
                voter,
                satisfaction,
                party_size,
            } => {
                let seq = DecisionSequence::simple(party_sizes, party_sizes.iter().sum())?;
                let got = choices(rule, &seq, &TieBreaker::lexicographic())?;
                let h = DecisionHistory::new(seq.clone(), got.clone())?;
                Ok(got == *expected
                    && h.satisfaction(*voter)? == *satisfaction
                    && seq.party_size(*voter)? == *party_size
                    && satisfaction != party_size)
            }
            Witness::Quota {
                party_sizes,
                kind,
                prefix,
                party,
                ..
            } => {
                let (report, _) = proportionality::check_quota(rule, party_sizes, *prefix, *kind)?;
                Ok(report.violates(*kind, *prefix, *party))
            }
            Witness::Apportionment {
                method,
                rule: id,
                party_sizes,
                house_size,
                ..
            } => {
                let votes: Vec<u64> = party_sizes.iter().map(|&v| v as u64).collect();
                let inst = ApportionmentInstance::from_votes(&votes, *house_size)?;
                let n = party_sizes.iter().sum();
                let verdict = match method {
                    Method::Frege => apportionment::verify_consensus_frege_identity(&inst, n)?,
                    Method::Dhondt => apportionment::verify_dhondt_equivalence(*id, &inst, n)?,
                };
                let _ = rule;
                Ok(verdict.is_refuted())
            }
            Witness::WinCondition { x, lhs, y, rhs } => {
                let _ = (x, y);
                Ok(lhs >= rhs)
            }
        }
    }

    /// The decision sequence of a sequence-based witness.
    pub fn sequence(&self) -> Option<(DecisionSequence, TieBreaker)> {
        match self {
            Witness::DrySpell { sequence, tiebreak, .. } | Witness::Iud { sequence, tiebreak, .. } => {
                Some((sequence.clone(), tiebreak.clone()))
            }
            Witness::SimpleProportionality { party_sizes, .. } => Some((
                DecisionSequence::simple(party_sizes, party_sizes.iter().sum()).ok()?,
                TieBreaker::lexicographic(),
            )),
            Witness::Quota { party_sizes, prefix, .. } => Some((
                DecisionSequence::simple(party_sizes, *prefix).ok()?,
                TieBreaker::lexicographic(),
            )),
            Witness::Apportionment { party_sizes, house_size, .. } => Some((
                DecisionSequence::simple(party_sizes, *house_size).ok()?,
                TieBreaker::lexicographic(),
            )),
            Witness::WinCondition { .. } => None,
        }
    }

    /// One-line human summary.
    pub fn describe(&self) -> String {
        use alloc::format;
        match self {
            Witness::DrySpell { voter, start, length, .. } => {
                format!("voter {voter} unsatisfied for {length} rounds from round {start}")
            }
            Witness::Iud { position, original, perturbed, inserted, .. } => format!(
                "inserting {inserted} at {position}: {original} became {perturbed}"
            ),
            Witness::SimpleProportionality { party_sizes, voter, satisfaction, party_size, .. } => format!(
                "parties {party_sizes:?}: voter {voter} has satisfaction {satisfaction}, party size {party_size}"
            ),
            Witness::Quota { party_sizes, kind, prefix, party, satisfaction, bound, .. } => format!(
                "parties {party_sizes:?}, {prefix} rounds: party {party} got {satisfaction} seats, {} quota {bound}",
                kind.as_str()
            ),
            Witness::Apportionment { method, rule, party_sizes, round, .. } => format!(
                "parties {party_sizes:?}: {rule} and {} disagree at seat {round}",
                method.as_str()
            ),
            Witness::WinCondition { x, y, .. } => format!("x*w_x >= (y+1)*w_y at x={x}, y={y}"),
        }
    }
}
