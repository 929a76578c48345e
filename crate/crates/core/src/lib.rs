//! Exact-arithmetic engine for perpetual voting.
//!
//! A perpetual voting instance is a stream of approval-based elections decided
//! one after another, where each decision may depend on the history of earlier
//! profiles and winners. This crate models decision sequences and histories,
//! implements the weighted-approval family of perpetual rules together with
//! Perpetual Consensus, Perpetual Phragmén and Rotating Dictator, and ships
//! executable checkers for the fairness axioms these rules are judged by
//! (bounded dry spells, independence of uncontroversial decisions, simple
//! proportionality, apportionment lower/upper quota, proportionality degree).
//!
//! All weights, loads and scores are exact rationals; nothing in the engine
//! rounds.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, report
//! rendering and the command line live in the companion `perpetual-cli` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod apportionment;
pub mod axioms;
pub mod corpus;
mod error;
pub mod model;
pub mod rational;
pub mod rules;
pub mod tables;

pub use error::{Error, Result};
pub use model::{
    party_label, ChoiceSequence, DecisionHistory, DecisionInstance, DecisionSequence, TieBreaker,
};
pub use rational::Rational;
pub use rules::{run_rule, RuleId, RunOutcome};
