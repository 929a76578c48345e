//! The library of reference constructions and counterexamples.
//!
//! Every entry names a rule, a decision sequence with its tie order, and the
//! expected outcome. [`CorpusEntry::verify`] replays the rule and, where the
//! rule has one, the from-scratch reference implementation.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::constructions::{
    av_dryspell, dictator_unboundedness, one_sided_dryspell, pav_dryspell, phragmen_dryspell, reset_dryspell,
};
use super::reference::{self, MAX_ROUNDS, MAX_VOTERS};
use crate::axioms::dictatorial::detect_dictatorial_rounds;
use crate::axioms::{Axiom, QuotaKind, Witness};
use crate::error::Result;
use crate::model::{ChoiceSequence, DecisionHistory, DecisionInstance, DecisionSequence, TieBreaker};
use crate::rational::ratio;
use crate::rules::{choices, BasicWamSpec, Rule, RuleId};

#[derive(Debug, Clone, PartialEq)]
pub enum Expected {
    Choices(ChoiceSequence),
    /// The longest dry spell of `voter` is exactly `length`.
    DrySpell { voter: usize, length: usize },
    /// Some voter goes at least this many rounds unserved.
    DrySpellAtLeast(usize),
    /// The witness replays against the entry's rule.
    Violation(Witness),
    /// At least this many consecutive dictatorial rounds.
    DictatorialRun(usize),
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    /// The property the entry demonstrates.
    pub claim: String,
    pub rule: Rule,
    pub sequence: DecisionSequence,
    pub tiebreak: TieBreaker,
    pub expected: Expected,
    /// Member of a family whose dry spell grows without bound.
    pub unbounded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    pub id: String,
    pub ok: bool,
    pub detail: String,
}

impl CorpusEntry {
    fn new(id: impl Into<String>, claim: impl Into<String>, rule: Rule, sequence: DecisionSequence, tiebreak: TieBreaker, expected: Expected) -> Self {
        Self {
            id: id.into(),
            claim: claim.into(),
            rule,
            sequence,
            tiebreak,
            expected,
            unbounded: false,
        }
    }

    fn violation(id: &str, claim: &str, rule: Rule, witness: Witness) -> Self {
        let (sequence, tiebreak) = witness.sequence().unwrap_or_else(|| {
            (DecisionSequence::new(0, Vec::new()).expect("empty sequence"), TieBreaker::lexicographic())
        });
        Self::new(id, claim, rule, sequence, tiebreak, Expected::Violation(witness))
    }

    /// The axiom this entry refutes, if any. Dry-spell families refute
    /// bounded dry spells through their growth in the parameter.
    pub fn refutes(&self) -> Option<Axiom> {
        match &self.expected {
            Expected::Violation(w) => w.axiom(),
            Expected::DrySpellAtLeast(_) => Some(Axiom::BoundedDrySpells),
            _ => self.unbounded.then_some(Axiom::BoundedDrySpells),
        }
    }

    fn unbounded(mut self) -> Self {
        self.unbounded = true;
        self
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.expected {
            Expected::Violation(w) => Some(w),
            _ => None,
        }
    }

    /// Replays the entry.
    pub fn verify(&self) -> Result<EntryReport> {
        let got = choices(&self.rule, &self.sequence, &self.tiebreak)?;
        let mut problems: Vec<String> = Vec::new();
        if let Some(id) = self.rule.id() {
            if self.sequence.voters() <= MAX_VOTERS && self.sequence.len() <= MAX_ROUNDS {
                let naive = reference::naive_choices(id, &self.sequence, &self.tiebreak)?;
                if naive != got {
                    problems.push(format!("reference gives {naive}, engine {got}"));
                }
            }
        }
        let history = DecisionHistory::new(self.sequence.clone(), got.clone())?;
        match &self.expected {
            Expected::Choices(c) => {
                if *c != got {
                    problems.push(format!("expected {c}, got {got}"));
                }
            }
            Expected::DrySpell { voter, length } => {
                let d = history.max_dry_spell(*voter)?;
                if d != *length {
                    problems.push(format!("voter {voter}: dry spell {d}, expected {length}"));
                }
            }
            Expected::DrySpellAtLeast(length) => {
                let (_, d, _) = history.longest_dry_spell();
                if d < *length {
                    problems.push(format!("longest dry spell {d} < {length}"));
                }
            }
            Expected::Violation(w) => {
                if !w.replay(&self.rule)? {
                    problems.push(format!("witness does not replay: {}", w.describe()));
                }
            }
            Expected::DictatorialRun(d) => {
                let report = detect_dictatorial_rounds(&history);
                if report.longest_run < *d {
                    problems.push(format!("{} consecutive dictatorial rounds, expected {d}", report.longest_run));
                }
            }
        }
        Ok(EntryReport {
            id: self.id.clone(),
            ok: problems.is_empty(),
            detail: if problems.is_empty() {
                got.to_string()
            } else {
                problems.join("; ")
            },
        })
    }
}

fn ch(names: &[&str]) -> ChoiceSequence {
    ChoiceSequence::from_names(names)
}

fn simple(sizes: &[usize], k: usize) -> Result<DecisionSequence> {
    DecisionSequence::simple(sizes, k)
}

fn quota(party_sizes: &[usize], kind: QuotaKind, choices: &[&str], party: usize, satisfaction: usize, bound: usize) -> Witness {
    Witness::Quota {
        party_sizes: party_sizes.to_vec(),
        kind,
        prefix: choices.len(),
        choices: ch(choices),
        party,
        satisfaction,
        bound,
    }
}

fn iud(sequence: DecisionSequence, position: usize, inserted: DecisionInstance, original: &[&str], perturbed: &[&str]) -> Witness {
    Witness::Iud {
        sequence,
        tiebreak: TieBreaker::lexicographic(),
        position,
        inserted,
        original: ch(original),
        perturbed: ch(perturbed),
    }
}

fn sp(party_sizes: &[usize], choices: &[&str], voter: usize, satisfaction: usize, party_size: usize) -> Witness {
    Witness::SimpleProportionality {
        party_sizes: party_sizes.to_vec(),
        choices: ch(choices),
        voter,
        satisfaction,
        party_size,
    }
}

/// Win-based and loss-based rules used as class representatives.
pub fn one_sided_representatives() -> Vec<(&'static str, Rule)> {
    alloc::vec![
        ("av", Rule::from(RuleId::Av)),
        ("pav", Rule::from(RuleId::Pav)),
        ("harmonic-3/4", Rule::Wam(BasicWamSpec::harmonic(ratio(3, 4)))),
        ("geometric-9/10", Rule::Wam(BasicWamSpec::geometric(ratio(9, 10)))),
        ("loss-increment", Rule::Wam(BasicWamSpec::loss_increment())),
        ("loss-doubling", Rule::Wam(BasicWamSpec::loss_doubling())),
    ]
}

/// Length of the unbounded-dry-spell demonstrations.
pub const ONE_SIDED_LENGTH: usize = 6;

fn phragmen_probe(third: &[&[&str]]) -> Result<DecisionSequence> {
    let opening = DecisionInstance::from_sets(&[&["a"], &["a"], &["a"], &["b"], &["b"], &["b"], &["c"]])?;
    DecisionSequence::new(
        7,
        alloc::vec![opening.clone(), opening, DecisionInstance::from_sets(third)?],
    )
}

/// Every entry, in a fixed order.
pub fn entries() -> Result<Vec<CorpusEntry>> {
    use QuotaKind::{Lower, Upper};
    let av = || Rule::from(RuleId::Av);
    let pav = || Rule::from(RuleId::Pav);
    let reset = || Rule::from(RuleId::Reset);
    let exp = || Rule::from(RuleId::Exponential);
    let cons = || Rule::from(RuleId::Consensus);
    let dict = || Rule::from(RuleId::RotatingDictator);
    let phr = || Rule::from(RuleId::Phragmen);
    let lex = TieBreaker::lexicographic;
    let single = DecisionInstance::singletons;

    let mut out = alloc::vec![
        CorpusEntry::new("av-golden", "approval voting serves only the majority", av(), simple(&[2, 1], 3)?, lex(), Expected::Choices(ch(&["a", "a", "a"]))),
        CorpusEntry::violation("av-simple-proportionality", "AV fails simple proportionality", av(), sp(&[1, 1], &["a", "a"], 1, 0, 1)),
        CorpusEntry::violation("av-lower-quota", "AV fails lower quota", av(), quota(&[1, 1], Lower, &["a", "a"], 1, 0, 1)),
        CorpusEntry::violation("av-upper-quota", "AV fails upper quota", av(), quota(&[1, 1], Upper, &["a", "a"], 0, 2, 1)),
        CorpusEntry::new("pav-golden", "Perpetual PAV on a 3:1 split", pav(), simple(&[3, 1], 4)?, lex(), Expected::Choices(ch(&["a", "a", "a", "b"]))),
        CorpusEntry::violation(
            "pav-iud",
            "Perpetual PAV fails independence of uncontroversial decisions",
            pav(),
            iud(simple(&[3, 1], 4)?, 0, single(&["c"; 4])?, &["a", "a", "a", "b"], &["c", "a", "a", "a", "a"]),
        ),
        CorpusEntry::violation("pav-upper-quota", "Perpetual PAV fails upper quota", pav(), quota(&[2, 1, 1], Upper, &["a", "a"], 0, 2, 1)),
        CorpusEntry::new("reset-golden", "Perpetual Reset over-serves the large party", reset(), simple(&[3, 1, 1, 1], 6)?, lex(), Expected::Choices(ch(&["a", "a", "a", "b", "a", "c"]))),
        CorpusEntry::violation(
            "reset-simple-proportionality",
            "Perpetual Reset fails simple proportionality",
            reset(),
            sp(&[3, 1, 1, 1], &["a", "a", "a", "b", "a", "c"], 0, 4, 3),
        ),
        CorpusEntry::violation(
            "reset-iud",
            "Perpetual Reset fails independence of uncontroversial decisions",
            reset(),
            iud(simple(&[2, 1], 3)?, 2, single(&["c"; 3])?, &["a", "a", "b"], &["a", "a", "c", "a"]),
        ),
        CorpusEntry::violation("reset-lower-quota", "Perpetual Reset fails lower quota", reset(), quota(&[1, 2], Lower, &["b", "a", "b", "a", "b", "a"], 1, 3, 4)),
        CorpusEntry::violation("reset-upper-quota", "Perpetual Reset fails upper quota", reset(), quota(&[1, 2], Upper, &["b", "a", "b", "a", "b", "a"], 0, 3, 2)),
        CorpusEntry::new("exponential-golden", "the Exponential Rule on a 4:1 split", exp(), simple(&[4, 1], 5)?, lex(), Expected::Choices(ch(&["a", "a", "b", "a", "b"]))),
        CorpusEntry::violation(
            "exponential-simple-proportionality",
            "the Exponential Rule fails simple proportionality",
            exp(),
            sp(&[4, 1], &["a", "a", "b", "a", "b"], 4, 2, 1),
        ),
        CorpusEntry::violation(
            "exponential-lower-quota",
            "the Exponential Rule fails lower quota",
            exp(),
            quota(&[2, 1], Lower, &["a", "a", "b", "a", "b", "a", "b", "a", "b"], 0, 5, 6),
        ),
        CorpusEntry::violation(
            "exponential-upper-quota",
            "the Exponential Rule fails upper quota",
            exp(),
            quota(&[2, 1], Upper, &["a", "a", "b", "a", "b", "a", "b", "a", "b"], 1, 4, 3),
        ),
        CorpusEntry::violation(
            "exponential-iud",
            "the Exponential Rule, with g(1) = 3/2, is not independent of uncontroversial decisions",
            exp(),
            iud(
                DecisionSequence::from_rounds(alloc::vec![
                    single(&["b1", "b2", "b3", "a"])?,
                    single(&["x", "x", "x", "y"])?,
                    single(&["x", "x", "x", "y"])?,
                ])?,
                0,
                single(&["c"; 4])?,
                &["a", "x", "x"],
                &["c", "a", "x", "y"],
            ),
        ),
        CorpusEntry::violation(
            "consensus-iud",
            "Perpetual Consensus excludes zero-weight approvers, so an uncontroversial round can shift later decisions",
            cons(),
            iud(simple(&[1, 1], 2)?, 1, single(&["a", "a"])?, &["a", "b"], &["a", "a", "a"]),
        ),
        CorpusEntry::violation(
            "consensus-lower-quota",
            "Perpetual Consensus (Frege's method) fails lower quota",
            cons(),
            quota(
                &[14, 1, 14, 18, 1],
                Lower,
                &["d", "a", "c", "d", "a", "c", "d", "a", "c", "d", "b", "a", "d", "c", "d", "a", "c", "d", "a", "c", "d", "e", "a", "c"],
                3,
                8,
                9,
            ),
        ),
        CorpusEntry::violation(
            "dictator-iud",
            "Rotating Dictator fails independence of uncontroversial decisions",
            dict(),
            iud(simple(&[1, 1], 2)?, 0, single(&["a", "a"])?, &["a", "b"], &["a", "b", "a"]),
        ),
        CorpusEntry::violation("dictator-lower-quota", "Rotating Dictator fails lower quota", dict(), quota(&[2, 2], Lower, &["a", "a"], 1, 0, 1)),
        CorpusEntry::violation("dictator-upper-quota", "Rotating Dictator fails upper quota", dict(), quota(&[2, 2], Upper, &["a", "a"], 0, 2, 1)),
        CorpusEntry::violation(
            "phragmen-iud",
            "Perpetual Phragmén fails independence of uncontroversial decisions",
            phr(),
            iud(
                DecisionSequence::from_rounds(alloc::vec![single(&["a", "a"])?, single(&["a", "b"])?])?,
                2,
                DecisionInstance::from_sets(&[&["b"], &["a", "b"]])?,
                &["a", "a"],
                &["a", "a", "a"],
            ),
        ),
        CorpusEntry::violation("phragmen-upper-quota", "Perpetual Phragmén fails upper quota", phr(), quota(&[2, 1, 1], Upper, &["a", "a"], 0, 2, 1)),
        CorpusEntry::new(
            "phragmen-probe-tied",
            "all six alternatives tie after the two opening rounds",
            phr(),
            phragmen_probe(&[&["a"], &["b"], &["c"], &["d"], &["e"], &["f"], &["a", "b", "c", "d", "e", "f"]])?,
            lex(),
            Expected::Choices(ch(&["a", "b", "a"])),
        ),
        CorpusEntry::new(
            "phragmen-probe-pair",
            "two loaded voters beat one unloaded voter",
            phr(),
            phragmen_probe(&[&["a"], &["a"], &["b"], &["c"], &["d"], &["e"], &["f"]])?,
            lex(),
            Expected::Choices(ch(&["a", "b", "a"])),
        ),
        CorpusEntry::new(
            "phragmen-probe-triple",
            "three loaded voters tie with one loaded and one unloaded voter",
            phr(),
            phragmen_probe(&[&["a"], &["a"], &["a"], &["b"], &["b"], &["c"], &["c"]])?,
            lex(),
            Expected::Choices(ch(&["a", "b", "a"])),
        ),
    ];

    for k in [1, 5, 10] {
        let c = av_dryspell(k)?;
        out.push(CorpusEntry::new(format!("av-dry-spell-{k}"), "AV has unbounded dry spells", av(), c.sequence, c.tiebreak, Expected::DrySpell { voter: c.voter, length: c.dry_spell }).unbounded());
    }
    let c = pav_dryspell(3)?;
    out.push(CorpusEntry::new("pav-dry-spell-golden", "Perpetual PAV alternates, then abandons voter 3", pav(), c.sequence, c.tiebreak, Expected::Choices(ch(&["a", "b", "a", "b", "a", "b", "a", "a", "a"]))));
    for k in [1, 3, 6, 10] {
        let c = pav_dryspell(k)?;
        out.push(CorpusEntry::new(format!("pav-dry-spell-{k}"), "Perpetual PAV has unbounded dry spells", pav(), c.sequence, c.tiebreak, Expected::DrySpell { voter: c.voter, length: c.dry_spell }).unbounded());
    }
    for n in 3..=8 {
        let c = reset_dryspell(n)?;
        out.push(CorpusEntry::new(format!("reset-dry-spell-{n}"), "Perpetual Reset dry spells of 2n-3 occur", reset(), c.sequence, c.tiebreak, Expected::DrySpell { voter: c.voter, length: c.dry_spell }));
    }
    for n in 2..=6 {
        let c = phragmen_dryspell(n)?;
        out.push(CorpusEntry::new(format!("phragmen-dry-spell-{n}"), "Perpetual Phragmén dry spells of 2n-2 occur", phr(), c.sequence, c.tiebreak, Expected::DrySpell { voter: c.voter, length: c.dry_spell }));
    }
    let (seq, tb) = dictator_unboundedness(3, 5)?;
    out.push(CorpusEntry::new("dictator-dictatorial-3-5", "Rotating Dictator produces 5 consecutive dictatorial rounds", dict(), seq, tb, Expected::DictatorialRun(5)));
    for (name, rule) in one_sided_representatives() {
        out.push(CorpusEntry::new(
            format!("one-sided-dry-spell-{name}"),
            "win-based and loss-based rules have unbounded dry spells",
            rule,
            one_sided_dryspell(ONE_SIDED_LENGTH)?,
            lex(),
            Expected::DrySpellAtLeast(ONE_SIDED_LENGTH),
        ));
    }
    Ok(out)
}

/// Entry by id.
pub fn entry(id: &str) -> Result<Option<CorpusEntry>> {
    Ok(entries()?.into_iter().find(|e| e.id == id))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_verifies() {
        for e in entries().unwrap() {
            let r = e.verify().unwrap();
            assert!(r.ok, "{}: {}", r.id, r.detail);
        }
    }

    #[test]
    fn ids_are_unique() {
        let es = entries().unwrap();
        for (i, e) in es.iter().enumerate() {
            assert!(es[..i].iter().all(|f| f.id != e.id), "{}", e.id);
        }
    }

    #[test]
    fn tampered_entry_fails() {
        let mut e = entry("pav-golden").unwrap().unwrap();
        e.expected = Expected::Choices(ch(&["a", "a", "a", "a"]));
        assert!(!e.verify().unwrap().ok);
    }
}
