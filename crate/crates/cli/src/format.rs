//! Sequence files and JSON encodings of verdicts and witnesses.
//!
//! A sequence file is one JSON object:
//!
//! ```json
//! {
//!   "rounds": [{"approvals": [["a"], ["b"]], "candidates": ["a", "b"]}],
//!   "tiebreak": ["b", "a"],
//!   "voters": 2
//! }
//! ```
//!
//! `tiebreak` (highest priority first) and `voter_order` are optional. The
//! canonical writer sorts keys and pretty-prints with two-space indentation.

use anyhow::{bail, Context, Result};
use serde_json::{json, Map, Value};

use perpetual_core::axioms::{AxiomVerdict, Budget, Witness};
use perpetual_core::model::{ChoiceSequence, DecisionInstance, DecisionSequence, TieBreaker};
use perpetual_core::rational::{to_fraction_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFile {
    pub sequence: DecisionSequence,
    pub tiebreak: TieBreaker,
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array()
        .with_context(|| format!("{what} must be an array"))?
        .iter()
        .map(|s| s.as_str().map(String::from).with_context(|| format!("{what} must hold strings")))
        .collect()
}

impl SequenceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).context("sequence file is not valid JSON")?;
        Self::from_value(&doc)
    }

    pub fn from_value(doc: &Value) -> Result<Self> {
        let obj = doc.as_object().context("sequence file must be an object")?;
        for key in obj.keys() {
            if !["voters", "rounds", "tiebreak", "voter_order"].contains(&key.as_str()) {
                bail!("unknown field `{key}`");
            }
        }
        let voters = obj
            .get("voters")
            .and_then(Value::as_u64)
            .context("`voters` must be a non-negative integer")? as usize;
        let mut rounds = Vec::new();
        for (i, r) in obj
            .get("rounds")
            .and_then(Value::as_array)
            .context("`rounds` must be an array")?
            .iter()
            .enumerate()
        {
            let candidates = strings(r.get("candidates").context("round without `candidates`")?, "candidates")?;
            let approvals = r
                .get("approvals")
                .and_then(Value::as_array)
                .context("round without `approvals`")?
                .iter()
                .map(|a| strings(a, "approval set"))
                .collect::<Result<Vec<_>>>()?;
            rounds.push(DecisionInstance::new_in_round(i, candidates, approvals)?);
        }
        let sequence = DecisionSequence::new(voters, rounds)?;
        let mut tiebreak = match obj.get("tiebreak") {
            Some(t) => TieBreaker::with_priority(strings(t, "tiebreak")?),
            None => TieBreaker::lexicographic(),
        };
        if let Some(order) = obj.get("voter_order") {
            let order = order
                .as_array()
                .context("`voter_order` must be an array")?
                .iter()
                .map(|v| v.as_u64().map(|x| x as usize).context("`voter_order` must hold integers"))
                .collect::<Result<Vec<_>>>()?;
            tiebreak = tiebreak.with_voter_order(order);
            tiebreak.voter_sequence(voters)?;
        }
        Ok(Self { sequence, tiebreak })
    }

    pub fn to_value(&self) -> Value {
        let rounds: Vec<Value> = self
            .sequence
            .rounds()
            .iter()
            .map(|r| json!({"candidates": r.candidates(), "approvals": r.approval_rows()}))
            .collect();
        let mut obj = Map::new();
        obj.insert("voters".into(), json!(self.sequence.voters()));
        obj.insert("rounds".into(), Value::Array(rounds));
        if !self.tiebreak.priority().is_empty() {
            obj.insert("tiebreak".into(), json!(self.tiebreak.priority()));
        }
        if let Some(order) = self.tiebreak.voter_order() {
            obj.insert("voter_order".into(), json!(order));
        }
        Value::Object(obj)
    }

    /// Canonical text, ending in a newline.
    pub fn write(&self) -> String {
        canonical(&self.to_value())
    }
}

/// Sorted keys, two-space indentation, trailing newline.
pub fn canonical(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn rational(r: &Rational) -> Value {
    Value::String(to_fraction_string(r))
}

fn choices(c: &ChoiceSequence) -> Value {
    json!(c.winners())
}

fn instance(i: &DecisionInstance) -> Value {
    json!({"candidates": i.candidates(), "approvals": i.approval_rows()})
}

fn sequence(seq: &DecisionSequence, tb: &TieBreaker) -> Value {
    SequenceFile {
        sequence: seq.clone(),
        tiebreak: tb.clone(),
    }
    .to_value()
}

pub fn witness(w: &Witness) -> Value {
    let mut v = match w {
        Witness::DrySpell { sequence: s, tiebreak, choices: c, voter, start, length } => json!({
            "sequence": sequence(s, tiebreak),
            "choices": choices(c),
            "voter": voter,
            "start": start,
            "length": length,
        }),
        Witness::Iud { sequence: s, tiebreak, position, inserted, original, perturbed } => json!({
            "sequence": sequence(s, tiebreak),
            "position": position,
            "inserted": instance(inserted),
            "original": choices(original),
            "perturbed": choices(perturbed),
        }),
        Witness::SimpleProportionality { party_sizes, choices: c, voter, satisfaction, party_size } => json!({
            "party_sizes": party_sizes,
            "choices": choices(c),
            "voter": voter,
            "satisfaction": satisfaction,
            "party_size": party_size,
        }),
        Witness::Quota { party_sizes, kind, prefix, choices: c, party, satisfaction, bound } => json!({
            "party_sizes": party_sizes,
            "quota": kind.as_str(),
            "prefix": prefix,
            "choices": choices(c),
            "party": party,
            "satisfaction": satisfaction,
            "bound": bound,
        }),
        Witness::Apportionment { method, rule, party_sizes, house_size, round, rule_seats, method_seats } => json!({
            "method": method.as_str(),
            "rule": rule.as_str(),
            "party_sizes": party_sizes,
            "house_size": house_size,
            "round": round,
            "rule_seats": rule_seats,
            "method_seats": method_seats,
        }),
        Witness::WinCondition { x, y, lhs, rhs } => json!({
            "x": x,
            "y": y,
            "lhs": rational(lhs),
            "rhs": rational(rhs),
        }),
    };
    v["kind"] = json!(w.kind());
    v["summary"] = json!(w.describe());
    v
}

pub fn budget(b: &Budget) -> Value {
    json!({"examined": b.examined, "exhaustive": b.exhaustive, "closed": b.closed})
}

/// Machine-readable verdict record.
pub fn verdict(rule: &str, axiom: &str, v: &AxiomVerdict, witness_path: Option<&str>) -> Value {
    json!({
        "rule": rule,
        "axiom": axiom,
        "verdict": if v.is_refuted() { "refuted" } else { "holds" },
        "witness": v.witness.as_ref().map(witness),
        "witness_path": witness_path,
        "budget": budget(&v.budget),
        "seed": v.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_stable() {
        let seq = DecisionSequence::from_rounds(vec![
            DecisionInstance::from_sets(&[&["a"], &["a", "b"]]).unwrap(),
            DecisionInstance::singletons(&["c", "b"]).unwrap(),
        ])
        .unwrap();
        let f = SequenceFile {
            sequence: seq,
            tiebreak: TieBreaker::with_priority(["b", "a"]),
        };
        let text = f.write();
        let back = SequenceFile::parse(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.write(), text);
        assert!(text.find("\"rounds\"").unwrap() < text.find("\"tiebreak\"").unwrap());
    }

    #[test]
    fn rejects_malformed() {
        assert!(SequenceFile::parse("[]").is_err());
        assert!(SequenceFile::parse(r#"{"voters": 1, "rounds": [], "extra": 1}"#).is_err());
        assert!(SequenceFile::parse(r#"{"voters": 1, "rounds": [{"candidates": ["a"], "approvals": [["z"]]}]}"#).is_err());
        assert!(SequenceFile::parse(r#"{"voters": 2, "rounds": [{"candidates": ["a"], "approvals": [["a"]]}]}"#).is_err());
    }
}
