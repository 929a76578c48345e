//! Independence of uncontroversial decisions.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::axioms::{AxiomVerdict, Budget, Witness};
use crate::corpus::enumerate::{enumerate_sequences, instance_from_masks, round_profiles, EnumerationSpace};
use crate::corpus::random::{random_sequence_of, seeded};
use crate::error::{Error, Result};
use crate::model::{party_label, DecisionInstance, DecisionSequence, TieBreaker};
use crate::rules::{choices, Rule};

/// Splices each insertion profile at every position `0..=k` and compares
/// against the original run with the uncontroversial winner spliced in.
pub fn check_iud(
    rule: &Rule,
    sequence: &DecisionSequence,
    tb: &TieBreaker,
    insertions: &[DecisionInstance],
) -> Result<AxiomVerdict> {
    for ins in insertions {
        if ins.uncontroversial_winner().is_none() {
            return Err(Error::NotUncontroversial);
        }
    }
    let original = choices(rule, sequence, tb)?;
    let mut budget = Budget::default();
    for ins in insertions {
        let c = ins.candidate(ins.uncontroversial_winner().expect("checked"));
        for pos in 0..=sequence.len() {
            budget.examined += 1;
            let spliced = sequence.insert_round(pos, ins.clone())?;
            let perturbed = choices(rule, &spliced, tb)?;
            if perturbed != original.inserted(pos, c) {
                return Ok(AxiomVerdict::refuted(
                    Witness::Iud {
                        sequence: sequence.clone(),
                        tiebreak: tb.clone(),
                        position: pos,
                        inserted: ins.clone(),
                        original,
                        perturbed,
                    },
                    budget,
                ));
            }
        }
    }
    Ok(AxiomVerdict::holds(budget))
}

/// The IUD comparison for a single position and insertion.
pub fn check_iud_at(
    rule: &Rule,
    sequence: &DecisionSequence,
    tb: &TieBreaker,
    position: usize,
    inserted: &DecisionInstance,
) -> Result<AxiomVerdict> {
    let c = inserted.uncontroversial_winner().ok_or(Error::NotUncontroversial)?;
    let original = choices(rule, sequence, tb)?;
    let perturbed = choices(rule, &sequence.insert_round(position, inserted.clone())?, tb)?;
    let budget = Budget {
        examined: 1,
        exhaustive: false,
        closed: false,
    };
    if perturbed == original.inserted(position, inserted.candidate(c)) {
        return Ok(AxiomVerdict::holds(budget));
    }
    Ok(AxiomVerdict::refuted(
        Witness::Iud {
            sequence: sequence.clone(),
            tiebreak: tb.clone(),
            position,
            inserted: inserted.clone(),
            original,
            perturbed,
        },
        budget,
    ))
}

/// Every uncontroversial profile over the first `candidates` labels.
pub fn uncontroversial_profiles(voters: usize, candidates: usize) -> Vec<DecisionInstance> {
    round_profiles(voters, candidates, false)
        .into_iter()
        .map(|rows| instance_from_masks(&rows, candidates))
        .filter(|inst| inst.uncontroversial_winner().is_some())
        .collect()
}

/// Exhaustive campaign: every sequence of the space, every uncontroversial
/// insertion over the same candidates, every position.
pub fn exhaustive(rule: &Rule, space: EnumerationSpace) -> Result<AxiomVerdict> {
    let tb = TieBreaker::lexicographic();
    let insertions = uncontroversial_profiles(space.voters, space.candidates);
    let mut budget = Budget {
        examined: 0,
        exhaustive: true,
        closed: false,
    };
    for seq in enumerate_sequences(space) {
        let v = check_iud(rule, &seq, &tb, &insertions)?;
        budget.examined += v.budget.examined;
        if v.is_refuted() {
            let mut v = v;
            v.budget = budget;
            return Ok(v);
        }
    }
    Ok(AxiomVerdict::holds(budget))
}

/// All voters approve `winner` only.
pub fn unanimous_singleton(voters: usize, winner: &str) -> DecisionInstance {
    DecisionInstance::from_indices(alloc::vec![String::from(winner)], alloc::vec![alloc::vec![0]; voters])
}

/// Everyone approves `candidates[0]`; voters additionally approve random
/// other candidates, with at least one voter left out of each extra.
pub fn random_superset_profile<R: Rng>(rng: &mut R, voters: usize, candidates: usize) -> DecisionInstance {
    let names: Vec<String> = (0..candidates).map(party_label).collect();
    let common = rng.gen_range(0..candidates);
    let mut rows: Vec<Vec<usize>> = (0..voters).map(|_| alloc::vec![common]).collect();
    for c in (0..candidates).filter(|&c| c != common) {
        let excluded = rng.gen_range(0..voters);
        for (v, row) in rows.iter_mut().enumerate() {
            if v != excluded && rng.gen_bool(0.5) {
                row.push(c);
            }
        }
    }
    for row in rows.iter_mut() {
        row.sort_unstable();
    }
    DecisionInstance::from_indices(names, rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomConfig {
    pub instances: usize,
    pub max_voters: usize,
    pub max_rounds: usize,
    pub max_candidates: usize,
    pub seed: u64,
}

/// Random sequences, each tried with a unanimous singleton and a
/// heterogeneous-superset insertion.
pub fn random(rule: &Rule, config: RandomConfig) -> Result<AxiomVerdict> {
    let mut rng = seeded(config.seed);
    let tb = TieBreaker::lexicographic();
    let mut examined = 0;
    for _ in 0..config.instances {
        let n = rng.gen_range(1..=config.max_voters);
        let k = rng.gen_range(1..=config.max_rounds);
        let c = rng.gen_range(1..=config.max_candidates);
        let seq = random_sequence_of(&mut rng, n, k, c);
        let pick = party_label(rng.gen_range(0..c + 1));
        let insertions = [
            unanimous_singleton(n, &pick),
            random_superset_profile(&mut rng, n, c.max(2)),
        ];
        let v = check_iud(rule, &seq, &tb, &insertions)?;
        examined += v.budget.examined;
        if v.is_refuted() {
            let mut v = v.with_seed(config.seed);
            v.budget.examined = examined;
            return Ok(v);
        }
    }
    Ok(AxiomVerdict::holds(Budget {
        examined,
        exhaustive: false,
        closed: false,
    })
    .with_seed(config.seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ChoiceSequence;
    use crate::rules::RuleId;

    #[test]
    fn pav_counterexample() {
        let seq = DecisionSequence::simple(&[3, 1], 4).unwrap();
        let ins = DecisionInstance::singletons(&["c", "c", "c", "c"]).unwrap();
        let v = check_iud(&Rule::from(RuleId::Pav), &seq, &TieBreaker::lexicographic(), &[ins]).unwrap();
        let Some(Witness::Iud { position, perturbed, .. }) = v.witness else { panic!("expected refutation") };
        assert_eq!(position, 0);
        assert_eq!(perturbed, ChoiceSequence::from_names(&["c", "a", "a", "a", "a"]));
    }

    #[test]
    fn reset_counterexample() {
        let seq = DecisionSequence::simple(&[2, 1], 3).unwrap();
        let ins = DecisionInstance::singletons(&["c", "c", "c"]).unwrap();
        let rule = Rule::from(RuleId::Reset);
        let tb = TieBreaker::lexicographic();
        assert!(check_iud(&rule, &seq, &tb, &[ins.clone()]).unwrap().is_refuted());
        let v = check_iud_at(&rule, &seq, &tb, 2, &ins).unwrap();
        let Some(Witness::Iud { original, perturbed, .. }) = v.witness else { panic!("expected refutation") };
        assert_eq!(original, ChoiceSequence::from_names(&["a", "a", "b"]));
        assert_eq!(perturbed, ChoiceSequence::from_names(&["a", "a", "c", "a"]));
    }

    #[test]
    fn rejects_controversial_insertions() {
        let seq = DecisionSequence::simple(&[1, 1], 2).unwrap();
        let ins = DecisionInstance::singletons(&["a", "b"]).unwrap();
        assert_eq!(
            check_iud(&Rule::from(RuleId::Av), &seq, &TieBreaker::lexicographic(), &[ins]),
            Err(Error::NotUncontroversial)
        );
    }

    #[test]
    fn superset_profiles_are_uncontroversial() {
        let mut rng = seeded(3);
        for _ in 0..200 {
            let p = random_superset_profile(&mut rng, 4, 3);
            assert!(p.uncontroversial_winner().is_some());
        }
    }

    #[test]
    fn av_small_exhaustive() {
        let v = exhaustive(&Rule::from(RuleId::Av), EnumerationSpace::new(2, 2, 2)).unwrap();
        assert!(v.holds_verdict());
    }
}
