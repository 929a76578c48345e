use num_traits::{One, Zero};
use proptest::prelude::*;

use perpetual_core::corpus::random::{random_instance, random_party_sizes, random_sequence, seeded};
use perpetual_core::corpus::reference::{naive_choices, pav_weights};
use perpetual_core::model::DecisionHistory;
use perpetual_core::rational::{self, Rational};
use perpetual_core::rules::exponential::r;
use perpetual_core::rules::{run_rule, Rule, RuleId, RuleState};
use perpetual_core::{DecisionSequence, TieBreaker};

fn sequence(seed: u64) -> DecisionSequence {
    random_sequence(&mut seeded(seed), 6, 8, 4)
}

fn sum(w: &[Rational]) -> Rational {
    w.iter().sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn incremental_matches_reference(seed in any::<u64>()) {
        let seq = sequence(seed);
        let tb = TieBreaker::lexicographic();
        for id in RuleId::ALL {
            let run = run_rule(&Rule::from(id), &seq, &tb).unwrap();
            prop_assert_eq!(&run.choices, &naive_choices(id, &seq, &tb).unwrap(), "{}", id);
        }
    }

    #[test]
    fn satisfaction_plus_misses_is_rounds(seed in any::<u64>()) {
        let seq = sequence(seed);
        let ch = perpetual_core::rules::choices(&Rule::from(RuleId::Phragmen), &seq, &TieBreaker::lexicographic()).unwrap();
        let h = DecisionHistory::new(seq.clone(), ch).unwrap();
        for v in 0..seq.voters() {
            let misses = (0..seq.len()).filter(|&t| !h.is_satisfied(t, v)).count();
            prop_assert_eq!(h.satisfaction(v).unwrap() + misses, seq.len());
        }
    }

    #[test]
    fn insert_then_remove_is_identity(seed in any::<u64>(), pos in 0usize..9, other in any::<u64>()) {
        let seq = sequence(seed);
        let pos = pos % (seq.len() + 1);
        let ins = random_instance(&mut seeded(other), seq.voters(), 3);
        let back = seq.insert_round(pos, ins).unwrap().remove_round(pos).unwrap();
        prop_assert_eq!(back, seq);
    }

    #[test]
    fn party_sizes_add_up(seed in any::<u64>(), n in 1usize..30, m in 1usize..6) {
        let sizes = random_party_sizes(&mut seeded(seed), n, m);
        prop_assert_eq!(sizes.iter().sum::<usize>(), n);
        let seq = DecisionSequence::simple(&sizes, 2).unwrap();
        prop_assert_eq!(seq.voters(), n);
        for v in 0..n {
            prop_assert!(sizes.contains(&seq.party_size(v).unwrap()));
        }
    }

    #[test]
    fn pav_weight_is_reciprocal_satisfaction(seed in any::<u64>()) {
        let seq = sequence(seed);
        let run = run_rule(&Rule::from(RuleId::Pav), &seq, &TieBreaker::lexicographic()).unwrap();
        let h = DecisionHistory::new(seq.clone(), run.choices.clone()).unwrap();
        for t in 0..=seq.len() {
            let RuleState::Weights(w) = &run.states[t] else { unreachable!() };
            prop_assert_eq!(w, &pav_weights(&seq.rounds()[..t], &run.winners[..t], seq.voters()));
            for v in 0..seq.voters() {
                let sat = h.satisfaction_prefix(v, t).unwrap();
                prop_assert_eq!(&w[v], &rational::ratio(1, sat as i64 + 1));
            }
        }
    }

    #[test]
    fn conservation_laws_hold_every_round(seed in any::<u64>()) {
        let seq = sequence(seed);
        let tb = TieBreaker::lexicographic();
        let n = rational::int(seq.voters() as i64);
        let cons = run_rule(&Rule::from(RuleId::Consensus), &seq, &tb).unwrap();
        for s in &cons.states {
            prop_assert_eq!(sum(s.as_rationals().unwrap()), n.clone());
        }
        let phr = run_rule(&Rule::from(RuleId::Phragmen), &seq, &tb).unwrap();
        for (t, s) in phr.states.iter().enumerate() {
            let loads = s.as_rationals().unwrap();
            prop_assert_eq!(sum(loads), rational::int(t as i64));
            prop_assert!(loads.iter().all(|l| *l >= Rational::zero()));
        }
        let exp = run_rule(&Rule::from(RuleId::Exponential), &seq, &tb).unwrap();
        for (t, s) in exp.states.iter().enumerate() {
            for w in s.as_rationals().unwrap() {
                // Weight numerator encodes the round: 2k - 1 before round k.
                prop_assert_eq!(w.numer().clone(), (2 * (t as i64 + 1) - 1).into());
                prop_assert_eq!(r(w).unwrap(), t as u64 + 1);
            }
        }
        prop_assert!(exp.states[0].as_rationals().unwrap().iter().all(|w| w.is_one()));
    }
}
