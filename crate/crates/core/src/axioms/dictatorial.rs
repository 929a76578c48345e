//! Dictatorial rounds: the winner has a single supporter while every other
//! voter approves one common alternative that the winner beat.

use alloc::vec::Vec;

use crate::model::DecisionHistory;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictatorialReport {
    /// 0-based dictatorial rounds.
    pub rounds: Vec<usize>,
    pub longest_run: usize,
    /// First round of the longest run.
    pub run_start: usize,
}

pub fn is_dictatorial(history: &DecisionHistory, round: usize) -> bool {
    let inst = history.sequence().round(round);
    let w = history.winner_index(round);
    let supporters = inst.approvers(w);
    let [v] = supporters.as_slice() else {
        return false;
    };
    (0..inst.candidates().len())
        .filter(|&c| c != w)
        .any(|c| (0..inst.voters()).filter(|&u| u != *v).all(|u| inst.approves(u, c)))
}

pub fn detect_dictatorial_rounds(history: &DecisionHistory) -> DictatorialReport {
    let mut rounds = Vec::new();
    let (mut best, mut best_start, mut run) = (0, 0, 0);
    for r in 0..history.sequence().len() {
        if is_dictatorial(history, r) {
            rounds.push(r);
            run += 1;
            if run > best {
                best = run;
                best_start = r + 1 - run;
            }
        } else {
            run = 0;
        }
    }
    DictatorialReport {
        rounds,
        longest_run: best,
        run_start: best_start,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ChoiceSequence, DecisionInstance, DecisionSequence};

    fn history(sets: &[&[&str]], winner: &str) -> DecisionHistory {
        let seq = DecisionSequence::repeated(DecisionInstance::from_sets(sets).unwrap(), 1).unwrap();
        DecisionHistory::new(seq, ChoiceSequence::from_names(&[winner])).unwrap()
    }

    #[test]
    fn definition() {
        assert!(is_dictatorial(&history(&[&["a"], &["b"]], "a"), 0));
        assert!(!is_dictatorial(&history(&[&["a"], &["a"]], "a"), 0));
        assert!(!is_dictatorial(&history(&[&["a"], &["b"], &["c"]], "a"), 0));
        assert!(is_dictatorial(&history(&[&["a"], &["b", "c"], &["c"]], "a"), 0));
    }
}
