//! Decision instances, sequences and histories.
//!
//! Voters are 0-based indices. Candidates are strings, stored once per round;
//! approvals are kept as sorted candidate indices into that round's list.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Label for the `index`-th party of a simple sequence.
///
/// `a`..`z`, then `za`, `zb`, ... so that lexicographic order agrees with
/// index order for any number of parties.
pub fn party_label(index: usize) -> String {
    let mut out = String::new();
    let mut rest = index;
    while rest >= 26 {
        out.push('z');
        rest -= 25;
    }
    out.push((b'a' + rest as u8) as char);
    out
}

/// A fixed strict order over candidate identifiers, plus an optional voter
/// order used by voter-level tie-breaks (Phragmén prefix ties, the Rotating
/// Dictator enumeration).
///
/// Candidates named in `priority` rank first, in list order; every other
/// candidate follows in lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TieBreaker {
    priority: Vec<String>,
    voter_order: Option<Vec<usize>>,
}

impl TieBreaker {
    pub fn lexicographic() -> Self {
        Self::default()
    }

    pub fn with_priority<I, S>(priority: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            priority: priority.into_iter().map(Into::into).collect(),
            voter_order: None,
        }
    }

    pub fn with_voter_order(mut self, order: Vec<usize>) -> Self {
        self.voter_order = Some(order);
        self
    }

    pub fn priority(&self) -> &[String] {
        &self.priority
    }

    pub fn voter_order(&self) -> Option<&[usize]> {
        self.voter_order.as_deref()
    }

    /// `Less` means `a` wins the tie against `b`.
    pub fn compare(&self, a: &str, b: &str) -> Ordering {
        let pos = |c: &str| self.priority.iter().position(|p| p == c);
        match (pos(a), pos(b)) {
            (Some(x), Some(y)) => x.cmp(&y),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => a.cmp(b),
        }
    }

    pub fn prefers(&self, a: &str, b: &str) -> bool {
        self.compare(a, b) == Ordering::Less
    }

    /// Voters in enumeration order (`0..n` unless overridden).
    pub fn voter_sequence(&self, voters: usize) -> Result<Vec<usize>> {
        match &self.voter_order {
            None => Ok((0..voters).collect()),
            Some(order) => {
                let mut seen = alloc::vec![false; voters];
                if order.len() != voters {
                    return Err(Error::BadVoterOrder(voters));
                }
                for &v in order {
                    if v >= voters || seen[v] {
                        return Err(Error::BadVoterOrder(voters));
                    }
                    seen[v] = true;
                }
                Ok(order.clone())
            }
        }
    }

    /// `rank[v]` is the position of voter `v` in the enumeration.
    pub fn voter_ranks(&self, voters: usize) -> Result<Vec<usize>> {
        let order = self.voter_sequence(voters)?;
        let mut rank = alloc::vec![0; voters];
        for (pos, &v) in order.iter().enumerate() {
            rank[v] = pos;
        }
        Ok(rank)
    }
}

/// One election: an ordered candidate list and an approval set per voter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecisionInstance {
    candidates: Vec<String>,
    approvals: Vec<Vec<usize>>,
}

impl DecisionInstance {
    pub fn new(candidates: Vec<String>, approvals: Vec<Vec<String>>) -> Result<Self> {
        Self::new_in_round(0, candidates, approvals)
    }

    /// Same as [`DecisionInstance::new`], reporting errors against `round`.
    pub fn new_in_round(
        round: usize,
        candidates: Vec<String>,
        approvals: Vec<Vec<String>>,
    ) -> Result<Self> {
        for (i, c) in candidates.iter().enumerate() {
            if candidates[..i].contains(c) {
                return Err(Error::DuplicateCandidate {
                    round,
                    candidate: c.clone(),
                });
            }
        }
        let mut rows = Vec::with_capacity(approvals.len());
        for (voter, set) in approvals.into_iter().enumerate() {
            let mut row = Vec::with_capacity(set.len());
            for name in set {
                match candidates.iter().position(|c| *c == name) {
                    Some(idx) => row.push(idx),
                    None => {
                        return Err(Error::UnknownCandidate {
                            round,
                            candidate: name,
                        })
                    }
                }
            }
            row.sort_unstable();
            row.dedup();
            if row.is_empty() {
                return Err(Error::EmptyApproval { round, voter });
            }
            rows.push(row);
        }
        Ok(Self {
            candidates,
            approvals: rows,
        })
    }

    /// Builds an instance from per-voter approval sets; the candidate list is
    /// every approved name in lexicographic order.
    pub fn from_sets(sets: &[&[&str]]) -> Result<Self> {
        let mut candidates: Vec<String> = sets
            .iter()
            .flat_map(|s| s.iter().map(|c| (*c).to_owned()))
            .collect();
        candidates.sort();
        candidates.dedup();
        let approvals = sets
            .iter()
            .map(|s| s.iter().map(|c| (*c).to_owned()).collect())
            .collect();
        Self::new(candidates, approvals)
    }

    /// Every voter approves exactly one candidate.
    pub fn singletons(choices: &[&str]) -> Result<Self> {
        let sets: Vec<[&str; 1]> = choices.iter().map(|c| [*c]).collect();
        let refs: Vec<&[&str]> = sets.iter().map(|s| &s[..]).collect();
        Self::from_sets(&refs)
    }

    pub(crate) fn from_indices(candidates: Vec<String>, approvals: Vec<Vec<usize>>) -> Self {
        debug_assert!(approvals
            .iter()
            .all(|r| !r.is_empty() && r.windows(2).all(|w| w[0] < w[1])));
        Self {
            candidates,
            approvals,
        }
    }

    pub fn voters(&self) -> usize {
        self.approvals.len()
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn candidate(&self, index: usize) -> &str {
        &self.candidates[index]
    }

    pub fn candidate_index(&self, name: &str) -> Option<usize> {
        self.candidates.iter().position(|c| c == name)
    }

    /// Sorted candidate indices approved by `voter`.
    pub fn approvals(&self, voter: usize) -> &[usize] {
        &self.approvals[voter]
    }

    pub fn approval_names(&self, voter: usize) -> Vec<&str> {
        self.approvals[voter]
            .iter()
            .map(|&c| self.candidates[c].as_str())
            .collect()
    }

    pub fn approves(&self, voter: usize, candidate: usize) -> bool {
        self.approvals[voter].binary_search(&candidate).is_ok()
    }

    pub fn approvers(&self, candidate: usize) -> Vec<usize> {
        (0..self.voters())
            .filter(|&v| self.approves(v, candidate))
            .collect()
    }

    /// Index of the tie-break-preferred candidate among `pool`.
    pub fn best_of<I>(&self, pool: I, tb: &TieBreaker) -> Option<usize>
    where
        I: IntoIterator<Item = usize>,
    {
        pool.into_iter()
            .min_by(|&a, &b| tb.compare(&self.candidates[a], &self.candidates[b]))
    }

    /// `c` when the approval sets intersect in exactly `{c}`.
    pub fn uncontroversial_winner(&self) -> Option<usize> {
        let (first, rest) = self.approvals.split_first()?;
        let mut common: Vec<usize> = first.clone();
        for row in rest {
            common.retain(|c| row.binary_search(c).is_ok());
        }
        match common.as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    /// Approval rows as candidate names, for display and serialization.
    pub fn approval_rows(&self) -> Vec<Vec<String>> {
        (0..self.voters())
            .map(|v| {
                self.approval_names(v)
                    .into_iter()
                    .map(ToOwned::to_owned)
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for DecisionInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for v in 0..self.voters() {
            if v > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (i, c) in self.approval_names(v).iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str(c)?;
            }
            f.write_str("}")?;
        }
        f.write_str(")")
    }
}

/// `n` voters facing `k >= 1` rounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecisionSequence {
    voters: usize,
    rounds: Vec<DecisionInstance>,
}

impl DecisionSequence {
    pub fn new(voters: usize, rounds: Vec<DecisionInstance>) -> Result<Self> {
        if voters == 0 || rounds.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (round, inst) in rounds.iter().enumerate() {
            if inst.voters() != voters {
                return Err(Error::ArityMismatch {
                    round,
                    expected: voters,
                    found: inst.voters(),
                });
            }
        }
        Ok(Self { voters, rounds })
    }

    pub fn from_rounds(rounds: Vec<DecisionInstance>) -> Result<Self> {
        let voters = rounds.first().map_or(0, DecisionInstance::voters);
        Self::new(voters, rounds)
    }

    /// `instance` repeated `k` times.
    pub fn repeated(instance: DecisionInstance, k: usize) -> Result<Self> {
        Self::new(instance.voters(), alloc::vec![instance; k])
    }

    /// Canonical simple sequence: party `i` is candidate [`party_label`]`(i)`,
    /// voters are grouped by party in the given order.
    pub fn simple(party_sizes: &[usize], k: usize) -> Result<Self> {
        if party_sizes.is_empty() || party_sizes.contains(&0) {
            return Err(Error::InvalidParameter("party sizes must be positive"));
        }
        let candidates: Vec<String> = (0..party_sizes.len()).map(party_label).collect();
        let approvals = party_sizes
            .iter()
            .enumerate()
            .flat_map(|(p, &size)| core::iter::repeat(alloc::vec![p]).take(size))
            .collect();
        Self::repeated(DecisionInstance::from_indices(candidates, approvals), k)
    }

    pub fn voters(&self) -> usize {
        self.voters
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn rounds(&self) -> &[DecisionInstance] {
        &self.rounds
    }

    pub fn round(&self, index: usize) -> &DecisionInstance {
        &self.rounds[index]
    }

    /// The sequence with `instance` spliced in before round `position`
    /// (`position == len()` appends).
    pub fn insert_round(&self, position: usize, instance: DecisionInstance) -> Result<Self> {
        if position > self.len() {
            return Err(Error::PositionOutOfRange {
                position,
                len: self.len(),
            });
        }
        if instance.voters() != self.voters {
            return Err(Error::ArityMismatch {
                round: position,
                expected: self.voters,
                found: instance.voters(),
            });
        }
        let mut rounds = self.rounds.clone();
        rounds.insert(position, instance);
        Ok(Self {
            voters: self.voters,
            rounds,
        })
    }

    pub fn remove_round(&self, position: usize) -> Result<Self> {
        if position >= self.len() {
            return Err(Error::PositionOutOfRange {
                position,
                len: self.len(),
            });
        }
        let mut rounds = self.rounds.clone();
        rounds.remove(position);
        Self::new(self.voters, rounds)
    }

    pub fn concat(&self, other: &DecisionSequence) -> Result<Self> {
        let mut rounds = self.rounds.clone();
        rounds.extend(other.rounds.iter().cloned());
        Self::new(self.voters, rounds)
    }

    /// All rounds share one profile and one candidate set, and every voter
    /// approves a single candidate.
    pub fn is_simple(&self) -> bool {
        let first = &self.rounds[0];
        first.approvals.iter().all(|row| row.len() == 1) && self.rounds.iter().all(|r| r == first)
    }

    /// `#v`: how many voters share `voter`'s approval set. Simple sequences
    /// only.
    pub fn party_size(&self, voter: usize) -> Result<usize> {
        self.check_voter(voter)?;
        if !self.is_simple() {
            return Err(Error::NotSimple("party_size"));
        }
        let first = &self.rounds[0];
        let mine = first.approvals(voter);
        Ok((0..self.voters)
            .filter(|&v| first.approvals(v) == mine)
            .count())
    }

    pub(crate) fn check_voter(&self, voter: usize) -> Result<()> {
        if voter >= self.voters {
            return Err(Error::VoterOutOfRange {
                voter,
                voters: self.voters,
            });
        }
        Ok(())
    }
}

impl fmt::Display for DecisionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rounds.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊕ ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Winners, one candidate name per round.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ChoiceSequence(pub Vec<String>);

impl ChoiceSequence {
    pub fn from_names(names: &[&str]) -> Self {
        Self(names.iter().map(|s| (*s).to_owned()).collect())
    }

    pub fn winners(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` with `winner` spliced in at `position`.
    pub fn inserted(&self, position: usize, winner: &str) -> Self {
        let mut out = self.0.clone();
        out.insert(position, winner.to_owned());
        Self(out)
    }
}

impl fmt::Display for ChoiceSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(w)?;
        }
        f.write_str(")")
    }
}

/// A decision sequence together with the winners chosen so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionHistory {
    sequence: DecisionSequence,
    choices: ChoiceSequence,
    winner_indices: Vec<usize>,
}

impl DecisionHistory {
    pub fn new(sequence: DecisionSequence, choices: ChoiceSequence) -> Result<Self> {
        if choices.len() != sequence.len() {
            return Err(Error::ChoiceLengthMismatch {
                expected: sequence.len(),
                found: choices.len(),
            });
        }
        let winner_indices = sequence
            .rounds()
            .iter()
            .zip(choices.winners())
            .map(|(round, w)| {
                round
                    .candidate_index(w)
                    .ok_or_else(|| Error::CandidateNotInRound(w.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            sequence,
            choices,
            winner_indices,
        })
    }

    pub fn sequence(&self) -> &DecisionSequence {
        &self.sequence
    }

    pub fn choices(&self) -> &ChoiceSequence {
        &self.choices
    }

    pub fn winner_index(&self, round: usize) -> usize {
        self.winner_indices[round]
    }

    pub fn is_satisfied(&self, round: usize, voter: usize) -> bool {
        self.sequence
            .round(round)
            .approves(voter, self.winner_indices[round])
    }

    /// Number of rounds whose winner `voter` approved.
    pub fn satisfaction(&self, voter: usize) -> Result<usize> {
        self.sequence.check_voter(voter)?;
        Ok((0..self.sequence.len())
            .filter(|&r| self.is_satisfied(r, voter))
            .count())
    }

    /// Satisfaction after the first `rounds` rounds.
    pub fn satisfaction_prefix(&self, voter: usize, rounds: usize) -> Result<usize> {
        self.sequence.check_voter(voter)?;
        Ok((0..rounds.min(self.sequence.len()))
            .filter(|&r| self.is_satisfied(r, voter))
            .count())
    }

    pub fn satisfactions(&self) -> Vec<usize> {
        (0..self.sequence.voters())
            .map(|v| self.satisfaction(v).unwrap_or(0))
            .collect()
    }

    /// Longest run of consecutive rounds none of whose winners `voter`
    /// approved.
    pub fn max_dry_spell(&self, voter: usize) -> Result<usize> {
        self.sequence.check_voter(voter)?;
        let mut best = 0;
        let mut run = 0;
        for r in 0..self.sequence.len() {
            if self.is_satisfied(r, voter) {
                run = 0;
            } else {
                run += 1;
                best = best.max(run);
            }
        }
        Ok(best)
    }

    /// `(voter, length, first round of the window)` of the longest dry spell
    /// over all voters; ties go to the lowest voter, then earliest window.
    pub fn longest_dry_spell(&self) -> (usize, usize, usize) {
        let mut best = (0, 0, 0);
        for v in 0..self.sequence.voters() {
            let mut run = 0;
            for r in 0..self.sequence.len() {
                if self.is_satisfied(r, v) {
                    run = 0;
                } else {
                    run += 1;
                    if run > best.1 {
                        best = (v, run, r + 1 - run);
                    }
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn aab() -> DecisionInstance {
        DecisionInstance::singletons(&["a", "a", "b"]).unwrap()
    }

    fn history(seq: &DecisionSequence, winners: &[&str]) -> DecisionHistory {
        DecisionHistory::new(seq.clone(), ChoiceSequence::from_names(winners)).unwrap()
    }

    #[test]
    fn satisfaction_counts_approved_winners() {
        let seq = DecisionSequence::repeated(aab(), 3).unwrap();
        let h = history(&seq, &["a", "a", "a"]);
        assert_eq!(h.satisfaction(2).unwrap(), 0);
        assert_eq!(h.satisfaction(0).unwrap(), 3);
        assert_eq!(
            h.satisfaction(3),
            Err(Error::VoterOutOfRange {
                voter: 3,
                voters: 3
            })
        );
    }

    #[test]
    fn satisfaction_on_reset_counterexample() {
        let inst = DecisionInstance::singletons(&["a", "a", "a", "b", "c", "d"]).unwrap();
        let seq = DecisionSequence::repeated(inst, 6).unwrap();
        let h = history(&seq, &["a", "a", "a", "b", "a", "c"]);
        assert_eq!(h.satisfaction(0).unwrap(), 4);
    }

    #[test]
    fn dry_spells() {
        let seq = DecisionSequence::repeated(aab(), 3).unwrap();
        let h = history(&seq, &["a", "a", "a"]);
        assert_eq!(h.max_dry_spell(2).unwrap(), 3);
        assert_eq!(h.max_dry_spell(0).unwrap(), 0);
        let h = history(&seq, &["a", "b", "a"]);
        assert_eq!(h.max_dry_spell(0).unwrap(), 1);
        assert_eq!(h.longest_dry_spell(), (0, 1, 1));
    }

    #[test]
    fn insert_round_positions() {
        let seq = DecisionSequence::repeated(aab(), 3).unwrap();
        let ccc = DecisionInstance::singletons(&["c", "c", "c"]).unwrap();
        let front = seq.insert_round(0, ccc.clone()).unwrap();
        assert_eq!(front.len(), 4);
        assert_eq!(front.round(0), &ccc);
        let back = seq.insert_round(3, ccc.clone()).unwrap();
        assert_eq!(back.round(3), &ccc);
        let mid = seq.insert_round(2, ccc.clone()).unwrap();
        assert_eq!(mid.round(2), &ccc);
        assert_eq!(mid.round(3), &aab());
        assert_eq!(mid.remove_round(2).unwrap(), seq);
        assert!(matches!(
            seq.insert_round(5, ccc),
            Err(Error::PositionOutOfRange { .. })
        ));
        let wide = DecisionInstance::singletons(&["c", "c"]).unwrap();
        assert!(matches!(
            seq.insert_round(0, wide),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn simple_sequences_and_party_sizes() {
        let seq = DecisionSequence::repeated(aab(), 3).unwrap();
        assert!(seq.is_simple());
        assert_eq!(seq.party_size(0).unwrap(), 2);
        assert_eq!(seq.party_size(2).unwrap(), 1);

        let abc = DecisionSequence::repeated(
            DecisionInstance::singletons(&["a", "b", "c"]).unwrap(),
            1,
        )
        .unwrap();
        assert!(abc.is_simple());
        assert!((0..3).all(|v| abc.party_size(v).unwrap() == 1));

        let wide = DecisionInstance::from_sets(&[&["a", "b"], &["a"]]).unwrap();
        let seq = DecisionSequence::repeated(wide, 2).unwrap();
        assert!(!seq.is_simple());
        assert_eq!(seq.party_size(0), Err(Error::NotSimple("party_size")));

        assert_eq!(DecisionSequence::simple(&[2, 1], 3).unwrap(), DecisionSequence::repeated(aab(), 3).unwrap());
    }

    #[test]
    fn uncontroversial() {
        let ccc = DecisionInstance::singletons(&["c", "c", "c"]).unwrap();
        assert_eq!(ccc.uncontroversial_winner(), Some(0));
        let ab = DecisionInstance::singletons(&["a", "b"]).unwrap();
        assert_eq!(ab.uncontroversial_winner(), None);
        let both = DecisionInstance::from_sets(&[&["a", "b"], &["a", "b"]]).unwrap();
        assert_eq!(both.uncontroversial_winner(), None);
        let mixed = DecisionInstance::from_sets(&[&["a", "c"], &["c"], &["b", "c"]]).unwrap();
        assert_eq!(mixed.candidate(mixed.uncontroversial_winner().unwrap()), "c");
    }

    #[test]
    fn instance_validation() {
        let err = DecisionInstance::new(vec!["a".into()], vec![vec![]]).unwrap_err();
        assert_eq!(err, Error::EmptyApproval { round: 0, voter: 0 });
        let err = DecisionInstance::new(vec!["a".into()], vec![vec!["b".into()]]).unwrap_err();
        assert!(matches!(err, Error::UnknownCandidate { .. }));
        let err =
            DecisionInstance::new(vec!["a".into(), "a".into()], vec![vec!["a".into()]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateCandidate { .. }));
        assert_eq!(DecisionSequence::new(1, vec![]), Err(Error::EmptySequence));
    }

    #[test]
    fn tie_breaker_orders() {
        let tb = TieBreaker::lexicographic();
        assert!(tb.prefers("a", "b"));
        let tb = TieBreaker::with_priority(["c1", "c2", "c10"]);
        assert!(tb.prefers("c2", "c10"));
        assert!(tb.prefers("c10", "a"));
        let tb = TieBreaker::lexicographic().with_voter_order(vec![2, 0, 1]);
        assert_eq!(tb.voter_ranks(3).unwrap(), vec![1, 2, 0]);
        assert_eq!(tb.voter_sequence(2), Err(Error::BadVoterOrder(2)));
    }

    #[test]
    fn party_labels_sort_like_indices() {
        let labels: Vec<String> = (0..80).map(party_label).collect();
        assert_eq!(labels[0], "a");
        assert_eq!(labels[25], "z");
        assert!(labels.windows(2).all(|w| w[0] < w[1]));
    }
}
