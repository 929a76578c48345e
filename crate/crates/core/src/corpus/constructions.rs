//! Parameterized counterexample and tightness constructions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{party_label, DecisionInstance, DecisionSequence, TieBreaker};
use crate::rational::{self, Rational};

fn c(i: usize) -> String {
    format!("c{i}")
}

/// Candidates `c1..cn` with `c1` preferred in ties.
pub fn numbered_tie_order(n: usize) -> TieBreaker {
    TieBreaker::with_priority((1..=n).map(c))
}

/// Round over candidates `c1..cn` where voter `v` approves `c{choice[v]}`.
fn numbered_round(n: usize, choice: &[usize]) -> DecisionInstance {
    let names: Vec<String> = (1..=n).map(c).collect();
    let approvals = choice.iter().map(|&i| alloc::vec![i - 1]).collect();
    DecisionInstance::from_indices(names, approvals)
}

/// A tightness construction: the sequence, its tie order, and the voter that
/// suffers the longest dry spell together with its length.
#[derive(Debug, Clone)]
pub struct DrySpellConstruction {
    pub sequence: DecisionSequence,
    pub tiebreak: TieBreaker,
    pub voter: usize,
    pub dry_spell: usize,
}

/// Perpetual Reset, `n >= 3`: voter `n-1` waits `2n-3` rounds.
///
/// Rounds `1..n-1` are disjoint singletons. In round `n+j` (`j = 0..n-3`)
/// voters `0..=j` and voter `n-2` switch to `c1`; the last round repeats the
/// one before it.
pub fn reset_dryspell(n: usize) -> Result<DrySpellConstruction> {
    if n < 3 {
        return Err(Error::InvalidParameter("reset construction needs n >= 3"));
    }
    let mut rounds = Vec::with_capacity(2 * n - 2);
    let own: Vec<usize> = (1..=n).collect();
    for _ in 0..n - 1 {
        rounds.push(numbered_round(n, &own));
    }
    for j in 0..=n - 3 {
        let mut choice = own.clone();
        for slot in choice.iter_mut().take(j + 1) {
            *slot = 1;
        }
        choice[n - 2] = 1;
        rounds.push(numbered_round(n, &choice));
    }
    let last = rounds.last().expect("n >= 3").clone();
    rounds.push(last);
    Ok(DrySpellConstruction {
        sequence: DecisionSequence::new(n, rounds)?,
        tiebreak: numbered_tie_order(n),
        voter: n - 1,
        dry_spell: 2 * n - 3,
    })
}

/// Expected Perpetual Reset weights before each round of
/// [`reset_dryspell`], row per round, 0-based voters.
pub fn reset_weight_table(n: usize) -> Result<Vec<Vec<Rational>>> {
    if n < 3 {
        return Err(Error::InvalidParameter("reset construction needs n >= 3"));
    }
    let w = |x: usize| rational::int(x as i64);
    let mut rows = Vec::with_capacity(2 * n - 2);
    // 1-based round t and voter i below, matching the construction's layout.
    for t in 1..n {
        rows.push((1..=n).map(|i| if i < t { w(t - i) } else { w(t) }).collect());
    }
    for j in 0..=n - 3 {
        rows.push(
            (1..=n)
                .map(|i| {
                    if i <= j || i == n - 1 {
                        w(1)
                    } else if i == n {
                        w(n + j)
                    } else {
                        w(n + j - i)
                    }
                })
                .collect(),
        );
    }
    rows.push((1..=n).map(|i| if i == n { w(2 * n - 2) } else { w(1) }).collect());
    Ok(rows)
}

/// Perpetual Phragmén, `n >= 2`: disjoint singletons for `2n` rounds.
/// Voter `n-1` wins round 1 (its candidate is named first there) and then
/// loses rounds `2..2n-1`.
pub fn phragmen_dryspell(n: usize) -> Result<DrySpellConstruction> {
    if n < 2 {
        return Err(Error::InvalidParameter("phragmen construction needs n >= 2"));
    }
    let first = DecisionInstance::from_indices(
        (0..n).map(party_label).collect(),
        (0..n).map(|v| alloc::vec![if v == n - 1 { 0 } else { v + 1 }]).collect(),
    );
    let later = DecisionInstance::from_indices(
        (0..n).map(party_label).collect(),
        (0..n).map(|v| alloc::vec![v]).collect(),
    );
    let mut rounds = alloc::vec![first];
    rounds.extend(core::iter::repeat(later).take(2 * n - 1));
    Ok(DrySpellConstruction {
        sequence: DecisionSequence::new(n, rounds)?,
        tiebreak: TieBreaker::lexicographic(),
        voter: n - 1,
        dry_spell: 2 * n - 2,
    })
}

/// `(({a},{b},{a}) ⊕ ({a},{b},{b}))^k ⊕ ({a},{a},{c})^k`: under Perpetual
/// PAV voter 2 is left out of the last `k` rounds.
pub fn pav_dryspell(k: usize) -> Result<DrySpellConstruction> {
    if k == 0 {
        return Err(Error::InvalidParameter("pav construction needs k >= 1"));
    }
    let aba = DecisionInstance::singletons(&["a", "b", "a"])?;
    let abb = DecisionInstance::singletons(&["a", "b", "b"])?;
    let aac = DecisionInstance::singletons(&["a", "a", "c"])?;
    let mut rounds = Vec::with_capacity(3 * k);
    for _ in 0..k {
        rounds.push(aba.clone());
        rounds.push(abb.clone());
    }
    rounds.extend(core::iter::repeat(aac).take(k));
    Ok(DrySpellConstruction {
        sequence: DecisionSequence::new(3, rounds)?,
        tiebreak: TieBreaker::lexicographic(),
        voter: 2,
        dry_spell: k,
    })
}

/// `({a},{a},{b})^k`: approval voting never serves voter 2.
pub fn av_dryspell(k: usize) -> Result<DrySpellConstruction> {
    Ok(DrySpellConstruction {
        sequence: DecisionSequence::simple(&[2, 1], k.max(1))?,
        tiebreak: TieBreaker::lexicographic(),
        voter: 2,
        dry_spell: k.max(1),
    })
}

/// Unbounded dry spells for any win-based or loss-based WAM.
///
/// `2L+2` rounds of `({a},{b},{a,b})` followed by `L` rounds of
/// `({a},{a},{b})`. In the second phase `a` is backed by two voters whose
/// weights are at least voter 2's, so some voter goes `L` rounds unserved.
pub fn one_sided_dryspell(length: usize) -> Result<DecisionSequence> {
    let phase1 = DecisionInstance::from_sets(&[&["a"], &["b"], &["a", "b"]])?;
    let phase2 = DecisionInstance::singletons(&["a", "a", "b"])?;
    let mut rounds = alloc::vec![phase1; 2 * length + 2];
    rounds.extend(core::iter::repeat(phase2).take(length));
    DecisionSequence::new(3, rounds)
}

/// Two phases over `c1..cn`: `n` rounds of disjoint singletons, then `d`
/// rounds where (0-based) round `i` has voter `i mod n` alone on `c1` and
/// everyone else on `c2`.
pub fn dictator_unboundedness(n: usize, d: usize) -> Result<(DecisionSequence, TieBreaker)> {
    if n < 2 {
        return Err(Error::InvalidParameter("dictator construction needs n >= 2"));
    }
    let own: Vec<usize> = (1..=n).collect();
    let mut rounds: Vec<DecisionInstance> = (0..n).map(|_| numbered_round(n, &own)).collect();
    for i in n..n + d {
        let names = alloc::vec![c(1), c(2)];
        let approvals = (0..n).map(|u| alloc::vec![if u == i % n { 0 } else { 1 }]).collect();
        rounds.push(DecisionInstance::from_indices(names, approvals));
    }
    Ok((DecisionSequence::new(n, rounds)?, numbered_tie_order(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reset_shapes() {
        let c = reset_dryspell(5).unwrap();
        assert_eq!(c.sequence.len(), 8);
        assert_eq!(reset_weight_table(5).unwrap().len(), 8);
        assert!(reset_dryspell(2).is_err());
        // Round n (1-based): voters 1 and n-1 on c1.
        let r = c.sequence.round(4);
        assert_eq!(r.approval_names(0), ["c1"]);
        assert_eq!(r.approval_names(1), ["c2"]);
        assert_eq!(r.approval_names(3), ["c1"]);
        assert_eq!(r.approval_names(4), ["c5"]);
        assert_eq!(c.sequence.round(6), c.sequence.round(7));
    }

    #[test]
    fn dictator_tail_has_lone_supporters() {
        let (seq, _) = dictator_unboundedness(3, 5).unwrap();
        assert_eq!(seq.len(), 8);
        for r in &seq.rounds()[3..] {
            assert_eq!(r.approvers(0).len(), 1);
        }
        assert_eq!(dictator_unboundedness(3, 0).unwrap().0.len(), 3);
    }

    #[test]
    fn pav_shape() {
        assert_eq!(pav_dryspell(3).unwrap().sequence.len(), 9);
    }
}
