//! Deterministic enumeration of small decision sequences, partitions and
//! compositions.

use alloc::vec::Vec;

use crate::model::{party_label, DecisionInstance, DecisionSequence};

/// Bounds of an exhaustive search space. Candidates of every round are the
/// first `candidates` party labels (`a`, `b`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationSpace {
    pub voters: usize,
    pub rounds: usize,
    pub candidates: usize,
    /// Only simple sequences: one per partition of `voters`.
    pub simple_only: bool,
    /// Keep only round profiles that are lexicographically least among their
    /// candidate relabelings.
    pub canonical: bool,
}

impl EnumerationSpace {
    pub fn new(voters: usize, rounds: usize, candidates: usize) -> Self {
        Self {
            voters,
            rounds,
            candidates,
            simple_only: false,
            canonical: false,
        }
    }

    pub fn simple(voters: usize, rounds: usize) -> Self {
        Self {
            simple_only: true,
            ..Self::new(voters, rounds, voters)
        }
    }

    pub fn canonical(mut self) -> Self {
        self.canonical = true;
        self
    }
}

/// Every approval profile over `candidates` candidates, each voter approving
/// a non-empty subset, as bitmask rows. Voter 0 varies slowest.
pub fn round_profiles(voters: usize, candidates: usize, canonical: bool) -> Vec<Vec<u32>> {
    let options = (1u32 << candidates) - 1;
    let total = (options as usize).pow(voters as u32);
    let perms = permutations(candidates);
    let mut out = Vec::new();
    let mut row = alloc::vec![1u32; voters];
    for _ in 0..total {
        if !canonical || is_canonical(&row, &perms) {
            out.push(row.clone());
        }
        for v in (0..voters).rev() {
            if row[v] < options {
                row[v] += 1;
                break;
            }
            row[v] = 1;
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn is_canonical(row: &[u32], perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| {
        let mapped: Vec<u32> = row
            .iter()
            .map(|&m| {
                (0..p.len())
                    .filter(|&i| m & (1 << i) != 0)
                    .fold(0u32, |acc, i| acc | (1 << p[i]))
            })
            .collect();
        mapped.as_slice() >= row
    })
}

/// Builds a round from bitmask rows over the first `candidates` labels.
pub fn instance_from_masks(rows: &[u32], candidates: usize) -> DecisionInstance {
    let names = (0..candidates).map(party_label).collect();
    let approvals = rows
        .iter()
        .map(|&m| (0..candidates).filter(|&c| m & (1 << c) != 0).collect())
        .collect();
    DecisionInstance::from_indices(names, approvals)
}

/// Lazily enumerates the space in a fixed order.
pub struct SequenceEnumerator {
    space: EnumerationSpace,
    profiles: Vec<DecisionInstance>,
    partitions: Vec<Vec<usize>>,
    digits: Vec<usize>,
    done: bool,
}

pub fn enumerate_sequences(space: EnumerationSpace) -> SequenceEnumerator {
    let (profiles, partitions) = if space.simple_only {
        (Vec::new(), partitions(space.voters))
    } else {
        let rows = round_profiles(space.voters, space.candidates, space.canonical);
        (
            rows.iter().map(|r| instance_from_masks(r, space.candidates)).collect(),
            Vec::new(),
        )
    };
    let empty = space.voters == 0
        || space.rounds == 0
        || (!space.simple_only && (space.candidates == 0 || profiles.is_empty()));
    SequenceEnumerator {
        space,
        profiles,
        partitions,
        digits: alloc::vec![0; space.rounds],
        done: empty,
    }
}

impl Iterator for SequenceEnumerator {
    type Item = DecisionSequence;

    fn next(&mut self) -> Option<DecisionSequence> {
        if self.done {
            return None;
        }
        if self.space.simple_only {
            let idx = self.digits[0];
            if idx >= self.partitions.len() {
                self.done = true;
                return None;
            }
            self.digits[0] += 1;
            return DecisionSequence::simple(&self.partitions[idx], self.space.rounds).ok();
        }
        let rounds = self.digits.iter().map(|&d| self.profiles[d].clone()).collect();
        let seq = DecisionSequence::new(self.space.voters, rounds).ok();
        let base = self.profiles.len();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < base {
                break;
            }
            self.digits[i] = 0;
        }
        seq
    }
}

/// Integer partitions of `n` with parts in non-increasing order, listed from
/// `[n]` down to `[1, ..., 1]`.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(cap)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Ordered compositions of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest).rev() {
            cur.push(part);
            go(rest - part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_sequences(EnumerationSpace::new(1, 1, 1)).count(), 1);
        assert_eq!(enumerate_sequences(EnumerationSpace::new(2, 1, 2)).count(), 9);
        assert_eq!(enumerate_sequences(EnumerationSpace::new(2, 2, 2)).count(), 81);
        assert_eq!(enumerate_sequences(EnumerationSpace::simple(4, 4)).count(), 5);
        let canon = enumerate_sequences(EnumerationSpace::new(2, 1, 2).canonical()).count();
        assert!(canon < 9 && canon > 0);
    }

    #[test]
    fn deterministic() {
        let a: Vec<_> = enumerate_sequences(EnumerationSpace::new(2, 2, 2)).collect();
        let b: Vec<_> = enumerate_sequences(EnumerationSpace::new(2, 2, 2)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn partition_and_composition_counts() {
        let p: Vec<usize> = (1..=9).map(|n| partitions(n).len()).collect();
        assert_eq!(p, [1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(partitions(3), [[3].to_vec(), [2, 1].to_vec(), [1, 1, 1].to_vec()]);
        for n in 1..8 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
    }
}
