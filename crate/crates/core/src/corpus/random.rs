//! Seeded random generators for campaigns. All randomness in the crate flows
//! through [`seeded`], so a recorded seed replays a campaign exactly.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::instance_from_masks;
use crate::model::{DecisionInstance, DecisionSequence};

/// Seed used when the caller does not choose one.
pub const DEFAULT_SEED: u64 = 0x5eed_0f_b007;

pub type CampaignRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> CampaignRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` voters, each approving a uniformly random non-empty subset of the
/// first `candidates` labels.
pub fn random_instance<R: Rng>(rng: &mut R, voters: usize, candidates: usize) -> DecisionInstance {
    let options = (1u32 << candidates) - 1;
    let rows: Vec<u32> = (0..voters).map(|_| rng.gen_range(1..=options)).collect();
    instance_from_masks(&rows, candidates)
}

pub fn random_sequence_of<R: Rng>(rng: &mut R, voters: usize, rounds: usize, candidates: usize) -> DecisionSequence {
    let rounds = (0..rounds).map(|_| random_instance(rng, voters, candidates)).collect();
    DecisionSequence::new(voters, rounds).expect("generated sequences are well formed")
}

/// Uniform sizes in `1..=max_*`, candidate count fixed per sequence.
pub fn random_sequence<R: Rng>(rng: &mut R, max_voters: usize, max_rounds: usize, max_candidates: usize) -> DecisionSequence {
    let n = rng.gen_range(1..=max_voters);
    let k = rng.gen_range(1..=max_rounds);
    let c = rng.gen_range(1..=max_candidates);
    random_sequence_of(rng, n, k, c)
}

/// Positive party sizes summing to `voters`.
pub fn random_party_sizes<R: Rng>(rng: &mut R, voters: usize, max_parties: usize) -> Vec<usize> {
    let parties = rng.gen_range(1..=max_parties.min(voters));
    let mut sizes = alloc::vec![1usize; parties];
    for _ in parties..voters {
        let i = rng.gen_range(0..parties);
        sizes[i] += 1;
    }
    sizes
}
