//! Rotating Dictator: in round `k` (0-based) the `k mod n`-th voter of the
//! tie-breaker's voter order decides alone.

use crate::error::Result;
use crate::model::{DecisionInstance, TieBreaker};

pub fn dictator(round: usize, instance: &DecisionInstance, tb: &TieBreaker) -> Result<usize> {
    let order = tb.voter_sequence(instance.voters())?;
    Ok(order[round % order.len()])
}

pub fn step(round: usize, instance: &DecisionInstance, tb: &TieBreaker) -> Result<usize> {
    let d = dictator(round, instance, tb)?;
    Ok(instance
        .best_of(instance.approvals(d).iter().copied(), tb)
        .expect("approval sets are non-empty"))
}
