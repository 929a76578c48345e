//! The win-based characterization condition `x * w_x < (y + 1) * w_y`
//! for all `x, y >= 0`, where `w_j` is a voter's weight after `j` wins.

use alloc::vec::Vec;

use crate::axioms::{AxiomVerdict, Budget, Witness};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::rules::{BasicWamSpec, UpdateFn};

/// `w_0 = 1`, `w_j = g(w_{j-1})`, generated on demand and memoized.
pub struct WinWeightSequence {
    g: UpdateFn,
    cache: Vec<Rational>,
}

impl WinWeightSequence {
    pub fn new(g: UpdateFn) -> Self {
        Self {
            g,
            cache: alloc::vec![rational::one()],
        }
    }

    pub fn from_spec(spec: &BasicWamSpec) -> Self {
        let spec = spec.clone();
        Self::new(alloc::sync::Arc::new(move |x: &Rational| spec.apply_g(x)))
    }

    pub fn get(&mut self, j: usize) -> Result<&Rational> {
        while self.cache.len() <= j {
            let next = (self.g)(self.cache.last().expect("w_0 present"))?;
            if next > *self.cache.last().expect("w_0 present") {
                return Err(Error::Invariant(alloc::string::String::from(
                    "win weights must be non-increasing",
                )));
            }
            self.cache.push(next);
        }
        Ok(&self.cache[j])
    }

    pub fn prefix(&mut self, len: usize) -> Result<&[Rational]> {
        if len > 0 {
            self.get(len - 1)?;
        }
        Ok(&self.cache[..len])
    }
}

/// Tests every pair with `0 <= x, y <= bound` in shells of growing
/// `max(x, y)`; within a shell, `x` ascending, then `y` ascending.
pub fn check_winbased_sp_condition(w: &mut WinWeightSequence, bound: usize) -> Result<AxiomVerdict> {
    let mut lhs: Vec<Rational> = Vec::with_capacity(bound + 1);
    let mut rhs: Vec<Rational> = Vec::with_capacity(bound + 1);
    let mut examined = 0u64;
    for m in 0..=bound {
        let wm = w.get(m)?.clone();
        lhs.push(rational::int(m as i64) * &wm);
        rhs.push(rational::int(m as i64 + 1) * &wm);
        let pairs = (0..m).map(|x| (x, m)).chain((0..=m).map(|y| (m, y)));
        for (x, y) in pairs {
            examined += 1;
            if lhs[x] >= rhs[y] {
                return Ok(AxiomVerdict::refuted(
                    Witness::WinCondition {
                        x,
                        y,
                        lhs: lhs[x].clone(),
                        rhs: rhs[y].clone(),
                    },
                    Budget {
                        examined,
                        exhaustive: false,
                        closed: false,
                    },
                ));
            }
        }
    }
    Ok(AxiomVerdict::holds(Budget {
        examined,
        exhaustive: true,
        closed: false,
    }))
}

/// Same check on an explicit prefix, which must have more than `bound`
/// entries.
pub fn check_prefix(prefix: &[Rational], bound: usize) -> Result<AxiomVerdict> {
    if prefix.len() <= bound {
        return Err(Error::PrefixTooShort {
            bound,
            len: prefix.len(),
        });
    }
    let owned = prefix.to_vec();
    let mut seq = WinWeightSequence {
        g: alloc::sync::Arc::new(|_: &Rational| Err(Error::InvalidParameter("prefix exhausted"))),
        cache: owned,
    };
    check_winbased_sp_condition(&mut seq, bound)
}
