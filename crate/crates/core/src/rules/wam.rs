//! Weighted approval methods with pluggable update functions.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::exponential;
use crate::error::{Error, Result};
use crate::model::{DecisionInstance, TieBreaker};
use crate::rational::{self, Rational};

/// A weight update `x -> f(x)`. Fallible so that partial functions (the
/// Exponential Rule's `r`) can reject inputs outside their domain.
pub type UpdateFn = Arc<dyn Fn(&Rational) -> Result<Rational> + Send + Sync>;

/// Which inequality is asserted every time an update is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotonicityCheck {
    /// `g(x) <= x <= f(x)`.
    Strict,
    /// Only `g(x) <= f(x)`: winners never end up heavier than they would as
    /// losers. The Exponential Rule needs this weaker form because its
    /// first-round `g(1) = 3/2` exceeds 1.
    WinnerBelowLoser,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WamKind {
    Av,
    Pav,
    Reset,
    Exponential,
    Custom,
}

/// `f` is applied to voters who did not approve the winner, `g` to those who
/// did.
#[derive(Clone)]
pub struct BasicWamSpec {
    name: String,
    kind: WamKind,
    f: UpdateFn,
    g: UpdateFn,
    check: MonotonicityCheck,
}

impl fmt::Debug for BasicWamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BasicWamSpec")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("check", &self.check)
            .finish()
    }
}

fn identity() -> UpdateFn {
    Arc::new(|x: &Rational| Ok(x.clone()))
}

impl BasicWamSpec {
    pub fn new(name: impl Into<String>, f: UpdateFn, g: UpdateFn) -> Self {
        Self {
            name: name.into(),
            kind: WamKind::Custom,
            f,
            g,
            check: MonotonicityCheck::Strict,
        }
    }

    /// `f` is the identity.
    pub fn win_based(name: impl Into<String>, g: UpdateFn) -> Self {
        Self::new(name, identity(), g)
    }

    /// `g` is the identity.
    pub fn loss_based(name: impl Into<String>, f: UpdateFn) -> Self {
        Self::new(name, f, identity())
    }

    pub fn with_check(mut self, check: MonotonicityCheck) -> Self {
        self.check = check;
        self
    }

    pub fn av() -> Self {
        let mut spec = Self::new("av", identity(), identity());
        spec.kind = WamKind::Av;
        spec
    }

    pub fn pav() -> Self {
        let g: UpdateFn = Arc::new(|x: &Rational| Ok(x / (x + rational::one())));
        let mut spec = Self::win_based("pav", g);
        spec.kind = WamKind::Pav;
        spec
    }

    pub fn reset() -> Self {
        let f: UpdateFn = Arc::new(|x: &Rational| Ok(x + rational::one()));
        let g: UpdateFn = Arc::new(|_: &Rational| Ok(rational::one()));
        let mut spec = Self::new("reset", f, g);
        spec.kind = WamKind::Reset;
        spec
    }

    /// The Exponential Rule, refusing to run past round `max_round`.
    pub fn exponential(max_round: u64) -> Self {
        let f: UpdateFn = Arc::new(move |x: &Rational| exponential::update(x, false, max_round));
        let g: UpdateFn = Arc::new(move |x: &Rational| exponential::update(x, true, max_round));
        let mut spec = Self::new("exponential", f, g).with_check(MonotonicityCheck::WinnerBelowLoser);
        spec.kind = WamKind::Exponential;
        spec
    }

    /// Win-based rule with `g(1/(c*j+1)) = 1/(c*(j+1)+1)`, i.e. weight
    /// `1/(c*j+1)` after `j` wins.
    pub fn harmonic(c: Rational) -> Self {
        let name = format!("harmonic({})", rational::to_fraction_string(&c));
        let g: UpdateFn = Arc::new(move |x: &Rational| {
            // x = 1/(c j + 1)  =>  c j = 1/x - 1
            let cj = x.recip() - rational::one();
            Ok((cj + &c + rational::one()).recip())
        });
        Self::win_based(name, g)
    }

    /// Win-based rule multiplying winners' weights by `c`.
    pub fn geometric(c: Rational) -> Self {
        let name = format!("geometric({})", rational::to_fraction_string(&c));
        let g: UpdateFn = Arc::new(move |x: &Rational| Ok(x * &c));
        Self::win_based(name, g)
    }

    /// Loss-based rule `f(x) = x + 1`.
    pub fn loss_increment() -> Self {
        let f: UpdateFn = Arc::new(|x: &Rational| Ok(x + rational::one()));
        Self::loss_based("loss(x+1)", f)
    }

    /// Loss-based rule `f(x) = 2x`.
    pub fn loss_doubling() -> Self {
        let f: UpdateFn = Arc::new(|x: &Rational| Ok(x * rational::int(2)));
        Self::loss_based("loss(2x)", f)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> WamKind {
        self.kind
    }

    pub fn apply_f(&self, x: &Rational) -> Result<Rational> {
        (self.f)(x)
    }

    pub fn apply_g(&self, x: &Rational) -> Result<Rational> {
        (self.g)(x)
    }

    /// One round: returns the winner index and the updated weights.
    pub fn step(
        &self,
        weights: &[Rational],
        instance: &DecisionInstance,
        tb: &TieBreaker,
    ) -> Result<(usize, Vec<Rational>)> {
        let winner = argmax_score(instance, weights, false, tb);
        let mut next = Vec::with_capacity(weights.len());
        for (v, x) in weights.iter().enumerate() {
            let won = instance.approves(v, winner);
            let y = match self.check {
                MonotonicityCheck::Strict => {
                    let y = if won { self.apply_g(x)? } else { self.apply_f(x)? };
                    if (won && y > *x) || (!won && y < *x) {
                        return Err(self.violation(x));
                    }
                    y
                }
                MonotonicityCheck::WinnerBelowLoser => {
                    let lose = self.apply_f(x)?;
                    let win = self.apply_g(x)?;
                    if win > lose {
                        return Err(self.violation(x));
                    }
                    if won {
                        win
                    } else {
                        lose
                    }
                }
            };
            if !y.is_positive() {
                return Err(Error::Invariant(format!(
                    "{}: weight {} is not positive",
                    self.name,
                    rational::to_fraction_string(&y)
                )));
            }
            next.push(y);
        }
        Ok((winner, next))
    }

    fn violation(&self, x: &Rational) -> Error {
        Error::MonotonicityViolated {
            rule: self.name.clone(),
            value: rational::to_fraction_string(x),
        }
    }
}

/// Sum of the approvers' weights. With `clamp`, negative weights count as 0.
pub fn score(
    instance: &DecisionInstance,
    weights: &[Rational],
    candidate: &str,
    clamp: bool,
) -> Result<Rational> {
    let c = instance
        .candidate_index(candidate)
        .ok_or_else(|| Error::CandidateNotInRound(candidate.into()))?;
    Ok(score_index(instance, weights, c, clamp))
}

pub(crate) fn score_index(
    instance: &DecisionInstance,
    weights: &[Rational],
    candidate: usize,
    clamp: bool,
) -> Rational {
    let mut total = Rational::zero();
    for (v, w) in weights.iter().enumerate() {
        if instance.approves(v, candidate) && (!clamp || w.is_positive()) {
            total += w;
        }
    }
    total
}

/// All candidate scores in one pass over the approvals.
pub(crate) fn all_scores(instance: &DecisionInstance, weights: &[Rational], clamp: bool) -> Vec<Rational> {
    let mut scores = alloc::vec![Rational::zero(); instance.candidates().len()];
    for (v, w) in weights.iter().enumerate() {
        if clamp && !w.is_positive() {
            continue;
        }
        for &c in instance.approvals(v) {
            scores[c] += w;
        }
    }
    scores
}

/// Tie-broken argmax of the weighted approval score.
pub(crate) fn argmax_score(
    instance: &DecisionInstance,
    weights: &[Rational],
    clamp: bool,
    tb: &TieBreaker,
) -> usize {
    let scores = all_scores(instance, weights, clamp);
    pick_max(instance, &scores, tb)
}

pub(crate) fn pick_max(instance: &DecisionInstance, scores: &[Rational], tb: &TieBreaker) -> usize {
    let mut best = 0;
    for c in 1..scores.len() {
        let better = match scores[c].cmp(&scores[best]) {
            core::cmp::Ordering::Greater => true,
            core::cmp::Ordering::Equal => tb.prefers(instance.candidate(c), instance.candidate(best)),
            core::cmp::Ordering::Less => false,
        };
        if better {
            best = c;
        }
    }
    best
}

pub(crate) fn ones(n: usize) -> Vec<Rational> {
    alloc::vec![Rational::one(); n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn av_leaves_weights_alone() {
        let inst = DecisionInstance::singletons(&["a", "a", "b"]).unwrap();
        let (w, next) = BasicWamSpec::av()
            .step(&ones(3), &inst, &TieBreaker::lexicographic())
            .unwrap();
        assert_eq!(inst.candidate(w), "a");
        assert_eq!(next, ones(3));
    }

    #[test]
    fn reset_updates() {
        let spec = BasicWamSpec::reset();
        assert_eq!(spec.apply_g(&int(5)).unwrap(), int(1));
        assert_eq!(spec.apply_f(&int(5)).unwrap(), int(6));
    }

    #[test]
    fn pav_update() {
        assert_eq!(BasicWamSpec::pav().apply_g(&ratio(1, 3)).unwrap(), ratio(1, 4));
    }

    #[test]
    fn harmonic_weights_follow_closed_form() {
        let c = ratio(3, 4);
        let spec = BasicWamSpec::harmonic(c.clone());
        let mut x = int(1);
        for j in 1..6 {
            x = spec.apply_g(&x).unwrap();
            assert_eq!(x, (c.clone() * int(j) + int(1)).recip());
        }
    }

    #[test]
    fn scores_and_clamping() {
        let inst = DecisionInstance::singletons(&["a", "a", "a", "b"]).unwrap();
        let w = [ratio(3, 5), ratio(3, 5), ratio(3, 5), ratio(1, 2)];
        assert_eq!(score(&inst, &w, "a", false).unwrap(), ratio(9, 5));
        assert_eq!(score(&inst, &w, "b", false).unwrap(), ratio(1, 2));
        assert!(score(&inst, &w, "z", false).is_err());

        let inst = DecisionInstance::singletons(&["a", "a", "b"]).unwrap();
        let w = [ratio(3, 2), ratio(3, 2), int(0)];
        assert_eq!(score(&inst, &w, "a", true).unwrap(), int(3));
        assert_eq!(score(&inst, &w, "b", true).unwrap(), int(0));
        let w = [int(2), int(2), int(-1)];
        assert_eq!(score(&inst, &w, "b", true).unwrap(), int(0));
        assert_eq!(score(&inst, &w, "b", false).unwrap(), int(-1));
    }

    #[test]
    fn rejects_non_monotone_updates() {
        let g: UpdateFn = Arc::new(|x: &Rational| Ok(x * int(2)));
        let spec = BasicWamSpec::win_based("bad", g);
        let inst = DecisionInstance::singletons(&["a"]).unwrap();
        let err = spec.step(&ones(1), &inst, &TieBreaker::lexicographic()).unwrap_err();
        assert!(matches!(err, Error::MonotonicityViolated { .. }));
    }
}
