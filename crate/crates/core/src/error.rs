use alloc::string::String;

/// Errors raised by the engine. Every variant describes invalid input or a
/// violated rule invariant; none of them is recoverable by retrying.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("voter {voter} out of range for {voters} voters")]
    VoterOutOfRange { voter: usize, voters: usize },
    #[error("round {round}: expected {expected} approval rows, found {found}")]
    ArityMismatch {
        round: usize,
        expected: usize,
        found: usize,
    },
    #[error("round {round}: voter {voter} approves nothing")]
    EmptyApproval { round: usize, voter: usize },
    #[error("round {round}: approval of unknown candidate `{candidate}`")]
    UnknownCandidate { round: usize, candidate: String },
    #[error("round {round}: duplicate candidate `{candidate}`")]
    DuplicateCandidate { round: usize, candidate: String },
    #[error("a decision sequence needs at least one voter and one round")]
    EmptySequence,
    #[error("position {position} out of range for a {len}-round sequence")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("{0}: sequence is not simple")]
    NotSimple(&'static str),
    #[error("candidate `{0}` is not in this round")]
    CandidateNotInRound(String),
    #[error("choice sequence has {found} winners for {expected} rounds")]
    ChoiceLengthMismatch { expected: usize, found: usize },
    #[error("tie-breaker voter order is not a permutation of 0..{0}")]
    BadVoterOrder(usize),
    #[error("weight update `{rule}` broke g(x) <= x <= f(x) at x = {value}")]
    MonotonicityViolated { rule: String, value: String },
    #[error("exponential rule: r(x) undefined for x = {0}")]
    ExponentialUndefined(String),
    #[error("exponential rule: round {0} exceeds the supported bound")]
    ExponentialTooLarge(u64),
    #[error("perpetual consensus: winner has no positively weighted approver")]
    ConsensusNoPositiveApprover,
    #[error("perpetual phragmen: no candidate has an approver")]
    PhragmenNoApprovers,
    #[error("pi-marked comparison undecided at the configured precision")]
    PiIndeterminate,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("weight prefix too short: need more than {bound} entries, have {len}")]
    PrefixTooShort { bound: usize, len: usize },
    #[error("party {party} does not have an integral number of voters")]
    NonIntegralParty { party: usize },
    #[error("invalid apportionment instance: {0}")]
    InvalidApportionment(&'static str),
    #[error("input exceeds the reference implementation bound ({0})")]
    SizeBoundExceeded(&'static str),
    #[error("invalid construction parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("insertion profile is not uncontroversial")]
    NotUncontroversial,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
