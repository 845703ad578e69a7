use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the kernel.
///
/// Variants split into three groups that the command line maps onto exit
/// codes: malformed input ([`Error::DuplicateLabel`], [`Error::UnknownElement`]),
/// semantic failures (limits, mismatches, invalid structures) and contract
/// failures ([`Error::is_contract_failure`]), which mean a construction did not
/// satisfy its universal property on the instance at hand.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier mismatch: expected `{expected}`, found `{found}`")]
    CarrierMismatch { expected: String, found: String },

    #[error("{what}: size {size} exceeds the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("duplicate element label `{label}` in carrier `{carrier}`")]
    DuplicateLabel { carrier: String, label: String },

    #[error("unknown element `{label}` in carrier `{carrier}`")]
    UnknownElement { carrier: String, label: String },

    #[error("rule {index} does not have a singleton premise")]
    NotElementary { index: usize },

    #[error("rule {index} has a premise of {size} elements (at most {max} allowed)")]
    PremiseTooLarge {
        index: usize,
        size: usize,
        max: usize,
    },

    #[error("carrier `{0}` already contains the reserved label `*`")]
    ReservedLabel(String),

    #[error("not a preorder on `{carrier}`: {reason}")]
    NotPreorder { carrier: String, reason: String },

    #[error("axiom {index} is not of rank 1")]
    NotRankOne { index: usize },

    #[error("not a relation pair: the square fails at point `{point}`, observable `{observable}`")]
    SquareViolation { point: String, observable: String },

    #[error("not a concrete space: {0}")]
    NotConcrete(String),

    #[error("invalid set-presentation: {0}")]
    InvalidPresentation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("factorization failed: {0}")]
    FactorizationFailed(String),

    #[error("generation contract violated: {0}")]
    GenerationFailed(String),

    #[error("contract violated: {0}")]
    Contract(String),
}

impl Error {
    /// True for failures of a construction's own guarantees, as opposed to bad input.
    pub fn is_contract_failure(&self) -> bool {
        matches!(
            self,
            Error::FactorizationFailed(_) | Error::GenerationFailed(_) | Error::Contract(_)
        )
    }
}
