use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("space mismatch: expected `{expected}`, found `{found}`")]
    SpaceMismatch { expected: String, found: String },

    #[error("invalid space `{space}`: {reason}")]
    InvalidSpace { space: String, reason: String },

    #[error("unknown element `{label}` in space `{space}`")]
    UnknownElement { space: String, label: String },

    #[error("gamble has {found} values, space `{space}` has {expected} elements")]
    LengthMismatch { space: String, expected: usize, found: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("invalid mass function: {0}")]
    InvalidMass(String),

    #[error("invalid credal set: {0}")]
    InvalidCredalSet(String),

    #[error("probability intervals are not reachable: {0}")]
    Unreachable(String),

    #[error("polytope is empty")]
    InfeasiblePolytope,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("empty action set")]
    EmptyActions,

    #[error("conditioning event has zero lower probability")]
    ZeroLowerProbability,

    #[error("conditioning event has zero probability")]
    ZeroProbability,

    #[error("no root: function is negative at the left end of the bracket")]
    NoRoot,

    #[error("invalid multi-valued map: {0}")]
    InvalidMap(String),

    #[error("vacuous-posterior assumption violated: {0}")]
    AssumptionViolated(String),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("B+ is not singly connected after arc removal")]
    NotSinglyConnected,

    #[error("enumeration of {count} points exceeds cap {cap}")]
    CapExceeded { count: u128, cap: u128 },
}
