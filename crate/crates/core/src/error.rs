//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong when building states, counting walks, or
/// parsing siteswap text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A state slot holds more balls than the hand capacity allows.
    #[error("slot {index} holds {count} balls but the hand capacity is {capacity}")]
    SlotOverCapacity {
        /// 1-based slot index.
        index: usize,
        count: u32,
        capacity: u32,
    },

    /// Hand capacity must be at least 1.
    #[error("hand capacity must be positive")]
    ZeroCapacity,

    /// Two inputs disagree on ball count or hand capacity.
    #[error("mismatched parameters: {0}")]
    ParameterMismatch(String),

    /// A state is too tall for the requested height cap.
    #[error("state height {height} exceeds the height cap {cap}")]
    HeightExceedsCap { height: usize, cap: usize },

    /// A state is not part of the diagram it was used with.
    #[error("state {state} does not belong to this diagram")]
    UnknownState { state: String },

    /// Characteristic-polynomial input must be monic.
    #[error("polynomial is not monic")]
    NonMonicPolynomial,

    /// The primitive transform requires a generating function with a(0) = 0.
    #[error("generating function has a nonzero constant term")]
    NonzeroConstantTerm,

    /// An argument violated a documented precondition.
    #[error("{0}")]
    InvalidArgument(String),

    /// Text input could not be parsed.
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// A siteswap block lists more throws than the hand capacity.
    #[error("block {block} lists {found} throws but the hand capacity is {capacity}")]
    BlockTooWide {
        /// 1-based block index.
        block: usize,
        found: usize,
        capacity: u32,
    },

    /// A simulated throw would land in a slot that is already full.
    #[error("step {step}: a throw of height {height} lands in a full slot")]
    ThrowOverCapacity { step: usize, height: u32 },

    /// The bottom slot does not hold as many balls as the throw set rethrows.
    #[error(
        "step {step}: {balls} balls must be rethrown but the throw set has {throws} nonzero throws"
    )]
    ThrowCountMismatch {
        step: usize,
        balls: u32,
        throws: usize,
    },

    /// Walks must contain at least one step.
    #[error("walk is empty")]
    EmptyWalk,

    /// A walk step is not an edge of the state diagram.
    #[error("walk step {step} is not a valid transition")]
    InvalidWalk { step: usize },

    /// A recurrence-produced term disagrees with the brute-force oracle.
    #[error(
        "term {index}: recurrence gives {from_recurrence} but the oracle counts {from_oracle}"
    )]
    SpotCheckMismatch {
        index: usize,
        from_recurrence: String,
        from_oracle: String,
    },
}
