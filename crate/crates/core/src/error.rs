use thiserror::Error;

use crate::logic::WorldSet;
use crate::space::StateId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown atom `{atom}` at byte {offset}")]
    UnknownAtom { atom: String, offset: usize },

    #[error("invalid interpretation `{0}`")]
    InvalidInterpretation(String),

    #[error("invalid epistemic space: {0}")]
    InvalidSpace(String),

    #[error("no state with belief set {target:?}")]
    NoSuchBeliefState { target: WorldSet },

    /// Synthesis needed a target belief set that no state of the space carries.
    #[error("no state hosts the target {target:?} required at state {state} for input {input:?}")]
    UnhostedTarget {
        state: StateId,
        input: WorldSet,
        target: WorldSet,
    },

    #[error("{what}: {count} exceeds the configured limit {limit}")]
    ScaleExceeded {
        what: &'static str,
        count: u128,
        limit: u128,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid total preorder: {0}")]
    InvalidPreorder(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    /// The relation extracted at a state is not total or not transitive.
    #[error("extracted relation at state {state} is not a total preorder: {detail}")]
    NotAPreorder { state: StateId, detail: String },

    #[error("extracted assignment violates a constraint at state {state}: {detail}")]
    ConstraintViolation { state: StateId, detail: String },

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    /// Text-format error: line number (1-based), offending token and message.
    #[error("line {line}: {message} (at `{token}`)")]
    Format {
        line: usize,
        token: String,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn format(line: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            token: token.into(),
            message: message.into(),
        }
    }
}
