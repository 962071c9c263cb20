use std::fmt;

use crate::scheme::Tag;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a mention set cannot be expressed in the two-layer representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IncompatibleReason {
    /// Mentions share only part of a component, or the product of the
    /// components does not reproduce the mentions.
    PartialOverlap,
    /// A mention is made of three or more components.
    ThreeWaySplit,
    /// The span of a set overlaps another set or a continuous mention.
    SpanConflict,
}

impl IncompatibleReason {
    pub const ALL: [IncompatibleReason; 3] = [
        IncompatibleReason::PartialOverlap,
        IncompatibleReason::ThreeWaySplit,
        IncompatibleReason::SpanConflict,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IncompatibleReason::PartialOverlap => "partial-overlap",
            IncompatibleReason::ThreeWaySplit => "three-way-split",
            IncompatibleReason::SpanConflict => "span-conflict",
        }
    }
}

impl fmt::Display for IncompatibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("mention set cannot be represented: {0}")]
    Incompatible(IncompatibleReason),

    #[error("encoding produced an ill-formed tag sequence: {0}")]
    EncodingViolation(String),

    #[error("tag sequence is not well-formed: {0}")]
    IllFormed(String),

    #[error("no accepting path of length {0}")]
    EmptyLanguage(usize),

    #[error("invalid mention: {0}")]
    InvalidMention(String),

    #[error("invalid annotation: {0}")]
    InvalidAnnotation(String),

    #[error("unknown tag {0:?}")]
    UnknownTag(String),

    #[error("weight matrix has a non-finite entry at ({row}, {tag})")]
    NonFiniteWeight { row: usize, tag: Tag },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("automaton precondition violated: {0}")]
    Automaton(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("length mismatch: {gold} gold vs {predicted} predicted")]
    LengthMismatch { gold: usize, predicted: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
