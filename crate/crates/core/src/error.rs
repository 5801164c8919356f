use thiserror::Error;

use crate::terms::{ConstKind, Functor, Object, Theory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("functor {0} is not in the signature of {1}")]
    ForeignFunctor(Functor, Theory),

    #[error("composition mismatch: expected {expected}, found {found}")]
    CompositionMismatch { expected: Object, found: Object },

    #[error("constant `{0}` is not legal in {1}")]
    IllegalConstant(ConstKind, Theory),

    #[error("constant `{0}` has no definition in {1}")]
    NotExpandable(ConstKind, Theory),

    #[error("constant `{kind}` is malformed: {detail}")]
    MalformedConstant { kind: ConstKind, detail: String },

    #[error("relation arity mismatch: target {left} does not meet source {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("pair ({0}, {1}) out of range for relation {2}x{3}")]
    PairOutOfRange(usize, usize, usize, usize),

    #[error("malformed coordinated triple: {0}")]
    MalformedTriple(String),

    #[error("{0} object is not diversified")]
    NotDiversified(Side),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("normalization exceeded {0} rewrite steps")]
    NormalizationBudgetExceeded(usize),

    #[error("normalization is stuck: {0}")]
    NormalizationStuck(String),

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Source,
    Target,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Source => "source",
            Side::Target => "target",
        })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
