use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Errors fall into three families, which the CLI maps to exit codes:
/// malformed input (1), mathematical degeneracy of otherwise valid input (2),
/// and internal contradictions with a proven bound or identity (3).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("grade exceeds ambient dimension")]
    GradeOverflow,

    #[error("not a foliation: coefficient matrix has rank {rank}, expected {expected}")]
    NotAFoliation { rank: usize, expected: usize },

    /// Indices are 0-based.
    #[error("web not in general position (failing subset {subset:?})")]
    NotGeneralPosition { subset: Vec<usize> },

    #[error("parameters must be distinct")]
    RepeatedParameter,

    #[error("web is not semi-extremal / degenerate: {0}")]
    NotSemiExtremal(String),

    #[error("below Castelnuovo threshold: {0}")]
    BelowCastelnuovoThreshold(String),

    #[error("not on a common RNC")]
    NotOnRnc,

    #[error("arrangement not in general position w.r.t. base plane: {0}")]
    NotTransverse(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("internal contradiction: {0}")]
    Contradiction(String),
}

impl Error {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::Invalid(_)
            | Error::GradeOverflow
            | Error::RepeatedParameter
            | Error::BelowCastelnuovoThreshold(_) => 1,
            Error::Contradiction(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
