use thiserror::Error;

/// Broad classification of failures, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input data.
    Input,
    /// The input is well formed but the operation is undefined on it.
    Domain,
    /// A configured search budget or bound was exhausted.
    Resource,
    /// An internal invariant failed; indicates a bug or corrupt data.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coefficients, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("cycle is not effective")]
    NotEffective,
    #[error("support is empty")]
    EmptySupport,
    #[error("support does not induce a connected subgraph")]
    DisconnectedSupport,
    #[error("intersection form is not negative definite on the given support")]
    NotNegativeDefinite,
    #[error("{0}")]
    Domain(String),
    #[error("sequence terminates: the cycle meets the minimal model negatively")]
    SequenceTerminates,
    #[error("search budget of {budget} exceeded ({what})")]
    BudgetExceeded { budget: u64, what: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("arithmetic overflow")]
    Overflow,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DimensionMismatch { .. }
            | Error::Syntax { .. }
            | Error::InvalidArgument(_)
            | Error::InvalidGraph(_)
            | Error::NotEffective
            | Error::EmptySupport
            | Error::DisconnectedSupport => ErrorKind::Input,
            Error::NotNegativeDefinite | Error::Domain(_) | Error::SequenceTerminates => {
                ErrorKind::Domain
            }
            Error::BudgetExceeded { .. } | Error::Overflow => ErrorKind::Resource,
            Error::Invariant(_) => ErrorKind::Internal,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
