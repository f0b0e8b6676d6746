use thiserror::Error;

/// Errors produced by graph construction, the solvers and the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Domain(String),

    /// A requirement cannot be met; `skill` names the offending skill.
    #[error("infeasible task: {message}")]
    Infeasible { skill: String, message: String },

    #[error("heuristic failure: {0}")]
    HeuristicFailure(String),

    /// An exhaustive oracle refused to run because of its size guard.
    #[error("refused: {0}")]
    Refused(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    pub(crate) fn infeasible(skill: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Infeasible {
            skill: skill.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
