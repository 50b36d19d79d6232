use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// An exhaustive routine refused to run because the instance exceeds its budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("group axiom violated: {0}")]
    GroupAxiom(String),

    #[error("generating set is not symmetric: inverse of element {element} is missing")]
    NotSymmetric { element: usize },

    #[error("set does not generate the group: it generates a subgroup of size {subgroup_size} (group order {order})")]
    NotGenerating { subgroup_size: usize, order: usize },

    #[error("invalid vertex: {0}")]
    InvalidVertex(String),

    #[error("X and Z checks do not commute ({violations} violating pairs)")]
    Commutation { violations: usize },

    #[error("vector is not a codeword of the local dual tensor code")]
    NotACodeword,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code for the command-line front end: 3 for budget refusals,
    /// 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget(_) => 3,
            _ => 2,
        }
    }
}
