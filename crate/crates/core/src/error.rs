use thiserror::Error;

use crate::instance::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(Violation),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("invalid packing: {0}")]
    InvalidPacking(String),

    #[error("{what} has size {size}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("work budget of {limit} operations exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("improving set does not match the packing: {0}")]
    StaleImprovement(String),
}

impl Error {
    /// True for errors caused by a resource cap or work budget rather than
    /// malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::BudgetExceeded { .. }
        )
    }
}
