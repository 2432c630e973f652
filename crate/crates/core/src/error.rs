use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group specification: {0}")]
    InvalidGroupSpec(String),

    #[error("cycle index evaluated to the non-integer {value}")]
    NonIntegralEvaluation { value: String },

    #[error("group order {order} exceeds the enumeration cap {cap}")]
    OrderCapExceeded { order: BigUint, cap: u64 },

    #[error("state space of {size} tuples exceeds the cap {cap}")]
    StateSpaceCapExceeded { size: BigUint, cap: u64 },

    #[error("matrix dimension {dim} exceeds the cap {cap}")]
    MatrixCapExceeded { dim: BigUint, cap: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(
        "rank is indeterminate: smallest accepted singular value {smallest_accepted:e}, \
         largest rejected {largest_rejected:e}, tolerance {tolerance:e}"
    )]
    IndeterminateRank {
        smallest_accepted: f64,
        largest_rejected: f64,
        tolerance: f64,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("could not generate a balanced dataset within {attempts} draws")]
    DatasetGenerationFailed { attempts: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
