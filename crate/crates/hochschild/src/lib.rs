//! Hochschild cohomology of truncated quiver algebras `kQ/k^nQ`.
//!
//! Two engines compute the dimension sequence `dim H^m(A)`:
//!
//! * a direct engine that materializes the cochain complex of parallel-path
//!   spaces and takes exact ranks over Q or F_p, and
//! * a formula engine evaluating the closed-form combinatorics (basic cycles
//!   via the `c_{n,e,i}` table, everything else via extreme-class counts).
//!
//! A bar-complex oracle and a finiteness certifier cross-check both.

pub mod bar;
pub mod cli;
pub mod complex;
pub mod corpus;
pub mod direct;
pub mod extremes;
pub mod finiteness;
pub mod formula;
pub mod linalg;
pub mod matrix;
pub mod quiver;
pub mod report;
pub mod verify;

pub use matrix::SparseIntMatrix;
pub use quiver::{Path, Quiver, QuiverClassification};
pub use report::CohomologyReport;

/// Errors surfaced by parsing, construction and the engines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("characteristic {0} is not 0 or a prime")]
    BadCharacteristic(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded(_) => 2,
            _ => 1,
        }
    }
}
