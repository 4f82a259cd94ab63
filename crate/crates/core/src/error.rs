use thiserror::Error;

use crate::cone::ValidationReport;
use crate::faces::GoodnessReport;
use crate::homotopy::ConsistencyCheck;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("minor order {k} out of range for a {rows}x{cols} matrix")]
    MinorOrder { k: usize, rows: usize, cols: usize },

    #[error("normal {index} has {found} coordinates, expected {expected}")]
    NormalLength {
        index: usize,
        found: usize,
        expected: usize,
    },

    #[error("invalid cone: {}", .0.summary())]
    InvalidCone(Box<ValidationReport>),

    #[error("cone is not good ({} violation(s)); refusing to compute invariants", .0.violations.len())]
    NotGoodCone(Box<GoodnessReport>),

    #[error("brute-force oracle supports at most {limit} normals, got {found}")]
    OracleTooLarge { limit: usize, found: usize },

    #[error("the zero face has no relative-interior witness")]
    ZeroFace,

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("consistency check {check} failed: {detail}")]
    ConsistencyFailure {
        check: ConsistencyCheck,
        detail: String,
    },
}
