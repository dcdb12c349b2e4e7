use num_bigint::BigInt;

/// Errors shared by every module in this crate.
///
/// Purely mathematical failures (a singular matrix, a degenerate form) are
/// separated from input problems so callers can map them to distinct exit
/// codes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular over the rationals")]
    SingularMatrix,

    #[error("not a valid Seifert matrix: {0}")]
    InvalidSeifertMatrix(String),

    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),

    #[error("invalid rational angle {k}/{p}: {reason}")]
    InvalidAngle { k: u64, p: u64, reason: String },

    #[error("form is degenerate at angle {k}/{p}: the {p}-th cyclotomic polynomial divides the Alexander polynomial")]
    DegenerateForm { k: u64, p: u64 },

    #[error("enumeration over F_{p} in dimension {dim} would visit {count} subspaces (limit {limit})")]
    EnumerationTooLarge {
        p: u64,
        dim: usize,
        count: BigInt,
        limit: u64,
    },

    #[error("linking form is not p-elementary: {0}")]
    NotPElementary(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("invalid satellite description: {0}")]
    InvalidSatellite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
