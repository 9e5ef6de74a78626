use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Variants fall into three families: invalid input (the caller asked for
/// something the mathematics excludes), budget exhaustion (a search or
/// factorization ran out of its configured effort), and `Invariant`, which
/// signals a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("factorization of {value} exceeded the effort budget")]
    FactorizationTimeout { value: String },
    #[error("prime {p} is a place of bad reduction for this input")]
    BadReductionPrime { p: u64 },
    #[error("input {0} is a root of unity")]
    RootOfUnityInput(String),
    #[error("found {found} of {wanted} witnesses below the prime budget {limit}")]
    InsufficientWitnesses { found: usize, wanted: usize, limit: u64 },
    #[error("coordinate of {bits} bits exceeds the cap of {cap} bits")]
    CoordinateOverflow { bits: u64, cap: u64 },
    #[error("point {0} has a finite orbit")]
    PreperiodicPoint(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("curve has singular reduction at {p}")]
    SingularReduction { p: u64 },
    #[error("point is torsion")]
    TorsionPoint,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by an exhausted search or factoring budget.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::FactorizationTimeout { .. }
                | Error::InsufficientWitnesses { .. }
                | Error::CoordinateOverflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
