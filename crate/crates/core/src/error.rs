use thiserror::Error;

use crate::tower::SplitEvent;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("undefined resultant: both inputs are zero")]
    UndefinedResultant,
    #[error("infinite intersection: common component")]
    InfiniteIntersection,
    #[error("infinite local intersection: common component through the point")]
    InfiniteLocalIntersection,
    #[error("non-reduced input: {0}")]
    NonReduced(String),
    #[error("multiple points at infinity; localization at (1:0:0) undefined")]
    MultiplePointsAtInfinity,
    #[error("degenerate pencil: f does not depend on x")]
    DegeneratePencil,
    #[error("non-isolated critical points: gcd(f_x, f_y) = {0}")]
    NonIsolatedCritical(String),
    #[error("improper parametrization: resultant is a power {power} of {base}")]
    ImproperParametrization { power: usize, base: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("resource cap exceeded in {op}: {detail}")]
    ResourceCap { op: String, detail: String },
    #[error("oracle cap exceeded: {0}")]
    OracleCap(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("theorem violation: {0}")]
    Violation(String),
}

impl Error {
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit status for this failure: 2 for rejected input, 3 for a
    /// violated identity or theorem, 4 for a resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) | Error::Violation(_) => 3,
            Error::ResourceCap { .. } | Error::OracleCap(_) => 4,
            _ => 2,
        }
    }
}

/// Control flow of a computation under dynamic evaluation: either a genuine
/// failure, or the discovery of a zero divisor that forces the current tower
/// to split before the computation can be replayed.
#[derive(Debug, Clone)]
pub enum Interrupt {
    Split(SplitEvent),
    Fail(Error),
}

impl From<Error> for Interrupt {
    fn from(e: Error) -> Self {
        Interrupt::Fail(e)
    }
}

pub type Dyn<T> = std::result::Result<T, Interrupt>;

pub type Result<T> = std::result::Result<T, Error>;

/// Unwraps a computation that runs over `Q` only, where splits cannot occur.
pub fn settled<T>(r: Dyn<T>) -> Result<T> {
    match r {
        Ok(v) => Ok(v),
        Err(Interrupt::Fail(e)) => Err(e),
        Err(Interrupt::Split(ev)) => Err(Error::internal(format!(
            "unexpected split at level {} outside a tower driver",
            ev.level
        ))),
    }
}
