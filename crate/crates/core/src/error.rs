use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library.
///
/// Variants fall in three classes that the CLI maps to distinct exit codes:
/// input problems ([`Error::is_validation`]), internal-consistency failures
/// ([`Error::is_internal`]) and everything else.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("sublattice is not saturated")]
    NotSaturated,
    #[error("lattice is not a sublattice of the given superlattice")]
    NotASublattice,
    #[error("the zero cone has no relative interior point to sample")]
    ZeroCone,
    #[error("cone is not strictly convex")]
    NotStrictlyConvex,
    #[error("cone is not a face of the monoid's cone")]
    NotAFace,
    #[error("fan is not complete")]
    NotComplete,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("no target cone contains the image of source cone {cone}")]
    NoTargetCone { cone: usize },
    #[error("generator {generator} of the monoid at cone {cone} is not mapped into the target monoid")]
    MonoidNotMapped { cone: usize, generator: String },
    #[error("cone {cone} is not maximal")]
    NotMaximalCone { cone: usize },
    #[error("cone index {index} out of range (fan has {len} cones)")]
    UnknownCone { index: usize, len: usize },
    #[error("span of the cone meets span(L) nontrivially; the multiplicity index is infinite")]
    InfiniteIndex,
    #[error("cone is not a relative-dimension-1 cone over the base cone")]
    NotAWall,
    #[error("{0} is not an element of the monoid")]
    NotInMonoid(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("internal consistency violated: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Errors caused by malformed or unsuitable input data.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::NotSaturated
                | Error::NotASublattice
                | Error::NotStrictlyConvex
                | Error::NotComplete
                | Error::InvalidFan(_)
                | Error::NoTargetCone { .. }
                | Error::MonoidNotMapped { .. }
                | Error::InfiniteIndex
                | Error::NotInMonoid(_)
        )
    }

    /// Errors signalling that a property guaranteed by the theory did not hold.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::VerificationFailed(_))
    }
}
