use thiserror::Error;

/// Errors surfaced by the analysis engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line coefficients must not all be zero")]
    ZeroLine,

    #[error("duplicate line at index {index}: same projective class as index {first}")]
    DuplicateLine { index: usize, first: usize },

    #[error("operation needs at least {need} lines, arrangement has {have}")]
    TooFewLines { need: usize, have: usize },

    #[error("arrangement is not essential: all lines pass through a common point")]
    NotEssential,

    #[error("line index {index} out of range for {count} lines")]
    LineIndex { index: usize, count: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("derivation does not annihilate the Jacobian ideal of the deleted arrangement")]
    NotInDeletedModule,

    #[error("jump-line analysis requires a semistable bundle")]
    NotSemistable,

    #[error("Poincare polynomial does not factor over the nonnegative integers")]
    PoincareDoesNotFactor,

    #[error("balanced-stability filter requires odd d and a = (d-1)/2")]
    UnbalancedLattice,

    #[error("no curve of the requested degree passes through the given points")]
    NoCurve,

    #[error("internal consistency violation: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
