use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate continued-fraction term: partial numerator is zero")]
    DegenerateTerm,
    #[error("convergent {index} has a zero denominator (value is the point at infinity)")]
    DivergentConvergent { index: usize },
    #[error("intermediate denominator vanished during evaluation")]
    DivisionByZero,
    #[error("coefficient table exhausted: {requested} terms requested, {available} stored")]
    TableExhausted { requested: usize, available: usize },
    #[error("{requested} terms requested but the fraction only has {available}")]
    NotEnoughTerms { requested: usize, available: usize },

    #[error("all cycle coefficients are zero")]
    ZeroCycle,
    #[error("matrix does not have the shape of a cycle matrix")]
    NotACycleMatrix,
    #[error("cycle is imaginary (l^2 + n^2 - km < 0)")]
    ImaginaryCycle,
    #[error("cycle is not a real circle or line (l^2 + n^2 - km <= 0)")]
    NotARealCycle,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("degenerate horocycle (touch point at infinity or coincident touch points)")]
    DegenerateHorocycle,
    #[error("cycle is not a horocycle touching the real axis")]
    NotAHorocycle,
    #[error("value is not representable in the chosen number field: {0}")]
    NotRepresentable(&'static str),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {0} exceeds the supported maximum of 8 generators")]
    DimensionTooLarge(usize),
    #[error("zero vector has no inverse")]
    ZeroVector,
    #[error("expected a grade-1 element")]
    NotAVector,
    #[error("point hits the pole of the transformation")]
    PoleHit,
    #[error("invalid versor matrix: {0}")]
    InvalidVersorMatrix(String),
    #[error("cycle {index} is not a real sphere")]
    NotASphere { index: usize },
    #[error("section plane is undefined: consecutive touch points coincide")]
    DegenerateView,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
