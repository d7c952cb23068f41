use thiserror::Error;

/// Errors raised by the exact and numeric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside an operation's domain (zero polynomial, mismatched
    /// variables, nonpositive model parameter, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Exact division left a nonzero remainder.
    #[error("divisibility error: {0}")]
    NotDivisible(String),

    /// An interval claimed to isolate a root does not.
    #[error("certification error: {0}")]
    Certification(String),

    /// A probe sits on a zero of the border polynomial.
    #[error("degenerate probe: {0}")]
    DegenerateProbe(String),

    /// The cycle polynomial has a repeated real root, or shares a real root
    /// with a lower-period cycle polynomial.
    #[error("nonhyperbolic parameter: {0}")]
    Nonhyperbolic(String),

    /// A refinement loop ran out of budget before it could decide.
    #[error("refinement budget exhausted: {0}")]
    Budget(String),

    /// Regenerated condition polynomials disagree with their transcription.
    #[error("self-test failure: {0}")]
    SelfTest(String),

    /// Not enough trajectory samples for period detection.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The question cannot be settled at these parameters (boundary case).
    #[error("undetermined: {0}")]
    Undetermined(String),

    /// Parse failure for rationals or polynomial expressions.
    #[error("parse error: {0}")]
    Parse(String),

    /// Something that should be impossible given correct construction.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
