use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter {name} = {value} must be positive")]
    NonPositiveParameter { name: &'static str, value: String },

    #[error("parameter {name} = {value} must be nonnegative")]
    NegativeParameter { name: &'static str, value: String },

    #[error("shift {name} = {value} must be nonnegative")]
    NegativeShift { name: &'static str, value: String },

    #[error("coefficient sequence is identically zero")]
    DegenerateSequence,

    #[error("coefficient sequence has a negative term at index {index}")]
    NegativeTerm { index: usize },

    #[error("gamma argument {0} is a pole (nonpositive integer)")]
    PoleArgument(String),

    #[error("gamma arguments cannot be paired by integer shifts")]
    UnpairableArguments,

    #[error("cofactor is not rational for these shifts")]
    ExactnessUnavailable,

    #[error("denominator parameter {0} is a nonpositive integer")]
    PoleParameter(String),

    #[error("series diverges at x = {0}")]
    DivergentArgument(String),

    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),

    #[error("index {index} is out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("input must be sorted in decreasing order")]
    UnsortedInput,

    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("zero denominator in continued fraction at depth {0}")]
    ZeroDenominator(usize),

    #[error("periodic tail of the continued fraction is not real at depth {0}")]
    ComplexTail(usize),

    #[error("{0} does not apply to family {1}")]
    FamilyMismatch(String, String),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("hypothesis not satisfied: {0}")]
    HypothesisUnmet(String),

    #[error("failed to write output: {0}")]
    Output(String),
}

pub type Result<T> = std::result::Result<T, Error>;
