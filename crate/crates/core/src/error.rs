use thiserror::Error;

/// Errors raised by the evaluators and verifiers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("divisor does not divide the dividend exactly")]
    NonExactDivision,

    #[error("series inversion needs constant term +1 or -1 and no negative exponents")]
    NonUnitConstantTerm,

    #[error("expected a polynomial with nonnegative integer exponents")]
    NonPolynomial,

    #[error("truncation degree must be nonnegative, got {0}")]
    NegativeTruncation(String),

    #[error("enumeration domain is unbounded; require nonnegativity or supply a bound")]
    UnboundedDomain,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unbalanced parameters: a + b = {lhs} but c + d + f = {rhs}")]
    UnbalancedParameters { lhs: i64, rhs: i64 },

    #[error("sufficiency condition for the transform fails")]
    SufficiencyViolated,

    #[error("no closed form known for {0}")]
    UnknownClosedForm(String),

    #[error("coefficients did not stabilize below M = {0}")]
    StabilizationFailure(i64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParams(msg.into()))
}
