use thiserror::Error;

/// Errors raised by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("{what} did not converge (last error estimate {estimate:e})")]
    NonConvergence { what: &'static str, estimate: f64 },
    #[error("endpoint exponent {0} must exceed -1")]
    InvalidExponent(f64),
    #[error("decay rate {0} must be positive for an infinite endpoint")]
    InvalidDecay(f64),
    #[error("decay rate {0} too weak for vertical-line truncation")]
    DecayTooWeak(f64),
    #[error("gamma function pole at nonpositive integer {0}")]
    PoleAtNonpositiveInteger(f64),
    #[error("division by zero in rising factorial")]
    DivisionByZero,
    #[error("numerator argument {0} of gamma quotient is a pole")]
    NumeratorPole(String),
    #[error("sector violation: |arg z| = {arg:.6} but must be {rel} {bound:.6} ({context})")]
    SectorViolation {
        arg: f64,
        bound: f64,
        rel: &'static str,
        context: String,
    },
    #[error("parameter hits a pole: {0}")]
    PoleInParameter(String),
    #[error("argument {0} lies on the branch cut [1, inf)")]
    BranchViolation(String),
    #[error("pole at s = 1 (integer lambda)")]
    PoleAtOne,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("recursion depth {0} exceeded")]
    RecursionDepthExceeded(usize),
    #[error("kernel evaluated outside its support")]
    SupportViolation,
    #[error("integration contour passes through a pole at {0}")]
    ContourOnPole(String),
    #[error("empty abscissa window: {0}")]
    EmptyWindow(String),
    #[error("excluded parameter case: {0}")]
    ExcludedParameterCase(String),
    #[error("invalid verification plan: {0}")]
    PlanInvalid(String),
    #[error("not enough data points for a slope fit")]
    InsufficientData,
    #[error("all errors at the rounding floor; order not measurable")]
    DegenerateFit,
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
