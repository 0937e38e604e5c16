use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every module of the crate.
///
/// Variants split into two families: input/validation problems (the caller
/// asked for something outside a function's domain) and numerical failures
/// (the inputs were fine but an algorithm could not deliver the requested
/// accuracy). [`Error::is_numerical`] tells them apart.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument outside validated range: {0}")]
    Range(String),
    #[error("pole of the Gamma function at x = {0}")]
    Pole(f64),
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("indicial exponent problem: gamma = {0} is a non-positive integer")]
    Indicial(f64),
    #[error("series truncation error {estimate:e} exceeds tolerance {tolerance:e}")]
    Truncation { estimate: f64, tolerance: f64 },
    #[error("equation is singular at z = 0")]
    Singularity,
    #[error("recurrence resonance: R_{n} = 0, expansion breaks down")]
    Resonance { n: usize },
    #[error("polynomial branch alpha0 = 0 is not supported by the Hermite expansion")]
    PolynomialBranch,
    #[error("no real root on the requested branch: {0}")]
    ComplexBranch(String),
    #[error("degenerate reduction: {0}")]
    Degenerate(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("step size underflow at z = {at}")]
    StepUnderflow { at: f64 },
    #[error("bracketing failure: {0}")]
    Bracketing(String),
    #[error("closed form and shooting oracle disagree at level {level}: {closed} vs {oracle}")]
    OracleMismatch { level: usize, closed: f64, oracle: f64 },
    #[error("quadrature failure: {0}")]
    Quadrature(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures of an algorithm (non-convergence, precision loss,
    /// oracle mismatch), false for invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::PrecisionLoss(_)
                | Error::Truncation { .. }
                | Error::NonConvergence(_)
                | Error::StepUnderflow { .. }
                | Error::Bracketing(_)
                | Error::OracleMismatch { .. }
                | Error::Quadrature(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
