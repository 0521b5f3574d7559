use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cubic solver failed to reach residual tolerance (residual {residual:e})")]
    SolverFailure { residual: f64 },
    #[error("negative frequency squared {0:e}: onset is steady")]
    NegativeFrequencySquared(f64),
    #[error("invalid regime: {0}")]
    InvalidRegime(String),
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),
    #[error("coefficient {0} vanishes to working precision")]
    ZeroCoefficient(&'static str),
    #[error("pairing <psi, psi*> = {0:e} is not positive")]
    NonpositivePairing(f64),
    #[error("mode {0} has no {1} branch")]
    BranchMismatch(String, &'static str),
    #[error("unsupported critical set: {0}")]
    UnsupportedCriticalSet(String),
    #[error("trajectory diverged at t = {t}")]
    Diverged { t: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
