use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Parameters or inputs violate a documented precondition.
    InvalidInput(&'static str),
    /// An eigensolver did not reach its residual tolerance.
    ConvergenceFailure { residual: f64, restarts: usize },
    /// The sector scan hit its excitation cap while the energy was still decreasing.
    ScanExhausted { l_max: usize },
    /// Fock truncation reached its cap without meeting the convergence tests.
    TruncationExhausted {
        ntr: usize,
        delta_energy: f64,
        boundary_weight: f64,
    },
    /// States belong to different bases (atom number or model family).
    BasisMismatch,
    EmptySweep,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(what) => write!(f, "invalid input: {what}"),
            Error::ConvergenceFailure { residual, restarts } => write!(
                f,
                "eigensolver failed to converge (residual {residual:e} after {restarts} restarts)"
            ),
            Error::ScanExhausted { l_max } => {
                write!(f, "sector scan still improving at excitation cap L = {l_max}")
            }
            Error::TruncationExhausted {
                ntr,
                delta_energy,
                boundary_weight,
            } => write!(
                f,
                "Fock truncation not converged at ntr = {ntr} (dE = {delta_energy:e}, boundary weight = {boundary_weight:e})"
            ),
            Error::BasisMismatch => f.write_str("states live in incompatible bases"),
            Error::EmptySweep => f.write_str("sweep contains no records"),
        }
    }
}

impl core::error::Error for Error {}
