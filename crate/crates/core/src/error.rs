use thiserror::Error;

use crate::io::matrix_market::MatrixMarketError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:.3e}, target {target:.3e})")]
    NoConvergence {
        sweeps: usize,
        off_diagonal: f64,
        target: f64,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (relative asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (||U*U - I||_F = {defect:.3e}, allowed {allowed:.3e})")]
    NotUnitary { defect: f64, allowed: f64 },

    #[error("columns are not orthonormal (||X*X - I||_F = {defect:.3e}, allowed {allowed:.3e})")]
    NotOrthonormal { defect: f64, allowed: f64 },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("empty spectrum")]
    EmptySpectrum,

    #[error(
        "shift {shift} lies within {distance:.3e} of the spectrum of H2; resolvent is singular"
    )]
    SingularResolvent { shift: f64, distance: f64 },

    #[error("degenerate partition: {0}")]
    DegeneratePartition(String),

    #[error("identity check failed: {what} differs by {difference:.3e} (allowed {allowed:.3e})")]
    IdentityCheck {
        what: &'static str,
        difference: f64,
        allowed: f64,
    },

    #[error(transparent)]
    MatrixMarket(#[from] MatrixMarketError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("report serialization: {0}")]
    Serialization(String),
}
