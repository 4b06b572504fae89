//! Dense complex linear algebra: Hermitian eigendecomposition by cyclic
//! Jacobi, SVD through the Jordan-Wielandt augmentation, spectral norms,
//! unitary completion and principal-submatrix deletion.

pub mod completion;
pub mod eigen;
pub mod hermitian;
pub mod matrix;
pub mod spectrum;
pub mod svd;

pub use completion::orthonormal_completion;
pub use eigen::{eigenvalues, hermitian_eigen};
pub use hermitian::{HermitianMatrix, UnitaryMatrix};
pub use matrix::{DenseMatrix, C64};
pub use spectrum::{Block, Spectrum};
pub use svd::{jordan_wielandt, spectral_norm, svd, Svd};

/// Removes row and column `index` (zero-based) from `a`.
pub fn strike(a: &HermitianMatrix, index: usize) -> crate::Result<HermitianMatrix> {
    a.strike(index)
}
