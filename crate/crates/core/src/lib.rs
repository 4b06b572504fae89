//! Eigenvalue and singular value perturbation bounds for block Hermitian
//! matrices whose off-diagonal coupling is small.
//!
//! For `A = [[H1, E*], [E, H2]]` the eigenvalues move away from those of
//! `H1 (+) H2` by at most
//!
//! ```text
//! 2 ||E||^2 / (eta_i + sqrt(eta_i^2 + 4 ||E||^2))
//! ```
//!
//! where `eta_i` is the distance from the `i`-th merged eigenvalue to the
//! spectrum of the other block. The bound never exceeds `||E||` and never
//! exceeds `||E||^2 / eta`, and it stays finite when the blocks share an
//! eigenvalue.
//!
//! ```
//! use specbound::bounds::{eigen_bound_report, BlockHermitian};
//! use specbound::linalg::{DenseMatrix, HermitianMatrix};
//!
//! let p = BlockHermitian::new(
//!     HermitianMatrix::from_real_diagonal(&[1.0]),
//!     HermitianMatrix::from_real_diagonal(&[0.0]),
//!     DenseMatrix::from_real(1, 1, &[0.1])?,
//! )?;
//! let report = eigen_bound_report(&p, true)?;
//! for row in &report.rows {
//!     assert!(row.true_diff.unwrap() <= row.main_i + 1e-15);
//! }
//! # Ok::<(), specbound::Error>(())
//! ```

pub mod bounds;
pub mod certifier;
pub mod eigensolvers;
mod error;
pub mod fuzz;
pub mod io;
pub mod linalg;
pub mod tolerance;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/gaps.md")]
    mod gaps {}
    #[doc = include_str!("../../../book/src/singular_values.md")]
    mod singular_values {}
    #[doc = include_str!("../../../book/src/certification.md")]
    mod certification {}
    #[doc = include_str!("../../../book/src/lanczos.md")]
    mod lanczos {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/reports.md")]
    mod reports {}
    #[doc = include_str!("../../../book/src/testing.md")]
    mod testing {}
}
