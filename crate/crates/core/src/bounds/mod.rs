//! Eigenvalue and singular value perturbation bounds for block partitions.
//!
//! Given `A = [[H1, E*], [E, H2]]` and its decoupled counterpart
//! `H1 (+) H2`, every eigenvalue moves by at most
//! `2 ||E||^2 / (eta_i + sqrt(eta_i^2 + 4 ||E||^2))`, where `eta_i` is the
//! distance from the unperturbed eigenvalue to the spectrum of the opposite
//! block. The classical bounds `||E||` and `||E||^2 / eta` are provided for
//! comparison.

pub mod block;
pub mod formulas;
pub mod gaps;
pub mod report;
pub mod singular;

pub use block::{shifted_schur_complement, BlockHermitian};
pub use formulas::{
    exact_2x2, main_bound, quadratic_bound, sv_degenerate_bound, weyl_bound, Exact2x2,
};
pub use gaps::{merge_spectra, per_index_gaps, spectral_gap, GapProfile};
pub use report::{eigen_bound_report, BoundReport, BoundRow};
pub use singular::{
    sv_bound_report, sv_degenerate_report, DegenerateRow, SingularBoundReport, SingularRow,
};
