//! Tolerances used by checked constructors, identity checks and the
//! validity harness. Relative tolerances are multiplied by the stated scale
//! at the call site.

/// Jacobi stops once the off-diagonal Frobenius mass drops below this
/// fraction of `||A||_F`.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;

/// Sweep cap for cyclic Jacobi.
pub const JACOBI_MAX_SWEEPS: usize = 30;

/// Per-dimension allowance for `||U*U - I||_F` in the unitary constructor.
pub const UNITARY_PER_DIM: f64 = 1e-12;

/// Per-column allowance for `||X*X - I||_F` on input bases.
pub const ORTHONORMAL_PER_COL: f64 = 1e-10;

/// Relative asymmetry `||A - A*||_F / ||A||_F` rejected by strict Hermitian
/// construction.
pub const STRICT_ASYMMETRY: f64 = 1e-8;

/// Gaps below this multiple of `||A||` make the quadratic bound inapplicable.
pub const GAP_FLOOR: f64 = 1e-14;

/// Minimum distance (relative to `||A||`) between a shift and the spectrum
/// of `H2` before the resolvent is considered singular.
pub const RESOLVENT_SEPARATION: f64 = 1e-10;

/// Bound validity slack: `tol = BOUND_SLACK * (1 + ||A||)`.
pub const BOUND_SLACK: f64 = 1e-9;

/// Slack for the `||E|| = ||R||` and column-norm identities:
/// `tol = IDENTITY_SLACK * (1 + ||A||)`.
pub const IDENTITY_SLACK: f64 = 1e-10;

/// Relative breakdown threshold for Lanczos: stop when `beta < LANCZOS_BREAKDOWN * ||A||_F`.
pub const LANCZOS_BREAKDOWN: f64 = 1e-13;

/// Relative tolerance used when comparing bound families against each other.
pub const DOMINANCE_REL: f64 = 1e-12;

/// `tol = BOUND_SLACK * (1 + norm)`.
pub fn bound_tolerance(norm: f64) -> f64 {
    BOUND_SLACK * (1.0 + norm)
}

/// `tol = IDENTITY_SLACK * (1 + norm)`.
pub fn identity_tolerance(norm: f64) -> f64 {
    IDENTITY_SLACK * (1.0 + norm)
}
