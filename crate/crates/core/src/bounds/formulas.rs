use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{spectral_norm, DenseMatrix};

/// `||E||`: every eigenvalue moves by at most the norm of the coupling block.
pub fn weyl_bound(e: &DenseMatrix) -> Result<f64> {
    spectral_norm(e)
}

/// `||E||^2 / eta`, or `None` when `eta == 0` and the bound is not
/// applicable.
pub fn quadratic_bound(norm_e: f64, eta: f64) -> Option<f64> {
    (eta > 0.0).then(|| norm_e * norm_e / eta)
}

/// Gap-aware bound `2 ||E||^2 / (gap + sqrt(gap^2 + 4 ||E||^2))`.
///
/// Never exceeds `norm_e`, equals it at `gap == 0`, and never exceeds
/// `norm_e^2 / gap` for `gap > 0`.
///
/// ```
/// use specbound::bounds::main_bound;
/// assert_eq!(main_bound(0.7, 0.0), 0.7);
/// assert!((main_bound(1.0, 3.0) - 2.0 / (3.0 + 13f64.sqrt())).abs() < 1e-15);
/// ```
pub fn main_bound(norm_e: f64, gap: f64) -> f64 {
    if norm_e == 0.0 {
        return 0.0;
    }
    // x * 2x / (g + hypot(g, 2x)): the factor is exactly 1 at g = 0.
    let twice = 2.0 * norm_e;
    norm_e * (twice / (gap + gap.hypot(twice)))
}

/// Closed-form eigenvalues of `[[alpha, eps], [conj eps, beta]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Exact2x2 {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// `lambda_plus - max(alpha, beta) = min(alpha, beta) - lambda_minus`.
    pub shift: f64,
}

/// Eigenvalues of the 2x2 Hermitian matrix with diagonal `alpha, beta` and
/// off-diagonal magnitude `|eps|`. The arguments are reordered so that
/// `alpha >= beta`.
pub fn exact_2x2(alpha: f64, beta: f64, eps: f64) -> Exact2x2 {
    let (hi, lo) = if alpha >= beta {
        (alpha, beta)
    } else {
        (beta, alpha)
    };
    let d = hi - lo;
    let eps2 = eps * eps;
    // lambda_+ - hi = (sqrt(d^2 + 4 eps^2) - d) / 2, rationalized.
    let shift = if eps2 == 0.0 {
        0.0
    } else {
        2.0 * eps2 / (d + (d * d + 4.0 * eps2).sqrt())
    };
    Exact2x2 {
        lambda_plus: hi + shift,
        lambda_minus: lo - shift,
        shift,
    }
}

/// One-sided bound for `B = [G E]` against `[G O]`:
/// `2 ||E||^2 / (2 sigma + sqrt(sigma^2 + 4 ||E||^2))`.
pub fn sv_degenerate_bound(sigma_tilde: f64, norm_e: f64) -> f64 {
    if norm_e == 0.0 {
        return 0.0;
    }
    2.0 * norm_e * norm_e / (2.0 * sigma_tilde + sigma_tilde.hypot(2.0 * norm_e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_bound(&DenseMatrix::zeros(2, 3)).unwrap(), 0.0);
        assert!(
            (weyl_bound(&DenseMatrix::from_real(1, 1, &[0.1]).unwrap()).unwrap() - 0.1).abs()
                < 1e-16
        );
        let d = DenseMatrix::from_real(2, 2, &[3.0, 0.0, 0.0, 4.0]).unwrap();
        assert!((weyl_bound(&d).unwrap() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn quadratic_examples() {
        assert!((quadratic_bound(0.1, 2.0).unwrap() - 0.005).abs() < 1e-17);
        assert_eq!(quadratic_bound(0.1, 0.0), None);
        assert!((quadratic_bound(1.0, 0.01).unwrap() - 100.0).abs() < 1e-12);
    }

    #[test]
    fn main_bound_examples() {
        assert_eq!(main_bound(0.7, 0.0), 0.7);
        assert_eq!(main_bound(0.0, 0.0), 0.0);
        assert_eq!(main_bound(0.0, 1.0), 0.0);
        let b = main_bound(0.1, 1.0);
        assert!((b - 0.02 / (1.0 + 1.04f64.sqrt())).abs() < 1e-17);
        assert!((b - 0.009_901_951_36).abs() < 1e-12);
        let c = main_bound(1.0, 3.0);
        assert!((c - 0.302_776).abs() < 1e-6);
        assert!(c <= f64::min(1.0, 1.0 / 3.0));
    }

    #[test]
    fn exact_2x2_examples() {
        let e = exact_2x2(1.0, 0.0, 0.1);
        assert!((e.lambda_plus - 1.009_901_95).abs() < 1e-8);
        assert!((e.lambda_minus + 0.009_901_95).abs() < 1e-8);
        assert!((e.shift - 0.009_901_95).abs() < 1e-8);

        assert_eq!(
            exact_2x2(2.0, -1.0, 0.0),
            Exact2x2 {
                lambda_plus: 2.0,
                lambda_minus: -1.0,
                shift: 0.0
            }
        );

        let z = exact_2x2(0.0, 0.0, -0.3);
        assert_eq!((z.lambda_plus, z.lambda_minus, z.shift), (0.3, -0.3, 0.3));
    }

    #[test]
    fn degenerate_examples() {
        assert_eq!(sv_degenerate_bound(0.0, 0.5), 0.5);
        assert_eq!(sv_degenerate_bound(3.0, 0.0), 0.0);
        let b = sv_degenerate_bound(1.0, 0.1);
        assert!((b - 0.02 / (2.0 + 1.04f64.sqrt())).abs() < 1e-17);
        assert!((b - 0.006_622_9).abs() < 1e-7);
    }
}
