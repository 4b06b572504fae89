//! Lanczos with full reorthogonalization, used to produce realistic
//! approximate invariant subspaces for the certifier.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certifier::{certify, CertificationReport, SubspaceApproximation};
use crate::error::{Error, Result};
use crate::linalg::matrix::{inner, vector_norm};
use crate::linalg::{hermitian_eigen, DenseMatrix, HermitianMatrix, C64};
use crate::tolerance::LANCZOS_BREAKDOWN;

/// Output of a Lanczos run: `A Q = Q T + beta_next q_{k+1} e_k*`.
#[derive(Clone, Debug)]
pub struct LanczosState {
    /// `N x k`, orthonormal columns.
    pub basis: DenseMatrix,
    /// Diagonal of `T`.
    pub alpha: Vec<f64>,
    /// Subdiagonal of `T`, length `k - 1`.
    pub beta: Vec<f64>,
    /// Norm of the residual after the last step; zero after breakdown.
    pub beta_next: f64,
    pub seed: u64,
}

impl LanczosState {
    pub fn steps(&self) -> usize {
        self.alpha.len()
    }

    /// The tridiagonal `T = Q* A Q`.
    pub fn tridiagonal(&self) -> HermitianMatrix {
        let k = self.steps();
        let t = DenseMatrix::from_fn(k, k, |i, j| {
            let v = if i == j {
                self.alpha[i]
            } else if i + 1 == j {
                self.beta[i]
            } else if j + 1 == i {
                self.beta[j]
            } else {
                0.0
            };
            C64::new(v, 0.0)
        });
        HermitianMatrix::new(t).expect("square")
    }
}

/// Start vector with entries uniform in `[-1, 1)`, normalized.
pub fn start_vector(n: usize, seed: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<C64> = (0..n)
        .map(|_| C64::new(rng.random_range(-1.0..1.0), 0.0))
        .collect();
    let norm = vector_norm(&v);
    v.iter_mut().for_each(|z| *z /= norm);
    v
}

/// `k` steps of Lanczos from a seeded start vector, reorthogonalizing every
/// new vector twice against the whole basis. Stops early when
/// `beta_j < 1e-13 ||A||_F`, returning the shorter basis.
pub fn lanczos(a: &HermitianMatrix, k: usize, seed: u64) -> Result<LanczosState> {
    let n = a.dim();
    if k == 0 || k > n {
        return Err(Error::Shape(format!(
            "Lanczos needs 1 <= k <= N, got k = {k}, N = {n}"
        )));
    }
    let threshold = LANCZOS_BREAKDOWN * a.frobenius_norm();
    let mut q: Vec<Vec<C64>> = vec![start_vector(n, seed)];
    let mut alpha = Vec::with_capacity(k);
    let mut beta: Vec<f64> = Vec::with_capacity(k);
    let mut beta_next = 0.0;

    loop {
        let j = q.len() - 1;
        let qj = &q[j];
        let mut w: Vec<C64> = (0..n)
            .map(|r| (0..n).map(|c| a.get(r, c) * qj[c]).sum())
            .collect();
        let a_j = inner(qj, &w).re;
        alpha.push(a_j);
        for (wi, qi) in w.iter_mut().zip(qj) {
            *wi -= qi * a_j;
        }
        if j > 0 {
            let b = beta[j - 1];
            for (wi, qi) in w.iter_mut().zip(&q[j - 1]) {
                *wi -= qi * b;
            }
        }
        for _ in 0..2 {
            for basis_vec in &q {
                let proj = inner(basis_vec, &w);
                for (wi, qi) in w.iter_mut().zip(basis_vec) {
                    *wi -= proj * qi;
                }
            }
        }
        let b = vector_norm(&w);
        if alpha.len() == k {
            beta_next = b;
            break;
        }
        if b < threshold {
            break;
        }
        beta.push(b);
        w.iter_mut().for_each(|z| *z /= b);
        q.push(w);
    }

    let basis = DenseMatrix::from_fn(n, q.len(), |i, j| q[j][i]);
    Ok(LanczosState {
        basis,
        alpha,
        beta,
        beta_next,
        seed,
    })
}

/// Ritz pairs of a Lanczos run: values descending, `N`-vectors as columns,
/// and the residual estimates `beta_next |s_k|`.
#[derive(Clone, Debug)]
pub struct RitzPairs {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
    pub residual_estimates: Vec<f64>,
}

pub fn ritz_pairs(state: &LanczosState) -> Result<RitzPairs> {
    let (theta, s) = hermitian_eigen(&state.tridiagonal())?;
    let k = state.steps();
    let vectors = state.basis.matmul(s.as_matrix())?;
    let residual_estimates = (0..k)
        .map(|j| state.beta_next * s.as_matrix()[(k - 1, j)].norm())
        .collect();
    Ok(RitzPairs {
        values: theta.into_values(),
        vectors,
        residual_estimates,
    })
}

/// Positions (into the descending Ritz list) chosen for `m` pairs: all of
/// them when `m == k`, the better-converged extreme pair when `m == 1`, and
/// otherwise the `ceil(m/2)` largest and `floor(m/2)` smallest.
pub fn extreme_selection(pairs: &RitzPairs, m: usize) -> Vec<usize> {
    let k = pairs.values.len();
    if m >= k {
        return (0..k).collect();
    }
    if m == 1 {
        let last = k - 1;
        return vec![
            if pairs.residual_estimates[last] < pairs.residual_estimates[0] {
                last
            } else {
                0
            },
        ];
    }
    let high = m.div_ceil(2);
    let low = m / 2;
    (0..high).chain(k - low..k).collect()
}

/// Hands `m` Ritz pairs to the certifier.
pub fn ritz_subspace(
    a: &HermitianMatrix,
    state: &LanczosState,
    m: usize,
) -> Result<SubspaceApproximation> {
    if m == 0 || m > state.steps() {
        return Err(Error::Shape(format!(
            "cannot select {m} Ritz pairs from {} steps",
            state.steps()
        )));
    }
    let pairs = ritz_pairs(state)?;
    let picks = extreme_selection(&pairs, m);
    ritz_subspace_indices(a, &pairs, &picks)
}

/// Hands an explicit list of Ritz pairs to the certifier.
pub fn ritz_subspace_indices(
    a: &HermitianMatrix,
    pairs: &RitzPairs,
    picks: &[usize],
) -> Result<SubspaceApproximation> {
    if let Some(&bad) = picks.iter().find(|&&p| p >= pairs.values.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            dim: pairs.values.len(),
        });
    }
    SubspaceApproximation::new(a.clone(), pairs.vectors.select_columns(picks))
}

/// Demonstration matrix: diagonal `2, 3, ..., dim - 1` with the two end
/// entries pushed outward by `dim / 4`, plus `dim` seeded symmetric
/// off-diagonal entries of magnitude below `1e-2`.
pub fn demo_matrix(dim: usize, seed: u64) -> HermitianMatrix {
    let mut d: Vec<f64> = (1..=dim).map(|k| k as f64).collect();
    if dim >= 3 {
        let push = dim as f64 / 4.0;
        d[0] -= push;
        d[dim - 1] += push;
    }
    let mut a = DenseMatrix::diagonal(&d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    if dim >= 2 {
        for _ in 0..dim {
            let i = rng.random_range(0..dim);
            let j = rng.random_range(0..dim);
            if i != j {
                let x = 1e-2 * rng.random_range(-1.0..1.0);
                a[(i, j)] = C64::new(x, 0.0);
                a[(j, i)] = C64::new(x, 0.0);
            }
        }
    }
    HermitianMatrix::new(a).expect("square")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LanczosDemo {
    pub dim: usize,
    pub steps: usize,
    pub seed: u64,
    /// Zero-based Ritz positions handed to the certifier.
    pub selected: Vec<usize>,
    pub report: CertificationReport,
}

impl LanczosDemo {
    /// Median per-column bound over the selected pairs other than the first
    /// and last.
    pub fn median_interior_bound(&self) -> Option<f64> {
        let rows = &self.report.rows;
        if rows.len() < 3 {
            return None;
        }
        let mut interior: Vec<f64> = rows[1..rows.len() - 1]
            .iter()
            .map(|r| r.per_column_bound)
            .collect();
        interior.sort_by(f64::total_cmp);
        let mid = interior.len() / 2;
        Some(if interior.len() % 2 == 1 {
            interior[mid]
        } else {
            0.5 * (interior[mid - 1] + interior[mid])
        })
    }
}

/// Runs Lanczos on [`demo_matrix`] and certifies the selected Ritz values
/// with the oracle enabled. `select = None` keeps all `steps` pairs.
pub fn lanczos_demo(
    dim: usize,
    steps: usize,
    select: Option<usize>,
    seed: u64,
) -> Result<LanczosDemo> {
    let a = demo_matrix(dim, seed);
    let state = lanczos(&a, steps, seed)?;
    let pairs = ritz_pairs(&state)?;
    let selected = extreme_selection(&pairs, select.unwrap_or(state.steps()).min(state.steps()));
    let sub = ritz_subspace_indices(&a, &pairs, &selected)?;
    let report = certify(&a, &sub.basis, true)?;
    Ok(LanczosDemo {
        dim,
        steps: state.steps(),
        seed,
        selected,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigenvalues;

    #[test]
    fn full_run_reproduces_spectrum() {
        let a = HermitianMatrix::from_real_diagonal(&[1.0, 2.0]);
        let state = lanczos(&a, 2, 3).unwrap();
        assert_eq!(state.steps(), 2);
        let t = eigenvalues(&state.tridiagonal()).unwrap();
        assert!((t.values()[0] - 2.0).abs() < 1e-14);
        assert!((t.values()[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_step_is_rayleigh_quotient() {
        let a = demo_matrix(10, 4);
        let state = lanczos(&a, 1, 4).unwrap();
        let v = start_vector(10, 4);
        let av: Vec<C64> = (0..10)
            .map(|r| (0..10).map(|c| a.get(r, c) * v[c]).sum())
            .collect();
        assert!((state.alpha[0] - inner(&v, &av).re).abs() < 1e-13);
        assert!(state.beta.is_empty());
    }

    #[test]
    fn breakdown_returns_shorter_basis() {
        // Start vector lies in a 2-dimensional invariant subspace.
        let a = HermitianMatrix::from_real_diagonal(&[1.0, 1.0, 2.0, 2.0]);
        let state = lanczos(&a, 4, 0).unwrap();
        assert_eq!(state.steps(), 2);
        assert_eq!(state.beta.len(), 1);
    }

    #[test]
    fn selection_rules() {
        let pairs = RitzPairs {
            values: vec![5.0, 4.0, 3.0, 2.0, 1.0],
            vectors: DenseMatrix::zeros(5, 5),
            residual_estimates: vec![0.3, 1.0, 1.0, 1.0, 0.1],
        };
        assert_eq!(extreme_selection(&pairs, 5), vec![0, 1, 2, 3, 4]);
        assert_eq!(extreme_selection(&pairs, 1), vec![4]);
        assert_eq!(extreme_selection(&pairs, 2), vec![0, 4]);
        assert_eq!(extreme_selection(&pairs, 3), vec![0, 1, 4]);
        assert_eq!(extreme_selection(&pairs, 4), vec![0, 1, 3, 4]);
    }

    #[test]
    fn rejects_bad_step_counts() {
        let a = HermitianMatrix::from_real_diagonal(&[1.0, 2.0]);
        assert!(lanczos(&a, 0, 0).is_err());
        assert!(lanczos(&a, 3, 0).is_err());
    }
}
