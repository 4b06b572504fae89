//! Seeded random instances.
//!
//! Every generator draws from ChaCha8 (`rand_chacha`), a counter-based
//! stream cipher generator whose output is fixed across platforms. Trial
//! `t` of a run with seed `s` uses stream `t` of the generator keyed by `s`,
//! so any single trial can be replayed without the ones before it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bounds::BlockHermitian;
use crate::error::{Error, Result};
use crate::linalg::matrix::{inner, vector_norm};
use crate::linalg::{hermitian_eigen, spectral_norm, DenseMatrix, HermitianMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ensemble {
    /// Independent Gaussian Hermitian blocks, `H1` shifted up by
    /// `gap_target / 2` and `H2` down by the same amount.
    GaussianHermitian,
    /// `spec(H1)` in `[gap, gap + 1]` with its minimum at `gap`, `spec(H2)`
    /// in `[-1, 0]` with its maximum at `0`, so the gap is `gap_target`.
    ClusteredSpectrum,
    /// Both blocks carry the same decoupled eigenvalue, so `eta = 0`.
    SharedEigenvalue,
}

impl Ensemble {
    pub const ALL: [Ensemble; 3] = [
        Ensemble::GaussianHermitian,
        Ensemble::ClusteredSpectrum,
        Ensemble::SharedEigenvalue,
    ];
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub m: usize,
    pub n: usize,
    pub gap_target: f64,
    pub coupling_scale: f64,
    pub seed: u64,
    pub ensemble: Ensemble,
}

/// Generator for trial `trial` of a run keyed by `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Entry with independent real and imaginary parts of variance `1/2`.
pub fn complex_normal(rng: &mut impl Rng) -> C64 {
    C64::new(normal(rng), normal(rng)) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// `(G + G*) / 2` for a complex Gaussian `G`.
pub fn gaussian_hermitian(n: usize, rng: &mut impl Rng) -> HermitianMatrix {
    HermitianMatrix::new(gaussian_matrix(n, n, rng)).expect("square")
}

/// Two-pass modified Gram-Schmidt on the columns of `m`. Columns that
/// collapse are an error; Gaussian input makes that a probability-zero
/// event.
pub fn orthonormalize_columns(m: &DenseMatrix) -> Result<DenseMatrix> {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let mut v = m.column(j);
        let start = vector_norm(&v);
        for _ in 0..2 {
            for q in &cols {
                let p = inner(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= p * qi;
                }
            }
        }
        let norm = vector_norm(&v);
        if norm.is_nan() || norm <= 1e-8 * start {
            return Err(Error::NotOrthonormal {
                defect: 1.0,
                allowed: 0.0,
            });
        }
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    Ok(DenseMatrix::from_fn(m.rows(), m.cols(), |i, j| cols[j][i]))
}

pub fn random_unitary(n: usize, rng: &mut impl Rng) -> DenseMatrix {
    orthonormalize_columns(&gaussian_matrix(n, n, rng)).expect("Gaussian matrix has full rank")
}

/// `U diag(values) U*` for a random unitary `U`.
pub fn with_spectrum(values: &[f64], rng: &mut impl Rng) -> HermitianMatrix {
    let u = random_unitary(values.len(), rng);
    HermitianMatrix::from_real_diagonal(values)
        .congruence(&u.adjoint())
        .expect("conformal")
}

/// Places `mu` on a decoupled coordinate of an otherwise random Hermitian
/// matrix. The coordinate is chosen at random and the off-diagonal entries
/// of every other row pick up random unit phases, neither of which touches
/// the exact value `mu`.
fn with_decoupled_value(mu: f64, n: usize, rng: &mut impl Rng) -> HermitianMatrix {
    let rest = gaussian_hermitian(n - 1, rng);
    let slot = rng.random_range(0..n);
    let phases: Vec<C64> = (0..n)
        .map(|_| C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    let map = |i: usize| if i < slot { i } else { i - 1 };
    let a = DenseMatrix::from_fn(n, n, |i, j| {
        if i == slot || j == slot {
            if i == j {
                C64::new(mu, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        } else {
            phases[i] * rest.get(map(i), map(j)) * phases[j].conj()
        }
    });
    HermitianMatrix::new(a).expect("square")
}

/// Gaussian `rows x cols` matrix rescaled to spectral norm `scale`.
pub fn coupling(rows: usize, cols: usize, scale: f64, rng: &mut impl Rng) -> DenseMatrix {
    let g = gaussian_matrix(rows, cols, rng);
    if scale == 0.0 {
        return DenseMatrix::zeros(rows, cols);
    }
    let norm = spectral_norm(&g).expect("small dense matrix");
    if norm == 0.0 {
        return g;
    }
    g.scale(scale / norm)
}

fn uniform_pinned(count: usize, lo: f64, hi: f64, pin_low: bool, rng: &mut impl Rng) -> Vec<f64> {
    let mut v: Vec<f64> = (0..count).map(|_| rng.random_range(lo..=hi)).collect();
    if pin_low {
        v[0] = lo;
    } else {
        v[0] = hi;
    }
    v
}

/// Builds a block instance from `spec`. Deterministic in `spec.seed`.
pub fn generate(spec: &GeneratorSpec) -> Result<BlockHermitian> {
    generate_with(spec, &mut ChaCha8Rng::seed_from_u64(spec.seed))
}

/// Same as [`generate`] but drawing from a caller-supplied generator.
pub fn generate_with(spec: &GeneratorSpec, rng: &mut impl Rng) -> Result<BlockHermitian> {
    let (m, n) = (spec.m, spec.n);
    if m == 0 || n == 0 {
        return Err(Error::DegeneratePartition(format!(
            "generator needs m, n >= 1 (m = {m}, n = {n})"
        )));
    }
    let (h1, h2) = match spec.ensemble {
        Ensemble::GaussianHermitian => (
            gaussian_hermitian(m, rng).shifted(-spec.gap_target / 2.0),
            gaussian_hermitian(n, rng).shifted(spec.gap_target / 2.0),
        ),
        Ensemble::ClusteredSpectrum => {
            let g = spec.gap_target;
            let s1 = uniform_pinned(m, g, g + 1.0, true, rng);
            let s2 = uniform_pinned(n, -1.0, 0.0, false, rng);
            (with_spectrum(&s1, rng), with_spectrum(&s2, rng))
        }
        Ensemble::SharedEigenvalue => {
            let mu = normal(rng);
            (
                with_decoupled_value(mu, m, rng),
                with_decoupled_value(mu, n, rng),
            )
        }
    };
    let e = coupling(n, m, spec.coupling_scale, rng);
    BlockHermitian::new(h1, h2, e)
}

/// `(G1, E1, E2, G2)` with Gaussian blocks. `E1` has spectral norm
/// `coupling_scale` and `E2` a random fraction of it.
#[derive(Clone, Debug)]
pub struct RectangularInstance {
    pub g1: DenseMatrix,
    pub e1: DenseMatrix,
    pub e2: DenseMatrix,
    pub g2: DenseMatrix,
}

/// `G1` is `m x k`, `G2` is `n x l`. `G2` is scaled by a random factor in
/// `[0, 2)` so that both interleaved and separated singular values occur.
pub fn rectangular_instance(
    [m, n, k, l]: [usize; 4],
    coupling_scale: f64,
    rng: &mut impl Rng,
) -> RectangularInstance {
    let g1 = gaussian_matrix(m, k, rng);
    let factor = rng.random_range(0.0..2.0);
    let g2 = gaussian_matrix(n, l, rng).scale(factor);
    let e1 = coupling(m, l, coupling_scale, rng);
    let e2 = coupling(n, k, coupling_scale * rng.random_range(0.0..=1.0), rng);
    RectangularInstance { g1, e1, e2, g2 }
}

/// `(G, E)` for the one-sided bound: `G` is `p x q1`, `E` is `p x q2`.
pub fn one_sided_instance(
    p: usize,
    q1: usize,
    q2: usize,
    coupling_scale: f64,
    rng: &mut impl Rng,
) -> (DenseMatrix, DenseMatrix) {
    let g = gaussian_matrix(p, q1, rng);
    let e = coupling(p, q2, coupling_scale, rng);
    (g, e)
}

/// How the test subspace is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceKind {
    /// Uniformly random orthonormal columns.
    Random,
    /// Exact eigenvectors plus noise of size `noise`, reorthonormalized.
    Perturbed,
}

/// A random Hermitian `A` of size `dim` and an orthonormal `X1` with `m`
/// columns.
pub fn subspace_instance(
    dim: usize,
    m: usize,
    kind: SubspaceKind,
    noise: f64,
    rng: &mut impl Rng,
) -> Result<(HermitianMatrix, DenseMatrix)> {
    if m == 0 || m > dim {
        return Err(Error::Shape(format!(
            "need 1 <= m <= N, got m = {m}, N = {dim}"
        )));
    }
    let a = gaussian_hermitian(dim, rng);
    let x1 = match kind {
        SubspaceKind::Random => orthonormalize_columns(&gaussian_matrix(dim, m, rng))?,
        SubspaceKind::Perturbed => {
            let (_, v) = hermitian_eigen(&a)?;
            let mut picks: Vec<usize> = (0..dim).collect();
            for i in 0..m {
                let j = rng.random_range(i..dim);
                picks.swap(i, j);
            }
            let x = v.as_matrix().select_columns(&picks[..m]);
            let x = x.add(&gaussian_matrix(dim, m, rng).scale(noise))?;
            orthonormalize_columns(&x)?
        }
    };
    Ok((a, x1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{per_index_gaps, spectral_gap};
    use crate::linalg::eigenvalues;

    fn spec(ensemble: Ensemble, seed: u64) -> GeneratorSpec {
        GeneratorSpec {
            m: 3,
            n: 4,
            gap_target: 2.0,
            coupling_scale: 0.5,
            seed,
            ensemble,
        }
    }

    #[test]
    fn deterministic_per_seed() {
        for e in Ensemble::ALL {
            assert_eq!(
                generate(&spec(e, 7)).unwrap(),
                generate(&spec(e, 7)).unwrap()
            );
            assert_ne!(
                generate(&spec(e, 7)).unwrap(),
                generate(&spec(e, 8)).unwrap()
            );
        }
    }

    #[test]
    fn coupling_is_rescaled_exactly() {
        let p = generate(&spec(Ensemble::GaussianHermitian, 1)).unwrap();
        assert!((spectral_norm(p.e()).unwrap() - 0.5).abs() < 1e-12);
        let mut zero = spec(Ensemble::GaussianHermitian, 1);
        zero.coupling_scale = 0.0;
        assert_eq!(generate(&zero).unwrap().e().max_abs(), 0.0);
    }

    #[test]
    fn clustered_gap_near_target() {
        let p = generate(&spec(Ensemble::ClusteredSpectrum, 99)).unwrap();
        let g = spectral_gap(&eigenvalues(p.h1()).unwrap(), &eigenvalues(p.h2()).unwrap()).unwrap();
        assert!((1.8..=2.2).contains(&g), "gap {g}");
    }

    #[test]
    fn shared_eigenvalue_has_zero_eta() {
        for seed in 0..20 {
            let p = generate(&spec(Ensemble::SharedEigenvalue, seed)).unwrap();
            let gaps = per_index_gaps(&eigenvalues(p.h1()).unwrap(), &eigenvalues(p.h2()).unwrap());
            assert_eq!(gaps.eta, 0.0, "seed {seed}");
        }
    }

    #[test]
    fn subspaces_are_orthonormal() {
        let mut rng = trial_rng(3, 0);
        for kind in [SubspaceKind::Random, SubspaceKind::Perturbed] {
            let (a, x) = subspace_instance(8, 3, kind, 1e-3, &mut rng).unwrap();
            assert_eq!(a.dim(), 8);
            assert!(x.orthonormality_defect() < 1e-13);
        }
    }
}
