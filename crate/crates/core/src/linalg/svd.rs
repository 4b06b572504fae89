//! Singular values through the Hermitian augmentation `[[O, B], [B*, O]]`.
//!
//! For `B` of size `p x q` with `r = min(p, q)`, the augmentation has
//! eigenvalues `+-sigma_1, ..., +-sigma_r` and `p + q - 2r` further zeros. An
//! eigenvector for `+sigma` has the form `(u; v) / sqrt(2)` with
//! `B v = sigma u`, so both singular vectors are read off the top `r`
//! eigenvectors.

use crate::error::Result;
use crate::linalg::completion::orthonormal_completion;
use crate::linalg::eigen::{eigenvalues, hermitian_eigen};
use crate::linalg::hermitian::HermitianMatrix;
use crate::linalg::matrix::{vector_norm, DenseMatrix, C64};
use crate::linalg::spectrum::Spectrum;

/// Singular values below this fraction of `sigma_1` get their vectors from
/// an orthonormal completion instead of the augmentation.
const NULL_DIRECTION: f64 = 1e-12;

/// Thin singular value decomposition `B = U diag(sigma_1..sigma_r) V*`.
#[derive(Clone, Debug)]
pub struct Svd {
    /// `max(p, q)` values, descending, zero-padded past `min(p, q)`.
    pub values: Spectrum,
    /// `p x r`, orthonormal columns.
    pub u: DenseMatrix,
    /// `q x r`, orthonormal columns.
    pub v: DenseMatrix,
    /// Largest `|lambda|` among the `p + q - 2r` augmentation eigenvalues
    /// that carry no singular value. Zero in exact arithmetic.
    pub null_residual: f64,
}

impl Svd {
    pub fn rank_count(&self) -> usize {
        self.u.cols()
    }
}

/// `[[O, B], [B*, O]]` of size `(p + q) x (p + q)`.
pub fn jordan_wielandt(b: &DenseMatrix) -> HermitianMatrix {
    let (p, q) = b.shape();
    let m = DenseMatrix::from_fn(p + q, p + q, |i, j| match (i < p, j < p) {
        (true, false) => b[(i, j - p)],
        (false, true) => b[(j, i - p)].conj(),
        _ => C64::new(0.0, 0.0),
    });
    HermitianMatrix::new(m).expect("square by construction")
}

pub fn svd(b: &DenseMatrix) -> Result<Svd> {
    let (p, q) = b.shape();
    let r = p.min(q);
    let padded = p.max(q);
    if r == 0 {
        return Ok(Svd {
            values: Spectrum::from_unsorted(vec![0.0; padded]),
            u: DenseMatrix::zeros(p, 0),
            v: DenseMatrix::zeros(q, 0),
            null_residual: 0.0,
        });
    }

    let (spec, vecs) = hermitian_eigen(&jordan_wielandt(b))?;
    let eig = spec.values();
    let vecs = vecs.as_matrix();

    let mut sigma: Vec<f64> = eig[..r].iter().map(|&x| x.max(0.0)).collect();
    let sigma_max = sigma[0];
    let null_residual = eig[r..p + q - r]
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max);

    let mut u = DenseMatrix::zeros(p, r);
    let mut v = DenseMatrix::zeros(q, r);
    let mut trusted = Vec::with_capacity(r);
    for k in 0..r {
        let top: Vec<C64> = (0..p).map(|i| vecs[(i, k)]).collect();
        let bottom: Vec<C64> = (0..q).map(|i| vecs[(p + i, k)]).collect();
        let (nt, nb) = (vector_norm(&top), vector_norm(&bottom));
        // A balanced split (both halves near 1/sqrt 2) marks a genuine +sigma pair.
        if sigma[k] > NULL_DIRECTION * sigma_max && nt > 0.5 && nb > 0.5 {
            u.set_column(k, &top.iter().map(|z| z / nt).collect::<Vec<_>>());
            v.set_column(k, &bottom.iter().map(|z| z / nb).collect::<Vec<_>>());
            trusted.push(k);
        }
    }
    if trusted.len() < r {
        fill_null_directions(&mut u, &trusted)?;
        fill_null_directions(&mut v, &trusted)?;
    }
    sigma.resize(padded, 0.0);

    Ok(Svd {
        values: Spectrum::from_descending(sigma).expect("eigenvalues were descending"),
        u,
        v,
        null_residual,
    })
}

/// Replaces the untrusted columns of `m` by an orthonormal completion of the
/// trusted ones.
fn fill_null_directions(m: &mut DenseMatrix, trusted: &[usize]) -> Result<()> {
    let basis = m.select_columns(trusted);
    let completion = orthonormal_completion(&basis)?;
    let mut next = 0;
    for k in 0..m.cols() {
        if !trusted.contains(&k) {
            m.set_column(k, &completion.column(next));
            next += 1;
        }
    }
    Ok(())
}

/// Largest singular value, `sqrt(lambda_max)` of whichever of `M M*`,
/// `M* M` is smaller. Zero for empty matrices.
pub fn spectral_norm(m: &DenseMatrix) -> Result<f64> {
    if m.is_empty() {
        return Ok(0.0);
    }
    let gram = if m.rows() <= m.cols() {
        m.matmul(&m.adjoint())?
    } else {
        m.adjoint_matmul(m)?
    };
    let top = eigenvalues(&HermitianMatrix::new(gram)?)?
        .largest()
        .unwrap_or(0.0);
    Ok(top.max(0.0).sqrt())
}
