//! Singular value bounds for `B = [[G1, E1], [E2, G2]]` against
//! `[[G1, O], [O, G2]]`, and for the one-sided case `B = [G E]`.
//!
//! Singular value lists follow the padded convention: a `p x q` matrix has
//! `max(p, q)` singular values, the trailing ones zero.

use serde::{Deserialize, Serialize};

use crate::bounds::formulas::{main_bound, sv_degenerate_bound};
use crate::bounds::gaps::per_index_gaps;
use crate::error::{Error, Result};
use crate::linalg::{spectral_norm, svd, Block, DenseMatrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularRow {
    pub sigma_tilde: f64,
    pub provenance: Block,
    pub eta_i: f64,
    pub main_i: f64,
    pub main_global: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub true_diff: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularBoundReport {
    /// `(m, n, k, l)`: `G1` is `m x k`, `G2` is `n x l`.
    pub blocks: [usize; 4],
    /// `max(||E1||, ||E2||)`.
    pub epsilon: f64,
    pub eta: f64,
    /// Rows for `i <= min(m + n, k + l)`.
    pub rows: Vec<SingularRow>,
    /// `max(m + n, k + l) - min(m + n, k + l)`: indices whose singular
    /// values vanish for both matrices.
    pub tail_len: usize,
    /// Largest magnitude among the zero-tail eigenvalues of both
    /// Jordan-Wielandt augmentations; present with the oracle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_max: Option<f64>,
}

impl SingularBoundReport {
    pub fn worst_slack(&self) -> Option<f64> {
        self.rows
            .iter()
            .map(|r| r.true_diff.map(|d| r.main_i - d))
            .try_fold(f64::INFINITY, |acc, s| s.map(|s| acc.min(s)))
    }
}

/// Bounds for every nontrivial singular value of the blocked matrix.
pub fn sv_bound_report(
    g1: &DenseMatrix,
    e1: &DenseMatrix,
    e2: &DenseMatrix,
    g2: &DenseMatrix,
    run_oracle: bool,
) -> Result<SingularBoundReport> {
    let (m, k) = g1.shape();
    let (n, l) = g2.shape();
    if m == 0 || k == 0 || n == 0 || l == 0 {
        return Err(Error::DegeneratePartition(
            "G1 and G2 must be nonempty; use sv_degenerate_bound for one-sided partitions".into(),
        ));
    }
    if e1.shape() != (m, l) || e2.shape() != (n, k) {
        return Err(Error::Shape(format!(
            "E1 must be {m}x{l} and E2 {n}x{k}, got {:?} and {:?}",
            e1.shape(),
            e2.shape()
        )));
    }

    let svd1 = svd(g1)?;
    let svd2 = svd(g2)?;
    let gaps = per_index_gaps(&svd1.values, &svd2.values);
    let r = (m + n).min(k + l);
    let eta = gaps.eta_i[..r]
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let epsilon = spectral_norm(e1)?.max(spectral_norm(e2)?);
    let main_global = main_bound(epsilon, eta);

    let oracle = if run_oracle {
        let b = DenseMatrix::from_blocks(g1, e1, e2, g2)?;
        Some(svd(&b)?)
    } else {
        None
    };

    let rows = (0..r)
        .map(|i| {
            let st = gaps.merged.values()[i];
            let sigma = oracle.as_ref().map(|s| s.values.values()[i]);
            SingularRow {
                sigma_tilde: st,
                provenance: gaps.provenance()[i],
                eta_i: gaps.eta_i[i],
                main_i: main_bound(epsilon, gaps.eta_i[i]),
                main_global,
                sigma,
                true_diff: sigma.map(|s| (s - st).abs()),
            }
        })
        .collect();

    let tail_max = oracle.as_ref().map(|s| {
        let exact_tail = s.values.values()[r..]
            .iter()
            .fold(0.0f64, |acc, x| acc.max(x.abs()));
        let padded_tail = gaps.merged.values()[r..]
            .iter()
            .fold(0.0f64, |acc, x| acc.max(x.abs()));
        exact_tail
            .max(padded_tail)
            .max(s.null_residual)
            .max(svd1.null_residual)
            .max(svd2.null_residual)
    });

    Ok(SingularBoundReport {
        blocks: [m, n, k, l],
        epsilon,
        eta,
        rows,
        tail_len: (m + n).max(k + l) - r,
        tail_max,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerateRow {
    pub sigma_tilde: f64,
    pub bound: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub true_diff: Option<f64>,
}

/// Applies [`sv_degenerate_bound`] to `B = [G E]` for `i <= min(p, q)`.
pub fn sv_degenerate_report(
    g: &DenseMatrix,
    e: &DenseMatrix,
    run_oracle: bool,
) -> Result<Vec<DegenerateRow>> {
    if g.rows() != e.rows() {
        return Err(Error::Shape(format!(
            "G and E must have the same number of rows, got {} and {}",
            g.rows(),
            e.rows()
        )));
    }
    let p = g.rows();
    let q = g.cols() + e.cols();
    let r = p.min(q);
    let mut tilde = svd(g)?.values.into_values();
    tilde.resize(p.max(q), 0.0);
    let norm_e = spectral_norm(e)?;
    let exact = if run_oracle {
        Some(svd(&g.hstack(e)?)?.values.into_values())
    } else {
        None
    };
    Ok((0..r)
        .map(|i| {
            let sigma = exact.as_ref().map(|s| s[i]);
            DegenerateRow {
                sigma_tilde: tilde[i],
                bound: sv_degenerate_bound(tilde[i], norm_e),
                sigma,
                true_diff: sigma.map(|s| (s - tilde[i]).abs()),
            }
        })
        .collect())
}
