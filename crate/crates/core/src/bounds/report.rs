use serde::{Deserialize, Serialize};

use crate::bounds::block::BlockHermitian;
use crate::bounds::formulas::{main_bound, quadratic_bound};
use crate::bounds::gaps::per_index_gaps;
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, spectral_norm, Block};
use crate::tolerance::GAP_FLOOR;

/// One row per merged index `i` of `H1 (+) H2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub lambda_tilde: f64,
    pub provenance: Block,
    pub eta_i: f64,
    pub weyl: f64,
    /// `||E||^2 / eta`; `None` when `eta` is below the gap floor.
    pub quadratic: Option<f64>,
    pub main_i: f64,
    pub main_global: f64,
    /// Eigenvalue of the coupled matrix at the same position.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub true_diff: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub m: usize,
    pub n: usize,
    pub norm_e: f64,
    pub eta: f64,
    /// `max |lambda_tilde| + ||E||`, an upper bound on `||A||`.
    pub norm_scale: f64,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    /// Smallest `main_i - true_diff_i`; `None` without oracle data.
    pub fn worst_slack(&self) -> Option<f64> {
        self.rows
            .iter()
            .map(|r| r.true_diff.map(|d| r.main_i - d))
            .try_fold(f64::INFINITY, |acc, s| s.map(|s| acc.min(s)))
    }
}

/// Classical and gap-aware bounds for every eigenvalue of a block
/// partition. With `run_oracle`, the coupled matrix is also eigensolved and
/// the true differences are recorded positionally.
pub fn eigen_bound_report(p: &BlockHermitian, run_oracle: bool) -> Result<BoundReport> {
    if p.m() == 0 || p.n() == 0 {
        return Err(Error::DegeneratePartition(format!(
            "both blocks must be nonempty (m = {}, n = {})",
            p.m(),
            p.n()
        )));
    }
    let s1 = eigenvalues(p.h1())?;
    let s2 = eigenvalues(p.h2())?;
    let gaps = per_index_gaps(&s1, &s2);
    let norm_e = spectral_norm(p.e())?;
    let max_abs = gaps
        .merged
        .values()
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    let norm_scale = max_abs + norm_e;

    let quadratic = if gaps.eta < GAP_FLOOR * norm_scale {
        None
    } else {
        quadratic_bound(norm_e, gaps.eta)
    };
    let main_global = main_bound(norm_e, gaps.eta);

    let exact = if run_oracle {
        Some(eigenvalues(&p.assemble())?)
    } else {
        None
    };

    let rows = gaps
        .merged
        .values()
        .iter()
        .enumerate()
        .map(|(i, &lt)| {
            let lambda = exact.as_ref().map(|s| s.values()[i]);
            BoundRow {
                lambda_tilde: lt,
                provenance: gaps.provenance()[i],
                eta_i: gaps.eta_i[i],
                weyl: norm_e,
                quadratic,
                main_i: main_bound(norm_e, gaps.eta_i[i]),
                main_global,
                lambda,
                true_diff: lambda.map(|l| (l - lt).abs()),
            }
        })
        .collect();

    Ok(BoundReport {
        m: p.m(),
        n: p.n(),
        norm_e,
        eta: gaps.eta,
        norm_scale,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::formulas::exact_2x2;
    use crate::linalg::{DenseMatrix, HermitianMatrix};

    #[test]
    fn zero_coupling_reports_zero() {
        let p = BlockHermitian::new(
            HermitianMatrix::from_real_diagonal(&[2.0, 1.0]),
            HermitianMatrix::from_real_diagonal(&[-1.0]),
            DenseMatrix::zeros(1, 2),
        )
        .unwrap();
        let r = eigen_bound_report(&p, true).unwrap();
        for row in &r.rows {
            assert_eq!(row.weyl, 0.0);
            assert_eq!(row.main_i, 0.0);
            assert_eq!(row.main_global, 0.0);
            assert_eq!(row.quadratic, Some(0.0));
            assert_eq!(row.true_diff, Some(0.0));
        }
    }

    #[test]
    fn two_by_two_is_tight() {
        let p = BlockHermitian::new(
            HermitianMatrix::from_real_diagonal(&[1.0]),
            HermitianMatrix::from_real_diagonal(&[0.0]),
            DenseMatrix::from_real(1, 1, &[0.1]).unwrap(),
        )
        .unwrap();
        let r = eigen_bound_report(&p, true).unwrap();
        let shift = exact_2x2(1.0, 0.0, 0.1).shift;
        for row in &r.rows {
            assert!((row.main_i - shift).abs() < 1e-15);
            assert!((row.true_diff.unwrap() - shift).abs() < 1e-14);
        }
    }

    #[test]
    fn shared_eigenvalue_marks_quadratic_not_applicable() {
        let p = BlockHermitian::new(
            HermitianMatrix::from_real_diagonal(&[1.0]),
            HermitianMatrix::from_real_diagonal(&[1.0]),
            DenseMatrix::from_real(1, 1, &[0.25]).unwrap(),
        )
        .unwrap();
        let r = eigen_bound_report(&p, false).unwrap();
        assert_eq!(r.eta, 0.0);
        assert!(r
            .rows
            .iter()
            .all(|row| row.quadratic.is_none() && row.main_i == 0.25));
        assert_eq!(r.worst_slack(), None);
    }

    #[test]
    fn empty_block_is_rejected() {
        let p =
            BlockHermitian::split(&HermitianMatrix::from_real_diagonal(&[1.0, 2.0]), 0).unwrap();
        assert!(matches!(
            eigen_bound_report(&p, false),
            Err(Error::DegeneratePartition(_))
        ));
    }
}
