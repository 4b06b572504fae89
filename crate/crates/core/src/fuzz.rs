//! Seeded validity harness: generate instances, compute bounds, eigensolve
//! the coupled matrix, and record every place a bound fails to hold.
//!
//! Trials are keyed by `(seed, trial)` and independent. Aggregation uses
//! only min/max and counts, so trial order does not matter.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{eigen_bound_report, sv_bound_report, sv_degenerate_report};
use crate::error::Result;
use crate::io::generate::{
    generate_with, one_sided_instance, rectangular_instance, trial_rng, Ensemble, GeneratorSpec,
};
use crate::tolerance::{bound_tolerance, DOMINANCE_REL};

/// Absolute tolerance for singular values that should vanish.
pub const TAIL_TOLERANCE: f64 = 1e-10;

/// Tolerance for the one-sided bound, relative to `1 + ||B||`.
pub const ONE_SIDED_SLACK: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    /// Every block dimension is drawn from `1..=max_dim / 2`.
    pub max_dim: usize,
    pub eigen_trials: usize,
    pub singular_trials: usize,
    pub one_sided_trials: usize,
}

impl FuzzConfig {
    /// `trials` eigenvalue instances, half as many singular value instances
    /// and a tenth as many one-sided ones.
    pub fn from_trials(trials: usize, max_dim: usize, seed: u64) -> Self {
        Self {
            seed,
            max_dim,
            eigen_trials: trials,
            singular_trials: trials / 2,
            one_sided_trials: trials / 10,
        }
    }

    fn block_cap(&self) -> usize {
        (self.max_dim / 2).max(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialKind {
    Eigen,
    Singular,
    OneSided,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: TrialKind,
    pub trial: u64,
    /// Zero-based row of the report.
    pub index: usize,
    /// Which inequality failed.
    pub check: String,
    /// Left side of the failed `lhs <= rhs`.
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub eigen_trials: usize,
    pub singular_trials: usize,
    pub one_sided_trials: usize,
    /// Eigenvalue trials generated with `eta = 0`.
    pub zero_gap_trials: usize,
    /// `min_i (main_i - |lambda_i - lambda_tilde_i|)` over all trials.
    pub worst_slack_eigen: Option<f64>,
    pub worst_slack_singular: Option<f64>,
    pub worst_slack_one_sided: Option<f64>,
    /// Largest singular value that should be zero.
    pub max_tail: Option<f64>,
    pub checks: u64,
    pub violations: Vec<Violation>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn fold_min(acc: &mut Option<f64>, v: f64) {
    *acc = Some(acc.map_or(v, |a| a.min(v)));
}

fn fold_max(acc: &mut Option<f64>, v: f64) {
    *acc = Some(acc.map_or(v, |a| a.max(v)));
}

struct Checker<'a> {
    summary: &'a mut FuzzSummary,
    kind: TrialKind,
    trial: u64,
}

impl Checker<'_> {
    fn le(&mut self, index: usize, check: &str, lhs: f64, rhs: f64, tol: f64) {
        self.summary.checks += 1;
        // NaN on either side counts as a violation.
        let holds = lhs <= rhs + tol;
        if !holds {
            self.summary.violations.push(Violation {
                kind: self.kind,
                trial: self.trial,
                index,
                check: check.to_string(),
                lhs,
                rhs,
            });
        }
    }
}

/// Draws `1..=cap` uniformly.
fn dim(rng: &mut impl Rng, cap: usize) -> usize {
    rng.random_range(1..=cap)
}

/// Log-uniform coupling size in `[1e-3, 3]`.
fn coupling_scale(rng: &mut impl Rng) -> f64 {
    10f64.powf(rng.random_range(-3.0..0.5))
}

pub fn eigen_trial(config: &FuzzConfig, trial: u64, summary: &mut FuzzSummary) -> Result<()> {
    let mut rng = trial_rng(config.seed, trial);
    let cap = config.block_cap();
    let spec = GeneratorSpec {
        m: dim(&mut rng, cap),
        n: dim(&mut rng, cap),
        gap_target: rng.random_range(0.0..2.0),
        coupling_scale: coupling_scale(&mut rng),
        seed: config.seed,
        ensemble: Ensemble::ALL[(trial % 3) as usize],
    };
    let p = generate_with(&spec, &mut rng)?;
    let report = eigen_bound_report(&p, true)?;
    summary.eigen_trials += 1;
    if report.eta == 0.0 {
        summary.zero_gap_trials += 1;
    }
    let tol = bound_tolerance(report.norm_scale);
    let mut c = Checker {
        summary,
        kind: TrialKind::Eigen,
        trial,
    };
    for (i, row) in report.rows.iter().enumerate() {
        let diff = row.true_diff.expect("oracle requested");
        c.le(i, "true_diff <= main_i", diff, row.main_i, tol);
        c.le(i, "main_i <= main_global", row.main_i, row.main_global, tol);
        c.le(
            i,
            "main_global <= ||E||",
            row.main_global,
            report.norm_e,
            tol,
        );
        c.le(
            i,
            "main_i <= weyl",
            row.main_i,
            row.weyl,
            DOMINANCE_REL * row.weyl,
        );
        if let Some(q) = row.quadratic {
            c.le(
                i,
                "main_global <= quadratic",
                row.main_global,
                q,
                DOMINANCE_REL * q,
            );
        }
        fold_min(&mut c.summary.worst_slack_eigen, row.main_i - diff);
    }
    Ok(())
}

pub fn singular_trial(config: &FuzzConfig, trial: u64, summary: &mut FuzzSummary) -> Result<()> {
    let mut rng = trial_rng(config.seed, trial);
    let cap = config.block_cap();
    let blocks = [(); 4].map(|_| dim(&mut rng, cap));
    let scale = coupling_scale(&mut rng);
    let inst = rectangular_instance(blocks, scale, &mut rng);
    let report = sv_bound_report(&inst.g1, &inst.e1, &inst.e2, &inst.g2, true)?;
    summary.singular_trials += 1;
    let norm_b = report.rows.first().and_then(|r| r.sigma).unwrap_or(0.0);
    let tol = bound_tolerance(norm_b);
    let mut c = Checker {
        summary,
        kind: TrialKind::Singular,
        trial,
    };
    for (i, row) in report.rows.iter().enumerate() {
        let diff = row.true_diff.expect("oracle requested");
        c.le(i, "true_diff <= main_i", diff, row.main_i, tol);
        c.le(i, "main_i <= main_global", row.main_i, row.main_global, tol);
        c.le(
            i,
            "main_global <= epsilon",
            row.main_global,
            report.epsilon,
            tol,
        );
        fold_min(&mut c.summary.worst_slack_singular, row.main_i - diff);
    }
    let tail = report.tail_max.expect("oracle requested");
    c.le(report.rows.len(), "zero tail", tail, 0.0, TAIL_TOLERANCE);
    fold_max(&mut c.summary.max_tail, tail);
    Ok(())
}

pub fn one_sided_trial(config: &FuzzConfig, trial: u64, summary: &mut FuzzSummary) -> Result<()> {
    let mut rng = trial_rng(config.seed, trial);
    let cap = config.block_cap();
    let (p, q1, q2) = (dim(&mut rng, cap), dim(&mut rng, cap), dim(&mut rng, cap));
    let scale = coupling_scale(&mut rng);
    let (g, e) = one_sided_instance(p, q1, q2, scale, &mut rng);
    let rows = sv_degenerate_report(&g, &e, true)?;
    summary.one_sided_trials += 1;
    let norm_b = rows.first().and_then(|r| r.sigma).unwrap_or(0.0);
    let tol = ONE_SIDED_SLACK * (1.0 + norm_b);
    let mut c = Checker {
        summary,
        kind: TrialKind::OneSided,
        trial,
    };
    for (i, row) in rows.iter().enumerate() {
        let diff = row.true_diff.expect("oracle requested");
        c.le(i, "true_diff <= bound", diff, row.bound, tol);
        fold_min(&mut c.summary.worst_slack_one_sided, row.bound - diff);
    }
    Ok(())
}

/// Runs every configured trial. Trial families use disjoint stream ranges
/// so adding singular value trials never shifts the eigenvalue ones.
pub fn run_fuzz(config: &FuzzConfig) -> Result<FuzzSummary> {
    let mut summary = FuzzSummary::default();
    for t in 0..config.eigen_trials as u64 {
        eigen_trial(config, t, &mut summary)?;
    }
    for t in 0..config.singular_trials as u64 {
        singular_trial(config, (1 << 32) + t, &mut summary)?;
    }
    for t in 0..config.one_sided_trials as u64 {
        one_sided_trial(config, (2 << 32) + t, &mut summary)?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_is_clean_and_reproducible() {
        let config = FuzzConfig::from_trials(60, 8, 5);
        let a = run_fuzz(&config).unwrap();
        assert!(a.passed(), "{:?}", a.violations);
        assert_eq!(a.eigen_trials, 60);
        assert_eq!(a.singular_trials, 30);
        assert_eq!(a.one_sided_trials, 6);
        assert!(a.zero_gap_trials > 0);
        assert_eq!(a, run_fuzz(&config).unwrap());
    }
}
