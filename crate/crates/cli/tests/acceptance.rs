//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::Rng;

use specbound::bounds::{
    eigen_bound_report, exact_2x2, main_bound, shifted_schur_complement, sv_degenerate_report,
    BlockHermitian,
};
use specbound::certifier::{certify, rayleigh_quotient};
use specbound::fuzz::{eigen_trial, one_sided_trial, singular_trial, FuzzConfig, FuzzSummary};
use specbound::io::generate::{
    gaussian_hermitian, gaussian_matrix, subspace_instance, trial_rng, SubspaceKind,
};
use specbound::io::report::{ReportBody, ReportDocument};
use specbound::linalg::{
    eigenvalues, jordan_wielandt, orthonormal_completion, spectral_norm, DenseMatrix,
    HermitianMatrix, C64,
};

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn fuzz_config() -> FuzzConfig {
    FuzzConfig {
        seed: SEED,
        max_dim: 12,
        eigen_trials: 10_000,
        singular_trials: 5_000,
        one_sided_trials: 1_000,
    }
}

fn eigen_corpus() -> FuzzSummary {
    let config = fuzz_config();
    let mut s = FuzzSummary::default();
    for t in 0..config.eigen_trials as u64 {
        eigen_trial(&config, t, &mut s).expect("eigen trial");
    }
    s
}

fn is_dominance(check: &str) -> bool {
    check.contains("weyl") || check.contains("quadratic")
}

fn c1_validity(s: &FuzzSummary, secs: f64) -> Outcome {
    let bad = s
        .violations
        .iter()
        .filter(|v| !is_dominance(&v.check))
        .count();
    outcome(
        bad == 0 && s.eigen_trials == 10_000 && s.zero_gap_trials > 0 && secs < 60.0,
        format!(
            "{} instances ({} with eta = 0), {bad} violations, worst slack {:.3e}, {secs:.1} s",
            s.eigen_trials,
            s.zero_gap_trials,
            s.worst_slack_eigen.unwrap_or(f64::NAN)
        ),
    )
}

fn c2_dominance(s: &FuzzSummary) -> Outcome {
    let bad = s
        .violations
        .iter()
        .filter(|v| is_dominance(&v.check))
        .count();
    outcome(
        bad == 0,
        format!("main <= weyl always, main <= quadratic when eta > 0: {bad} violations"),
    )
}

fn c3_two_by_two() -> Outcome {
    let mut rng = trial_rng(SEED, 3);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (a, b, e): (f64, f64, f64) = (
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
            10f64.powf(rng.random_range(-4.0..1.0)),
        );
        let p = BlockHermitian::new(
            HermitianMatrix::from_real_diagonal(&[a]),
            HermitianMatrix::from_real_diagonal(&[b]),
            DenseMatrix::from_real(1, 1, &[e]).unwrap(),
        )
        .unwrap();
        let shift = exact_2x2(a, b, e).shift;
        for row in eigen_bound_report(&p, false).unwrap().rows {
            worst = worst.max((row.main_i - shift).abs() / shift);
        }
    }
    outcome(
        worst <= 1e-12,
        format!("1000 triples, worst relative gap to exact shift {worst:.2e}"),
    )
}

fn c4_continuity() -> Outcome {
    let mut misses = 0;
    let mut count = 0;
    for exp in -8..=3 {
        for mant in [1.0, 1.5, 2.0, 3.0, 5.0, 7.5] {
            let x = mant * 10f64.powi(exp);
            count += 1;
            if main_bound(x, 0.0) != x {
                misses += 1;
            }
        }
    }
    outcome(
        misses == 0,
        format!("main_bound(x, 0) == x on {count} grid points, {misses} mismatches"),
    )
}

fn c5_singular() -> Outcome {
    let config = fuzz_config();
    let mut s = FuzzSummary::default();
    for t in 0..config.singular_trials as u64 {
        singular_trial(&config, (1 << 32) + t, &mut s).expect("singular trial");
    }
    outcome(
        s.passed() && s.singular_trials == 5000,
        format!(
            "{} instances, {} violations, worst slack {:.3e}, largest zero-tail value {:.2e}",
            s.singular_trials,
            s.violations.len(),
            s.worst_slack_singular.unwrap_or(f64::NAN),
            s.max_tail.unwrap_or(f64::NAN)
        ),
    )
}

fn c6_one_sided() -> Outcome {
    let config = fuzz_config();
    let mut s = FuzzSummary::default();
    for t in 0..config.one_sided_trials as u64 {
        one_sided_trial(&config, (2 << 32) + t, &mut s).expect("one-sided trial");
    }
    let anchor = &sv_degenerate_report(
        &DenseMatrix::from_real(1, 1, &[1.0]).unwrap(),
        &DenseMatrix::from_real(1, 1, &[0.1]).unwrap(),
        true,
    )
    .unwrap()[0];
    let diff = anchor.true_diff.unwrap();
    let anchor_ok = (diff - 0.004_987_6).abs() < 1e-7
        && (anchor.bound - 0.006_622_9).abs() < 1e-7
        && diff <= anchor.bound;
    outcome(
        s.passed() && anchor_ok,
        format!(
            "{} instances, {} violations; anchor diff {diff:.7} <= bound {:.7}",
            s.one_sided_trials,
            s.violations.len(),
            anchor.bound
        ),
    )
}

fn subspace_case(trial: u64) -> (HermitianMatrix, DenseMatrix) {
    let mut rng = trial_rng(SEED, 7_000 + trial);
    let n = rng.random_range(2..=16);
    let m = rng.random_range(1..n);
    let kind = if trial % 2 == 0 {
        SubspaceKind::Random
    } else {
        SubspaceKind::Perturbed
    };
    let noise = 10f64.powf(rng.random_range(-6.0..-1.0));
    subspace_instance(n, m, kind, noise, &mut rng).unwrap()
}

/// `||E||` from an explicit completion against `||R||` from the residual,
/// both computed here rather than read from the report.
fn c7_identity() -> Outcome {
    let mut worst_whole = 0.0f64;
    let mut worst_col = 0.0f64;
    for t in 0..1000 {
        let (a, x1) = subspace_case(t);
        let am = a.as_matrix();
        let h1 = rayleigh_quotient(&a, &x1).unwrap();
        let r = am
            .matmul(&x1)
            .unwrap()
            .sub(&x1.matmul(h1.as_matrix()).unwrap())
            .unwrap();
        let x2 = orthonormal_completion(&x1).unwrap();
        let e = x2.adjoint_matmul(&am.matmul(&x1).unwrap()).unwrap();
        let scale = 1.0 + spectral_norm(am).unwrap();
        worst_whole = worst_whole
            .max((spectral_norm(&e).unwrap() - spectral_norm(&r).unwrap()).abs() / scale);
        for j in 0..x1.cols() {
            worst_col = worst_col.max((e.column_norm(j) - r.column_norm(j)).abs() / scale);
        }
    }
    outcome(
        worst_whole <= 1e-10 && worst_col <= 1e-10,
        format!("1000 pairs, N <= 16: max | ||E|| - ||R|| | / (1 + ||A||) = {worst_whole:.2e}, column-wise {worst_col:.2e}"),
    )
}

fn c8_certified() -> Outcome {
    let mut bad = 0;
    let mut worst_col = f64::INFINITY;
    let mut worst_whole = f64::INFINITY;
    let mut errors = 0;
    for t in 0..1000 {
        let (a, x1) = subspace_case(10_000 + t);
        let r = match certify(&a, &x1, true) {
            Ok(r) => r,
            Err(_) => {
                errors += 1;
                continue;
            }
        };
        let tol = 1e-9 * (1.0 + r.norm_a);
        bad += r.violations(tol).len();
        for row in &r.rows {
            worst_col = worst_col.min(row.per_column_bound - row.true_error_column.unwrap());
            worst_whole = worst_whole.min(row.whole_bound - row.true_error.unwrap());
        }
    }
    outcome(
        bad == 0 && errors == 0,
        format!("1000 runs, {bad} violations, {errors} errors; worst slack per-column {worst_col:.2e}, whole-R {worst_whole:.2e}"),
    )
}

fn c9_lanczos_demo() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_specbound"))
        .args([
            "lanczos-demo",
            "--dim",
            "100",
            "--steps",
            "15",
            "--seed",
            "1",
            "--format",
            "json",
            "--no-timestamp",
        ])
        .output()
        .expect("run specbound");
    if !out.status.success() {
        return outcome(
            false,
            format!(
                "exit {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ),
        );
    }
    let doc =
        ReportDocument::from_json(&String::from_utf8_lossy(&out.stdout)).expect("report JSON");
    let ReportBody::LanczosDemo(demo) = doc.body else {
        return outcome(false, "unexpected report kind".into());
    };
    let rows = &demo.report.rows;
    let median = demo.median_interior_bound().unwrap_or(f64::NAN);
    let r_norm = demo.report.whole_r_norm;
    let extremes = [
        rows[0].per_column_bound,
        rows[rows.len() - 1].per_column_bound,
    ];
    let pass = extremes.iter().all(|&b| b < r_norm && 10.0 * b <= median);
    outcome(
        pass,
        format!(
            "extreme per-column bounds {:.2e}, {:.2e}; ||R|| = {r_norm:.3}; median interior {median:.3}",
            extremes[0], extremes[1]
        ),
    )
}

/// `(a + d)/2 +- sqrt(((a - d)/2)^2 + |b|^2)`.
fn closed_2x2(h: &HermitianMatrix) -> Vec<f64> {
    let (a, d, b) = (h.get(0, 0).re, h.get(1, 1).re, h.get(1, 0).norm());
    let r = (0.25 * (a - d).powi(2) + b * b).sqrt();
    vec![0.5 * (a + d) + r, 0.5 * (a + d) - r]
}

/// Trigonometric roots of the characteristic cubic.
fn closed_3x3(h: &HermitianMatrix) -> Vec<f64> {
    let g = |i, j| h.get(i, j);
    let q = h.trace() / 3.0;
    let p1 = g(0, 1).norm_sqr() + g(0, 2).norm_sqr() + g(1, 2).norm_sqr();
    let p = (((0..3).map(|i| (g(i, i).re - q).powi(2)).sum::<f64>() + 2.0 * p1) / 6.0).sqrt();
    let b = |i, j| {
        (g(i, j)
            - if i == j {
                C64::new(q, 0.0)
            } else {
                C64::new(0.0, 0.0)
            })
            / p
    };
    let det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let phi = (det.re / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
    let l1 = q + 2.0 * p * phi.cos();
    let l3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    vec![l1, 3.0 * q - l1 - l3, l3]
}

fn c10_oracles() -> Outcome {
    let mut rng = trial_rng(SEED, 10);
    let mut closed = 0.0f64;
    for t in 0..1000 {
        let n = 2 + t % 2;
        let h = gaussian_hermitian(n, &mut rng);
        let exact = if n == 2 {
            closed_2x2(&h)
        } else {
            closed_3x3(&h)
        };
        for (x, y) in eigenvalues(&h).unwrap().values().iter().zip(exact) {
            closed = closed.max((x - y).abs());
        }
    }
    let mut interlace_bad = 0;
    for _ in 0..1000 {
        let n = rng.random_range(2..=10);
        let h = gaussian_hermitian(n, &mut rng);
        let i = rng.random_range(0..n);
        let full = eigenvalues(&h).unwrap();
        let struck = eigenvalues(&h.strike(i).unwrap()).unwrap();
        let tol = 1e-12 * (1.0 + h.frobenius_norm());
        for (k, mu) in struck.values().iter().enumerate() {
            if full.values()[k] + tol < *mu || *mu + tol < full.values()[k + 1] {
                interlace_bad += 1;
            }
        }
    }
    let mut jw = 0.0f64;
    for _ in 0..1000 {
        let b = gaussian_matrix(rng.random_range(1..=6), rng.random_range(1..=6), &mut rng);
        let v = eigenvalues(&jordan_wielandt(&b)).unwrap().into_values();
        for k in 0..v.len() {
            jw = jw.max((v[k] + v[v.len() - 1 - k]).abs() / (1.0 + b.frobenius_norm()));
        }
    }
    outcome(
        closed <= 1e-10 && interlace_bad == 0 && jw <= 1e-12,
        format!("closed-form 2x2/3x3 max error {closed:.2e}; interlacing failures {interlace_bad}; JW asymmetry {jw:.2e}"),
    )
}

fn c11_schur_inertia() -> Outcome {
    let mut rng = trial_rng(SEED, 11);
    let mut used = 0;
    let mut worst = 0.0f64;
    let mut errors = 0;
    while used < 500 {
        let m = rng.random_range(1..=5);
        let n = rng.random_range(1..=5);
        let a = gaussian_hermitian(m + n, &mut rng);
        let p = BlockHermitian::split(&a, m).unwrap();
        let lam1 = eigenvalues(&a).unwrap().values()[0];
        let mut tilde = eigenvalues(p.h1()).unwrap().into_values();
        tilde.extend(eigenvalues(p.h2()).unwrap().into_values());
        let tilde1 = tilde.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if lam1 <= tilde1 {
            continue;
        }
        used += 1;
        let norm_a = spectral_norm(a.as_matrix()).unwrap();
        match shifted_schur_complement(&p, lam1) {
            Ok(mm) => worst = worst.max(eigenvalues(&mm).unwrap().values()[0].abs() / norm_a),
            Err(_) => errors += 1,
        }
    }
    outcome(
        worst <= 1e-9 && errors == 0,
        format!(
            "500 instances: max |lambda_max(M(lambda_1))| / ||A|| = {worst:.2e}, {errors} errors"
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = eigen_corpus();
    let secs = start.elapsed().as_secs_f64();
    let results = [
        (
            "1",
            "block eigenvalue bound validity fuzz",
            c1_validity(&corpus, secs),
        ),
        (
            "2",
            "improvement over Weyl and quadratic bounds",
            c2_dominance(&corpus),
        ),
        ("3", "2x2 tightness", c3_two_by_two()),
        ("4", "zero-gap continuity", c4_continuity()),
        ("5", "singular value bound validity fuzz", c5_singular()),
        ("6", "one-sided singular value bound", c6_one_sided()),
        ("7", "coupling norm equals residual norm", c7_identity()),
        ("8", "certified Ritz value bounds", c8_certified()),
        ("9", "Lanczos demonstration", c9_lanczos_demo()),
        ("10", "eigensolver oracle soundness", c10_oracles()),
        ("11", "Schur complement inertia", c11_schur_inertia()),
    ];
    let mut failed = 0;
    for (id, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {tag}: {name}: {}", o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
