//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of `a[p][q]` with a diagonal unitary
//! and then applies a real Givens rotation, so the 2x2 subproblem is the
//! classical real symmetric one. Sweeps run in row-cyclic order until the
//! off-diagonal Frobenius mass falls below `1e-13 * ||A||_F`.

use crate::error::{Error, Result};
use crate::linalg::hermitian::{HermitianMatrix, UnitaryMatrix};
use crate::linalg::matrix::{DenseMatrix, C64};
use crate::linalg::spectrum::{descending_order, Spectrum};
use crate::tolerance::{JACOBI_MAX_SWEEPS, JACOBI_OFF_DIAGONAL};

/// Eigenvalues of `a` in descending order together with the eigenvectors as
/// columns of a unitary matrix, `A V = V diag(values)`.
///
/// Equal eigenvalues keep the order in which Jacobi left them on the
/// diagonal.
pub fn hermitian_eigen(a: &HermitianMatrix) -> Result<(Spectrum, UnitaryMatrix)> {
    let n = a.dim();
    let mut work = a.as_matrix().clone();
    let mut vecs = DenseMatrix::identity(n);
    let target = JACOBI_OFF_DIAGONAL * a.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_mass(&work);
        if off <= target {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
                target,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut work, &mut vecs, p, q);
            }
        }
        sweeps += 1;
    }

    let diag: Vec<f64> = (0..n).map(|i| work[(i, i)].re).collect();
    let order = descending_order(&diag);
    let values = order.iter().map(|&k| diag[k]).collect();
    let vectors = vecs.select_columns(&order);
    Ok((
        Spectrum::from_descending(values).expect("sorted by construction"),
        UnitaryMatrix::new_unchecked(vectors),
    ))
}

/// Eigenvalues only.
pub fn eigenvalues(a: &HermitianMatrix) -> Result<Spectrum> {
    hermitian_eigen(a).map(|(s, _)| s)
}

fn off_diagonal_mass(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut sq = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sq += a[(i, j)].norm_sqr();
            }
        }
    }
    sq.sqrt()
}

/// Annihilates `a[p][q]` with `J = diag(1, e^{-i phi}) * [[c, s], [-s, c]]`
/// acting on coordinates `p, q`, then `A <- J* A J`, `V <- V J`.
fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let phase = apq / b;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + tau.hypot(1.0))
    } else {
        -1.0 / (-tau + tau.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let conj_phase = phase.conj();

    let n = a.rows();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)] * conj_phase;
        let new_kp = akp * c - akq * s;
        let new_kq = akp * s + akq * c;
        a[(k, p)] = new_kp;
        a[(k, q)] = new_kq;
        a[(p, k)] = new_kp.conj();
        a[(q, k)] = new_kq.conj();
    }
    a[(p, p)] = C64::new(app - t * b, 0.0);
    a[(q, q)] = C64::new(aqq + t * b, 0.0);
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);

    for k in 0..v.rows() {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)] * conj_phase;
        v[(k, p)] = vkp * c - vkq * s;
        v[(k, q)] = vkp * s + vkq * c;
    }
}
