use crate::error::{Error, Result};
use crate::linalg::matrix::{inner, vector_norm, DenseMatrix, C64};
use crate::tolerance::{ORTHONORMAL_PER_COL, UNITARY_PER_DIM};

/// Extends the orthonormal columns of `x1` (`N x m`) to a unitary `[X1, X2]`
/// and returns `X2` (`N x (N - m)`).
///
/// Standard basis vectors are orthogonalized against the current span by
/// modified Gram-Schmidt with a second pass. At each step the basis vector
/// with the largest remaining component outside the span is taken, which
/// always exceeds `1/sqrt(N)`.
pub fn orthonormal_completion(x1: &DenseMatrix) -> Result<DenseMatrix> {
    let (n, m) = x1.shape();
    if m > n {
        return Err(Error::Shape(format!(
            "{m} columns cannot be orthonormal in dimension {n}"
        )));
    }
    let input_defect = x1.orthonormality_defect();
    let allowed = m.max(1) as f64 * ORTHONORMAL_PER_COL;
    if input_defect > allowed {
        return Err(Error::NotOrthonormal {
            defect: input_defect,
            allowed,
        });
    }

    let mut basis: Vec<Vec<C64>> = (0..m).map(|j| x1.column(j)).collect();
    // remaining[k] = ||P_perp e_k||^2
    let mut remaining: Vec<f64> = (0..n)
        .map(|k| 1.0 - basis.iter().map(|q| q[k].norm_sqr()).sum::<f64>())
        .collect();
    let mut used = vec![false; n];

    let mut x2 = DenseMatrix::zeros(n, n - m);
    for col in 0..n - m {
        let k = (0..n)
            .filter(|&k| !used[k])
            .max_by(|&a, &b| remaining[a].total_cmp(&remaining[b]))
            .expect("an unused basis vector remains");
        used[k] = true;

        let mut w = vec![C64::new(0.0, 0.0); n];
        w[k] = C64::new(1.0, 0.0);
        for _ in 0..2 {
            for q in &basis {
                let proj = inner(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= proj * qi;
                }
            }
        }
        let norm = vector_norm(&w);
        if norm < 0.5 / (n as f64).sqrt() {
            return Err(Error::NotOrthonormal {
                defect: norm,
                allowed: 0.5 / (n as f64).sqrt(),
            });
        }
        w.iter_mut().for_each(|z| *z /= norm);
        for (r, z) in remaining.iter_mut().zip(&w) {
            *r -= z.norm_sqr();
        }
        x2.set_column(col, &w);
        basis.push(w);
    }

    // The completed matrix inherits whatever defect the input basis had.
    let full = x1.hstack(&x2)?;
    let defect = full.orthonormality_defect();
    let allowed = n as f64 * UNITARY_PER_DIM + input_defect;
    if defect > allowed {
        return Err(Error::NotUnitary { defect, allowed });
    }
    Ok(x2)
}
