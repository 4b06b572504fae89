use crate::error::{Error, Result};
use crate::linalg::matrix::{DenseMatrix, C64};
use crate::tolerance::{STRICT_ASYMMETRY, UNITARY_PER_DIM};

/// Dense Hermitian matrix. Stored entries satisfy `a[i][j] == conj(a[j][i])`
/// bit for bit and the diagonal is exactly real.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    inner: DenseMatrix,
}

impl HermitianMatrix {
    /// Symmetrizes `a <- (a + a*)/2`.
    pub fn new(a: DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Shape(format!(
                "Hermitian matrix must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        Ok(Self::symmetrize(a))
    }

    /// Like [`HermitianMatrix::new`] but rejects inputs whose relative
    /// asymmetry `||A - A*||_F / ||A||_F` exceeds `1e-8`.
    pub fn new_strict(a: DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Self::new(a);
        }
        let asym = relative_asymmetry(&a);
        if asym > STRICT_ASYMMETRY {
            return Err(Error::NotHermitian(asym));
        }
        Ok(Self::symmetrize(a))
    }

    fn symmetrize(mut a: DenseMatrix) -> Self {
        let n = a.rows();
        for i in 0..n {
            a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
            for j in 0..i {
                let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
                a[(i, j)] = avg;
                a[(j, i)] = avg.conj();
            }
        }
        Self { inner: a }
    }

    pub fn from_real_diagonal(values: &[f64]) -> Self {
        Self {
            inner: DenseMatrix::diagonal(values),
        }
    }

    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    pub fn as_matrix(&self) -> &DenseMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.inner
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.inner[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.inner[(i, i)].re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    /// `A - shift * I`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut m = self.inner.clone();
        for i in 0..self.dim() {
            m[(i, i)].re -= shift;
        }
        Self { inner: m }
    }

    /// Removes row and column `index` (zero-based).
    pub fn strike(&self, index: usize) -> Result<Self> {
        let n = self.dim();
        if index >= n {
            return Err(Error::IndexOutOfRange { index, dim: n });
        }
        let keep = |k: usize| if k < index { k } else { k + 1 };
        Ok(Self {
            inner: DenseMatrix::from_fn(n - 1, n - 1, |i, j| self.inner[(keep(i), keep(j))]),
        })
    }

    /// `X* A X`, symmetrized.
    pub fn congruence(&self, x: &DenseMatrix) -> Result<Self> {
        let ax = self.inner.matmul(x)?;
        Self::new(x.adjoint_matmul(&ax)?)
    }

    /// Principal block of rows/columns `start..start + len`.
    pub fn principal_block(&self, start: usize, len: usize) -> Result<Self> {
        Ok(Self {
            inner: self.inner.block(start, start, len, len)?,
        })
    }
}

/// `||A - A*||_F / ||A||_F`, zero for the zero matrix.
pub fn relative_asymmetry(a: &DenseMatrix) -> f64 {
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        return 0.0;
    }
    let n = a.rows();
    let mut sq = 0.0;
    for i in 0..n {
        for j in 0..n {
            sq += (a[(i, j)] - a[(j, i)].conj()).norm_sqr();
        }
    }
    sq.sqrt() / norm
}

/// Square matrix with orthonormal columns, checked at construction:
/// `||U*U - I||_F <= dim * 1e-12`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    inner: DenseMatrix,
}

impl UnitaryMatrix {
    pub fn new(u: DenseMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::Shape(format!(
                "unitary matrix must be square, got {}x{}",
                u.rows(),
                u.cols()
            )));
        }
        let allowed = u.rows() as f64 * UNITARY_PER_DIM;
        let defect = u.orthonormality_defect();
        if defect > allowed {
            return Err(Error::NotUnitary { defect, allowed });
        }
        Ok(Self { inner: u })
    }

    /// Skips the O(n^3) check for matrices that are unitary by construction.
    pub(crate) fn new_unchecked(u: DenseMatrix) -> Self {
        debug_assert!(u.is_square());
        Self { inner: u }
    }

    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    pub fn as_matrix(&self) -> &DenseMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn symmetrizes_exactly() {
        let a = DenseMatrix::from_vec(
            2,
            2,
            vec![c(1.0, 0.3), c(2.0, 1.0), c(2.2, -0.8), c(0.0, 0.0)],
        )
        .unwrap();
        let h = HermitianMatrix::new(a).unwrap();
        assert_eq!(h.get(0, 0).im, 0.0);
        assert_eq!(h.get(0, 1), h.get(1, 0).conj());
        assert_eq!(h.get(0, 1), c(2.1, 0.9));
    }

    #[test]
    fn strict_rejects_asymmetry() {
        let a = DenseMatrix::from_real(2, 2, &[1.0, 0.5, 0.4, 1.0]).unwrap();
        assert!(matches!(
            HermitianMatrix::new_strict(a),
            Err(Error::NotHermitian(_))
        ));
        let tiny = DenseMatrix::from_real(2, 2, &[1.0, 0.5, 0.5 + 1e-12, 1.0]).unwrap();
        assert!(HermitianMatrix::new_strict(tiny).is_ok());
    }

    #[test]
    fn strike_removes_row_and_column() {
        let a = HermitianMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        assert_eq!(
            a.strike(1).unwrap(),
            HermitianMatrix::from_real_diagonal(&[1.0, 3.0])
        );
        let one = HermitianMatrix::from_real_diagonal(&[4.0]);
        assert_eq!(one.strike(0).unwrap().dim(), 0);
        assert!(matches!(
            a.strike(3),
            Err(Error::IndexOutOfRange { index: 3, dim: 3 })
        ));
    }

    #[test]
    fn unitary_check() {
        assert!(UnitaryMatrix::new(DenseMatrix::identity(4)).is_ok());
        let bad = DenseMatrix::from_real(2, 2, &[1.0, 0.1, 0.0, 1.0]).unwrap();
        assert!(matches!(
            UnitaryMatrix::new(bad),
            Err(Error::NotUnitary { .. })
        ));
    }
}
