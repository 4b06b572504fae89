use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, spectral_norm, DenseMatrix, HermitianMatrix};
use crate::tolerance::RESOLVENT_SEPARATION;

/// A Hermitian matrix split as `[[H1, E*], [E, H2]]` with `H1` of size `m`,
/// `H2` of size `n` and `E` of size `n x m`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockHermitian {
    h1: HermitianMatrix,
    h2: HermitianMatrix,
    e: DenseMatrix,
}

impl BlockHermitian {
    pub fn new(h1: HermitianMatrix, h2: HermitianMatrix, e: DenseMatrix) -> Result<Self> {
        if e.shape() != (h2.dim(), h1.dim()) {
            return Err(Error::Shape(format!(
                "coupling block must be {}x{}, got {}x{}",
                h2.dim(),
                h1.dim(),
                e.rows(),
                e.cols()
            )));
        }
        Ok(Self { h1, h2, e })
    }

    /// Splits `a` so that its first `m` rows and columns form `H1`.
    pub fn split(a: &HermitianMatrix, m: usize) -> Result<Self> {
        let n_total = a.dim();
        if m > n_total {
            return Err(Error::IndexOutOfRange {
                index: m,
                dim: n_total,
            });
        }
        let n = n_total - m;
        Ok(Self {
            h1: a.principal_block(0, m)?,
            h2: a.principal_block(m, n)?,
            e: a.as_matrix().block(m, 0, n, m)?,
        })
    }

    pub fn m(&self) -> usize {
        self.h1.dim()
    }

    pub fn n(&self) -> usize {
        self.h2.dim()
    }

    pub fn h1(&self) -> &HermitianMatrix {
        &self.h1
    }

    pub fn h2(&self) -> &HermitianMatrix {
        &self.h2
    }

    pub fn e(&self) -> &DenseMatrix {
        &self.e
    }

    /// `A = [[H1, E*], [E, H2]]`.
    pub fn assemble(&self) -> HermitianMatrix {
        let a = DenseMatrix::from_blocks(
            self.h1.as_matrix(),
            &self.e.adjoint(),
            &self.e,
            self.h2.as_matrix(),
        )
        .expect("conformal by construction");
        HermitianMatrix::new(a).expect("square")
    }

    /// `A` with the coupling removed, `H1 (+) H2`.
    pub fn decoupled(&self) -> HermitianMatrix {
        let zero = DenseMatrix::zeros(self.n(), self.m());
        let a = DenseMatrix::from_blocks(
            self.h1.as_matrix(),
            &zero.adjoint(),
            &zero,
            self.h2.as_matrix(),
        )
        .expect("conformal by construction");
        HermitianMatrix::new(a).expect("square")
    }
}

/// `M(lam) = H1 - lam I - E* (H2 - lam I)^{-1} E`.
///
/// The resolvent is applied through the eigendecomposition of `H2`. Fails
/// when `lam` is within `1e-10 ||A||` of an eigenvalue of `H2`, with `||A||`
/// taken as `max(||H1||, ||H2||) + ||E||`.
pub fn shifted_schur_complement(p: &BlockHermitian, lam: f64) -> Result<HermitianMatrix> {
    let (s2, v) = hermitian_eigen(p.h2())?;
    let norm_h1 = spectral_norm(p.h1().as_matrix())?;
    let norm_h2 = s2.values().iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let scale = norm_h1.max(norm_h2) + spectral_norm(p.e())?;

    let distance = s2
        .values()
        .iter()
        .map(|mu| (mu - lam).abs())
        .fold(f64::INFINITY, f64::min);
    if distance <= RESOLVENT_SEPARATION * scale {
        return Err(Error::SingularResolvent {
            shift: lam,
            distance,
        });
    }

    // W = V* E; E* (H2 - lam)^{-1} E = W* diag(1/(mu - lam)) W
    let w = v.as_matrix().adjoint_matmul(p.e())?;
    let scaled = DenseMatrix::from_fn(w.rows(), w.cols(), |i, j| {
        w[(i, j)] / (s2.values()[i] - lam)
    });
    let correction = w.adjoint_matmul(&scaled)?;

    let mut m = p.h1().shifted(lam).into_matrix();
    for (z, c) in m.as_mut_slice().iter_mut().zip(correction.as_slice()) {
        *z -= *c;
    }
    HermitianMatrix::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::formulas::exact_2x2;
    use crate::linalg::C64;

    fn scalar(x: f64) -> HermitianMatrix {
        HermitianMatrix::from_real_diagonal(&[x])
    }

    #[test]
    fn split_and_assemble_round_trip() {
        let a = HermitianMatrix::new(DenseMatrix::from_fn(4, 4, |i, j| {
            C64::new((i + 2 * j) as f64, i as f64 - j as f64)
        }))
        .unwrap();
        let p = BlockHermitian::split(&a, 1).unwrap();
        assert_eq!((p.m(), p.n()), (1, 3));
        assert_eq!(p.assemble(), a);
    }

    #[test]
    fn rejects_wrong_coupling_shape() {
        let err =
            BlockHermitian::new(scalar(1.0), scalar(0.0), DenseMatrix::zeros(2, 1)).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn zero_coupling_gives_shifted_h1() {
        let h1 = HermitianMatrix::from_real_diagonal(&[3.0, 2.0]);
        let p = BlockHermitian::new(h1.clone(), scalar(0.0), DenseMatrix::zeros(1, 2)).unwrap();
        assert_eq!(shifted_schur_complement(&p, 0.5).unwrap(), h1.shifted(0.5));
    }

    #[test]
    fn two_by_two_vanishes_at_top_eigenvalue() {
        let p = BlockHermitian::new(
            scalar(1.0),
            scalar(0.0),
            DenseMatrix::from_real(1, 1, &[0.1]).unwrap(),
        )
        .unwrap();
        let lam = exact_2x2(1.0, 0.0, 0.1).lambda_plus;
        let m = shifted_schur_complement(&p, lam).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.get(0, 0).norm() < 1e-12);
    }

    #[test]
    fn singular_resolvent_is_an_error() {
        let p = BlockHermitian::new(
            scalar(1.0),
            scalar(0.0),
            DenseMatrix::from_real(1, 1, &[0.1]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            shifted_schur_complement(&p, 0.0),
            Err(Error::SingularResolvent { .. })
        ));
    }
}
