use std::ops::{Add, Deref};

use crate::error::{Error, Result};
use crate::linalg::eig::hermitian_eig;
use crate::matrix::Matrix;

/// Relative Hermitian tolerance for certified PSD matrices.
pub const PSD_HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalue floor, relative to (1 + ‖A‖_max).
pub const PSD_EIGEN_TOL: f64 = 1e-10;

/// A Hermitian matrix certified positive semidefinite within tolerance.
///
/// The stored matrix is exactly Hermitian: the input is replaced by its
/// Hermitian part after the check.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdMatrix(Matrix);

impl PsdMatrix {
    pub fn new(a: Matrix) -> Result<Self> {
        let scale = a.max_abs();
        let dev = a.hermitian_deviation();
        if dev > PSD_HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian(dev));
        }
        let h = a.hermitian_part();
        let min = hermitian_eig(&h)?.min_eigenvalue();
        if min < -PSD_EIGEN_TOL * (1.0 + scale) {
            return Err(Error::NotPsd(min));
        }
        Ok(Self(h))
    }

    /// B*B, which is PSD by construction.
    pub fn gram(b: &Matrix) -> Self {
        Self((&b.adjoint() * b).hermitian_part())
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn scalar(x: f64) -> Result<Self> {
        Self::new(Matrix::scalar(x))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// cA for c ≥ 0.
    pub fn scale(&self, c: f64) -> Result<Self> {
        if c < 0.0 || !c.is_finite() {
            return Err(Error::NegativeEntry(c));
        }
        Ok(Self(self.0.scale(c)))
    }

    /// diag(X_1, …, X_k), PSD whenever every block is.
    pub fn block_diagonal(blocks: &[PsdMatrix]) -> Self {
        let raw: Vec<Matrix> = blocks.iter().map(|b| b.0.clone()).collect();
        Self(crate::gmf::block_diagonal(&raw))
    }

    /// Sum of a nonempty list; PSD matrices are closed under addition.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a PsdMatrix>) -> Option<PsdMatrix> {
        let mut it = items.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, x| &acc + x))
    }
}

impl Deref for PsdMatrix {
    type Target = Matrix;
    fn deref(&self) -> &Matrix {
        &self.0
    }
}

impl Add for &PsdMatrix {
    type Output = PsdMatrix;
    fn add(self, rhs: &PsdMatrix) -> PsdMatrix {
        PsdMatrix(&self.0 + &rhs.0)
    }
}

/// Hermitian within `tol·(1+‖A‖_max)` and λ_min ≥ −tol·(1+‖A‖_max).
pub fn is_psd(a: &Matrix, tol: f64) -> bool {
    let bound = tol * (1.0 + a.max_abs());
    if a.hermitian_deviation() > bound {
        return false;
    }
    match hermitian_eig(&a.hermitian_part()) {
        Ok(d) => d.min_eigenvalue() >= -bound,
        Err(_) => false,
    }
}

/// Principal p-th root U·Λ^{1/p}·U*, clamping negative eigenvalues to 0.
pub fn matrix_root(a: &PsdMatrix, p: u32) -> Result<PsdMatrix> {
    if p == 0 {
        return Err(Error::InvalidArgument(
            "root order must be at least 1".into(),
        ));
    }
    if p == 1 {
        return Ok(a.clone());
    }
    let d = hermitian_eig(a.matrix())?;
    let inv = 1.0 / f64::from(p);
    let root = d.apply(|l| l.max(0.0).powf(inv));
    Ok(PsdMatrix(root.hermitian_part()))
}

/// X ≥ Y in the Loewner order, with λ_min(X − Y).
pub fn loewner_geq(x: &Matrix, y: &Matrix, tol: f64) -> Result<(bool, f64)> {
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            got: y.n(),
        });
    }
    let diff = x - y;
    let min = hermitian_eig(&diff.hermitian_part())?.min_eigenvalue();
    Ok((min >= -tol * (1.0 + diff.max_abs()), min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_psd, Field, RandomInstanceConfig};

    #[test]
    fn is_psd_cases() {
        assert!(is_psd(&Matrix::identity(2), 1e-10));
        let nilpotent = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(!is_psd(&nilpotent, 1e-10));
        let indefinite = Matrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(!is_psd(&indefinite, 1e-10));
    }

    #[test]
    fn psd_new_rejects() {
        let indefinite = Matrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(matches!(PsdMatrix::new(indefinite), Err(Error::NotPsd(_))));
        let nonherm = Matrix::from_real_rows(&[vec![1.0, 0.5], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            PsdMatrix::new(nonherm),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn root_of_identity_and_diagonal() {
        for p in 1..5 {
            let r = matrix_root(&PsdMatrix::identity(3), p).unwrap();
            assert!(r.max_abs_diff(&Matrix::identity(3)) < 1e-15);
        }
        let d = PsdMatrix::new(Matrix::diag(&[4.0, 9.0])).unwrap();
        let r = matrix_root(&d, 2).unwrap();
        assert!(r.max_abs_diff(&Matrix::diag(&[2.0, 3.0])) < 1e-14);
    }

    #[test]
    fn cube_root_round_trip() {
        let cfg = RandomInstanceConfig {
            n: 4,
            m: 5,
            seed: 11,
            scale: 2.0,
            field: Field::Complex,
        };
        for a in random_psd(&cfg) {
            let r = matrix_root(&a, 3).unwrap();
            let cube = &(r.matrix() * r.matrix()) * r.matrix();
            assert!(cube.max_abs_diff(&a) <= 1e-8 * (1.0 + a.max_abs()));
        }
    }

    #[test]
    fn loewner_cases() {
        let i = Matrix::identity(2);
        let two = i.scale(2.0);
        let (ok, min) = loewner_geq(&two, &i, 1e-10).unwrap();
        assert!(ok);
        assert!((min - 1.0).abs() < 1e-15);
        assert!(!loewner_geq(&i, &two, 1e-10).unwrap().0);
        assert!(loewner_geq(&i, &Matrix::identity(3), 1e-10).is_err());
    }
}
