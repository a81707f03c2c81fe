//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, C64};

pub const MAX_EIG_DEGREE: usize = 64;
pub const MAX_SWEEPS: usize = 30;

/// Hermitian input tolerance, relative to ‖A‖_max.
const HERMITIAN_TOL: f64 = 1e-12;

/// A = U·diag(λ)·U* with λ ascending and U unitary.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl SpectralDecomposition {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// U·diag(f(λ))·U*.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let u = &self.eigenvectors;
        let n = u.n();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = Matrix::from_fn(n, |i, j| {
            (0..n).map(|k| u[(i, k)] * fl[k] * u[(j, k)].conj()).sum()
        });
        for i in 0..n {
            out[(i, i)].im = 0.0;
        }
        out
    }
}

pub fn hermitian_eig(a: &Matrix) -> Result<SpectralDecomposition> {
    let n = a.n();
    if n > MAX_EIG_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: MAX_EIG_DEGREE,
        });
    }
    let scale = a.max_abs();
    let dev = a.hermitian_deviation();
    if dev > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian(dev));
    }

    let mut w = a.hermitian_part();
    let mut v = Matrix::identity(n);
    let frob: f64 = w
        .as_slice()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();

    let mut converged = n <= 1;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&w) <= f64::EPSILON * frob {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut w, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&w) > f64::EPSILON * frob {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].re.total_cmp(&w[(j, j)].re).then(i.cmp(&j)));
    let eigenvalues = order.iter().map(|&i| w[(i, i)].re).collect();
    let eigenvectors = Matrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(w: &Matrix) -> f64 {
    let n = w.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += w[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating w[p][q].
///
/// With w[p][q] = |b|e^{iφ}, the unitary U = diag(1, e^{−iφ})·R (restricted to
/// rows/cols p, q) turns the pivot block real symmetric and R is the classic
/// real rotation. W ← U*WU and V ← VU.
fn rotate(w: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let n = w.n();
    let b = w[(p, q)];
    let mag = b.norm();
    if mag == 0.0 {
        return;
    }
    let phase = b / mag;
    let app = w[(p, p)].re;
    let aqq = w[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let pc = phase.conj();

    // U entries on the (p, q) block.
    let upp = C64::new(c, 0.0);
    let upq = C64::new(s, 0.0);
    let uqp = -pc * s;
    let uqq = pc * c;

    for k in 0..n {
        let wkp = w[(k, p)];
        let wkq = w[(k, q)];
        w[(k, p)] = wkp * upp + wkq * uqp;
        w[(k, q)] = wkp * upq + wkq * uqq;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
    for k in 0..n {
        let wpk = w[(p, k)];
        let wqk = w[(q, k)];
        w[(p, k)] = upp.conj() * wpk + uqp.conj() * wqk;
        w[(q, k)] = upq.conj() * wpk + uqq.conj() * wqk;
    }
    w[(p, q)] = C64::new(0.0, 0.0);
    w[(q, p)] = C64::new(0.0, 0.0);
    w[(p, p)].im = 0.0;
    w[(q, q)].im = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(d: &SpectralDecomposition) -> Matrix {
        d.apply(|l| l)
    }

    #[test]
    fn identity_eigenvalues() {
        let d = hermitian_eig(&Matrix::identity(3)).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_eigenvalues_sorted() {
        let d = hermitian_eig(&Matrix::diag(&[4.0, 1.0])).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0, 4.0]);
        let u = &d.eigenvectors;
        assert!((u[(1, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((u[(0, 1)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_symmetric() {
        let a = Matrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let d = hermitian_eig(&a).unwrap();
        assert!((d.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((d.eigenvalues[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        // [[2, i], [−i, 2]] has eigenvalues 1 and 3.
        let a = Matrix::from_rows(&[
            vec![C64::new(2.0, 0.0), C64::new(0.0, 1.0)],
            vec![C64::new(0.0, -1.0), C64::new(2.0, 0.0)],
        ])
        .unwrap();
        let d = hermitian_eig(&a).unwrap();
        assert!((d.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((d.eigenvalues[1] - 3.0).abs() < 1e-14);
        assert!(reconstruct(&d).max_abs_diff(&a) < 1e-13);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn rejects_oversized() {
        let a = Matrix::identity(65);
        assert!(matches!(
            hermitian_eig(&a),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn empty_and_scalar() {
        assert!(hermitian_eig(&Matrix::zeros(0))
            .unwrap()
            .eigenvalues
            .is_empty());
        assert_eq!(
            hermitian_eig(&Matrix::scalar(-2.5)).unwrap().eigenvalues,
            vec![-2.5]
        );
    }
}
