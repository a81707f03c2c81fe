use crate::gmf::GmfValue;
use crate::matrix::{Matrix, C64};

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(a: &Matrix) -> GmfValue {
    GmfValue::from_complex(determinant_complex(a))
}

pub(crate) fn determinant_complex(a: &Matrix) -> C64 {
    let n = a.n();
    let mut m: Vec<C64> = a.as_slice().to_vec();
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i * n + col].norm().total_cmp(&m[j * n + col].norm()))
            .expect("nonempty range");
        let p = m[pivot * n + col];
        if p.norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if pivot != col {
            for k in 0..n {
                m.swap(col * n + k, pivot * n + k);
            }
            det = -det;
        }
        det *= p;
        for row in col + 1..n {
            let factor = m[row * n + col] / p;
            if factor.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let v = m[col * n + k];
                m[row * n + k] -= factor * v;
            }
        }
    }
    det
}
