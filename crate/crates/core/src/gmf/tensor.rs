//! Tensor-space route to d_χ^G: d(A) = ⟨v, (⊗ⁿA) v⟩ with
//! v = |G|^{−1/2} Σ_σ χ(σ) e_{σ(1)} ⊗ … ⊗ e_{σ(n)} in C^{nⁿ}.
//!
//! ⊗ⁿA is never formed; it is applied as n successive mode products.
//! The identity holds for any square A because χ is a linear character.

use crate::error::{Error, Result};
use crate::gmf::{with_group, GmfSpec, GmfValue};
use crate::matrix::{Matrix, C64};

pub const MAX_TENSOR_DEGREE: usize = 6;

pub fn gmf_tensor_oracle(spec: &GmfSpec, a: &Matrix) -> Result<GmfValue> {
    let n = spec.degree();
    if a.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.n(),
        });
    }
    if n > MAX_TENSOR_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: MAX_TENSOR_DEGREE,
        });
    }
    let dim = n.pow(n as u32);
    let v = with_group(spec, |group, chars| {
        let norm = 1.0 / (group.len() as f64).sqrt();
        let mut v = vec![C64::new(0.0, 0.0); dim];
        for (sigma, chi) in group.elements().iter().zip(chars) {
            let idx = (0..n).fold(0usize, |acc, i| acc * n + sigma.apply(i));
            v[idx] += chi * norm;
        }
        v
    })?;

    let mut w = v.clone();
    let mut scratch = vec![C64::new(0.0, 0.0); n];
    for mode in 0..n {
        let stride = n.pow((n - 1 - mode) as u32);
        let outer = dim / (stride * n);
        for o in 0..outer {
            let base = o * stride * n;
            for inner in 0..stride {
                for (i, s) in scratch.iter_mut().enumerate() {
                    *s = (0..n)
                        .map(|j| a[(i, j)] * w[base + j * stride + inner])
                        .sum();
                }
                for (i, s) in scratch.iter().enumerate() {
                    w[base + i * stride + inner] = *s;
                }
            }
        }
    }
    let q: C64 = v.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
    Ok(GmfValue::from_complex(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_identity() {
        let r = gmf_tensor_oracle(&GmfSpec::Det(2), &Matrix::identity(2)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn per_ones() {
        let j = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let r = gmf_tensor_oracle(&GmfSpec::Per(2), &j).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_large_and_product() {
        assert!(matches!(
            gmf_tensor_oracle(&GmfSpec::Per(7), &Matrix::identity(7)),
            Err(Error::DegreeTooLarge { .. })
        ));
        let p = GmfSpec::product(vec![GmfSpec::Det(1), GmfSpec::Per(1)]).unwrap();
        assert!(gmf_tensor_oracle(&p, &Matrix::identity(2)).is_err());
    }
}
