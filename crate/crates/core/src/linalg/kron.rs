use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const MAX_KRON_DIM: usize = 4096;

/// Kronecker product A ⊗ B.
pub fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let (na, nb) = (a.n(), b.n());
    let dim = na * nb;
    if dim > MAX_KRON_DIM {
        return Err(Error::ResultTooLarge(dim));
    }
    Ok(Matrix::from_fn(dim, |i, j| {
        a[(i / nb, j / nb)] * b[(i % nb, j % nb)]
    }))
}

/// ⊗ᵏA for k ≥ 1.
pub fn kron_power(a: &Matrix, k: usize) -> Result<Matrix> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "Kronecker power must be at least 1".into(),
        ));
    }
    let dim = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(a.n()));
    match dim {
        Some(d) if d <= MAX_KRON_DIM => {}
        Some(d) => return Err(Error::ResultTooLarge(d)),
        None => return Err(Error::ResultTooLarge(usize::MAX)),
    }
    let mut out = a.clone();
    for _ in 1..k {
        out = kron(&out, a)?;
    }
    Ok(out)
}

/// A_1 ⊗ A_2 ⊗ … ⊗ A_k.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a Matrix>) -> Result<Matrix> {
    let mut it = factors.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty Kronecker product".into()))?;
    it.try_fold(first.clone(), |acc, x| kron(&acc, x))
}
