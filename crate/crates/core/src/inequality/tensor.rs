//! Operator inequalities between Kronecker powers, checked in the Loewner
//! order through the smallest eigenvalue of LHS − RHS.

use crate::error::{Error, Result};
use crate::inequality::report::{instance_digest, Params, SlackReport, SLACK_TOL};
use crate::linalg::{kron_all, kron_power, loewner_geq, PsdMatrix, MAX_EIG_DEGREE};
use crate::matrix::Matrix;

/// Largest Kronecker dimension the eigenvalue check accepts.
pub const MAX_TENSOR_SLACK_DIM: usize = MAX_EIG_DEGREE;

fn check_dim(size: usize, power: usize) -> Result<()> {
    if power == 0 {
        return Err(Error::InvalidArgument("tensor power must be >= 1".into()));
    }
    let dim = (size as u128)
        .checked_pow(power as u32)
        .unwrap_or(u128::MAX);
    if dim > MAX_TENSOR_SLACK_DIM as u128 {
        return Err(Error::ResultTooLarge(dim.min(usize::MAX as u128) as usize));
    }
    Ok(())
}

fn sum_all(items: &[Matrix]) -> Matrix {
    items[1..].iter().fold(items[0].clone(), |acc, x| &acc + x)
}

fn operator_report(
    id: &str,
    lhs: &[Matrix],
    rhs: &[Matrix],
    params: Params,
    digest: String,
) -> Result<SlackReport> {
    let (x, y) = (sum_all(lhs), sum_all(rhs));
    let tol = SLACK_TOL * (1.0 + x.max_abs().max(y.max_abs()));
    let (_, min) = loewner_geq(&x, &y, 0.0)?;
    Ok(SlackReport::with_tolerance(
        id, "tensor", params, min, 0.0, tol, digest,
    ))
}

/// λ_min(⊗ⁿ(A+B) − ⊗ⁿA − ⊗ⁿB).
pub fn slack_tensor_two(a: &PsdMatrix, b: &PsdMatrix, n: usize) -> Result<SlackReport> {
    check_dim(a.n(), n)?;
    let ab = a.matrix() + b.matrix();
    operator_report(
        "tensor_two",
        &[kron_power(&ab, n)?],
        &[kron_power(a, n)?, kron_power(b, n)?],
        Params {
            n: Some(n),
            ..Default::default()
        },
        instance_digest([a.matrix(), b.matrix()]),
    )
}

/// λ_min of ⊗ⁿ(A+B+C) + ⊗ⁿA + ⊗ⁿB + ⊗ⁿC − ⊗ⁿ(A+B) − ⊗ⁿ(A+C) − ⊗ⁿ(B+C).
pub fn slack_tensor_three(
    a: &PsdMatrix,
    b: &PsdMatrix,
    c: &PsdMatrix,
    n: usize,
) -> Result<SlackReport> {
    slack_tensor_blocks(&[(a.clone(), b.clone(), c.clone())], &[n]).map(|mut r| {
        r.inequality_id = "tensor_three".into();
        r.params.blocks = None;
        r.params.n = Some(n);
        r
    })
}

/// Mixed-size form: with one PSD triple (A_i, B_i, C_i) ∈ M_{n_i} and a
/// power k_i per factor, compares
/// ⊗_i ⊗^{k_i}(A_i+B_i+C_i) + ⊗_i ⊗^{k_i}A_i + ⊗_i ⊗^{k_i}B_i + ⊗_i ⊗^{k_i}C_i
/// against the three pairwise-sum terms.
pub fn slack_tensor_blocks(
    triples: &[(PsdMatrix, PsdMatrix, PsdMatrix)],
    powers: &[usize],
) -> Result<SlackReport> {
    if triples.is_empty() || triples.len() != powers.len() {
        return Err(Error::BlockCountMismatch {
            expected: triples.len(),
            got: powers.len(),
        });
    }
    let mut dim: u128 = 1;
    for ((a, b, c), &k) in triples.iter().zip(powers) {
        if b.n() != a.n() || c.n() != a.n() {
            return Err(Error::DimensionMismatch {
                expected: a.n(),
                got: if b.n() != a.n() { b.n() } else { c.n() },
            });
        }
        check_dim(a.n(), k)?;
        dim = dim.saturating_mul((a.n() as u128).pow(k as u32));
    }
    if dim > MAX_TENSOR_SLACK_DIM as u128 {
        return Err(Error::ResultTooLarge(dim.min(usize::MAX as u128) as usize));
    }

    // Each term picks a subset of {A, B, C} per factor, identified by mask.
    let term = |mask: u8| -> Result<Matrix> {
        let factors: Vec<Matrix> = triples
            .iter()
            .zip(powers)
            .map(|((a, b, c), &k)| {
                let mut s = Matrix::zeros(a.n());
                for (bit, x) in [a, b, c].into_iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        s = &s + x.matrix();
                    }
                }
                kron_power(&s, k)
            })
            .collect::<Result<_>>()?;
        kron_all(factors.iter())
    };
    let lhs = [term(7)?, term(1)?, term(2)?, term(4)?];
    let rhs = [term(3)?, term(5)?, term(6)?];
    let digest = instance_digest(
        triples
            .iter()
            .flat_map(|(a, b, c)| [a.matrix(), b.matrix(), c.matrix()]),
    );
    operator_report(
        "prop4_3",
        &lhs,
        &rhs,
        Params {
            blocks: Some(triples.iter().map(|t| t.0.n()).collect()),
            ..Default::default()
        },
        digest,
    )
}
