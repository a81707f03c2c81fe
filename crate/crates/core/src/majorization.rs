//! Weak majorization, majorization and power sums.

use crate::error::{Error, Result};

const MAJORIZATION_TOL: f64 = 1e-9;

/// A finite real vector.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if let Some(x) = entries.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite entry {x}")));
        }
        Ok(Self(entries))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Sorted descending (ties by original index), zero-padded to `len`.
fn sorted_desc(x: &[f64], len: usize) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&i, &j| x[j].total_cmp(&x[i]).then(i.cmp(&j)));
    let mut out: Vec<f64> = idx.into_iter().map(|i| x[i]).collect();
    out.resize(len, 0.0);
    // Padding zeros may belong ahead of negative entries.
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

/// Partial sums (S_k(u), S_k(v)) of the descending rearrangements.
fn partial_sums(v: &[f64], u: &[f64]) -> Vec<(f64, f64)> {
    let len = v.len().max(u.len());
    let (sv, su) = (sorted_desc(v, len), sorted_desc(u, len));
    let (mut pv, mut pu) = (0.0, 0.0);
    sv.iter()
        .zip(&su)
        .map(|(a, b)| {
            pv += a;
            pu += b;
            (pu, pv)
        })
        .collect()
}

/// min_k (S_k(v) − S_k(u)); negative iff some partial sum of u exceeds v's.
pub fn majorization_gap(v: &[f64], u: &[f64]) -> f64 {
    partial_sums(v, u)
        .into_iter()
        .map(|(pu, pv)| pv - pu)
        .fold(f64::INFINITY, f64::min)
}

/// u ≺_w v: every sum of the k largest entries of u is at most that of v.
pub fn weak_majorizes(v: &[f64], u: &[f64]) -> bool {
    partial_sums(v, u)
        .into_iter()
        .all(|(pu, pv)| pu <= pv + MAJORIZATION_TOL * (1.0 + pu.abs().max(pv.abs())))
}

/// u ≺ v: weak majorization with equal totals.
pub fn majorizes(v: &[f64], u: &[f64]) -> bool {
    let (tv, tu): (f64, f64) = (v.iter().sum(), u.iter().sum());
    weak_majorizes(v, u) && (tv - tu).abs() <= MAJORIZATION_TOL * (1.0 + tv.abs().max(tu.abs()))
}

/// Σ u_i^p for nonnegative u and p ≥ 1.
pub fn power_sum(u: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "power sum exponent {p} must be >= 1"
        )));
    }
    u.iter().try_fold(0.0, |acc, &x| {
        if x < 0.0 || !x.is_finite() {
            Err(Error::NegativeEntry(x))
        } else {
            Ok(acc + x.powf(p))
        }
    })
}
