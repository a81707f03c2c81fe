//! Subset sums A_J = Σ_{j∈J} A_j and the nonnegative weight decomposition
//! d(A_J) = Σ_{∅≠L⊆J} x_L.
//!
//! Subsets of {A_1, …, A_m} are bitmasks with bit i ↔ A_{i+1}.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gmf::{gmf, gmf_scale, GmfSpec, IMAG_TOL};
use crate::linalg::PsdMatrix;

pub const MAX_SUBSET_MATRICES: usize = 12;

/// A GMF value on a PSD input, with its noise floor 1e−9·scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DValue {
    pub value: f64,
    pub tol: f64,
}

impl DValue {
    /// d^r, reading values within the noise floor as zero when r < 1 and
    /// clamping tolerated negatives to zero.
    pub fn pow(self, r: f64) -> f64 {
        if self.value <= 0.0 || (r < 1.0 && self.value <= self.tol) {
            0.0
        } else {
            self.value.powf(r)
        }
    }

    pub fn clamped(self) -> f64 {
        self.value.max(0.0)
    }
}

/// Evaluates d on a PSD matrix and enforces the residue and sign bounds
/// that hold for PSD inputs.
pub fn evaluate(spec: &GmfSpec, a: &PsdMatrix) -> Result<DValue> {
    let v = gmf(spec, a.matrix())?;
    let tol = IMAG_TOL * gmf_scale(spec, a.matrix());
    if v.imag_residue > tol {
        return Err(Error::ImagResidue {
            residue: v.imag_residue,
            tolerance: tol,
        });
    }
    if v.value < -tol {
        return Err(Error::NegativeValue(v.value));
    }
    Ok(DValue {
        value: v.value,
        tol,
    })
}

/// Nonempty masks over m bits, by increasing popcount then numeric value.
pub fn canonical_masks(m: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1..(1u32 << m)).collect();
    masks.sort_by_key(|&x| (x.count_ones(), x));
    masks
}

/// 0-based member indices of `mask`.
pub fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn check_count(m: usize, min: usize) -> Result<()> {
    if m < min {
        return Err(Error::InvalidArgument(format!(
            "need at least {min} matrices, got {m}"
        )));
    }
    if m > MAX_SUBSET_MATRICES {
        return Err(Error::InvalidArgument(format!(
            "at most {MAX_SUBSET_MATRICES} matrices are supported, got {m}"
        )));
    }
    Ok(())
}

/// Sum of the matrices selected by `mask`.
pub fn subset_sum(matrices: &[PsdMatrix], mask: u32) -> PsdMatrix {
    PsdMatrix::sum(members(mask).into_iter().map(|i| &matrices[i])).expect("nonempty mask")
}

/// d(A_J) for every mask J; index 0 (empty sum) holds zero.
pub fn subset_values(spec: &GmfSpec, matrices: &[PsdMatrix]) -> Result<Vec<DValue>> {
    let m = matrices.len();
    check_count(m, 1)?;
    for a in matrices {
        if a.n() != spec.degree() {
            return Err(Error::DimensionMismatch {
                expected: spec.degree(),
                got: a.n(),
            });
        }
    }
    let mut out = vec![
        DValue {
            value: 0.0,
            tol: 0.0
        };
        1 << m
    ];
    for mask in 1..(1u32 << m) {
        out[mask as usize] = evaluate(spec, &subset_sum(matrices, mask))?;
    }
    Ok(out)
}

/// The weights {x_J} with d(A_J) = Σ_{∅≠L⊆J} x_L.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetWeights {
    pub m: usize,
    /// Indexed by mask; entry 0 is unused and zero.
    pub weights: Vec<f64>,
    /// max_J |d(A_J)|.
    pub scale: f64,
}

impl SubsetWeights {
    pub fn get(&self, mask: u32) -> f64 {
        self.weights[mask as usize]
    }

    /// (mask, x_J) in canonical order.
    pub fn ordered(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        canonical_masks(self.m)
            .into_iter()
            .map(|mask| (mask, self.weights[mask as usize]))
    }

    pub fn min_weight(&self) -> (u32, f64) {
        self.ordered().fold(
            (0, f64::INFINITY),
            |best, cur| if cur.1 < best.1 { cur } else { best },
        )
    }

    /// Nonnegativity tolerance 1e−8·(1 + max_J |d(A_J)|).
    pub fn tolerance(&self) -> f64 {
        1e-8 * (1.0 + self.scale)
    }
}

/// x_J = d(A_J) − Σ_{∅≠L⊊J} x_L, processed in canonical mask order.
pub fn decompose_from_values(m: usize, values: &[f64]) -> SubsetWeights {
    let mut weights = vec![0.0; 1 << m];
    for mask in canonical_masks(m) {
        let mut below = 0.0;
        let mut sub = (mask - 1) & mask;
        while sub > 0 {
            below += weights[sub as usize];
            sub = (sub - 1) & mask;
        }
        weights[mask as usize] = values[mask as usize] - below;
    }
    let scale = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    SubsetWeights { m, weights, scale }
}

pub fn decompose_subset_weights(spec: &GmfSpec, matrices: &[PsdMatrix]) -> Result<SubsetWeights> {
    let values: Vec<f64> = subset_values(spec, matrices)?
        .iter()
        .map(|d| d.value)
        .collect();
    Ok(decompose_from_values(matrices.len(), &values))
}
