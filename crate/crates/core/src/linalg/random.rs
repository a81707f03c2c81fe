//! Seeded, portable generation of random PSD instances.
//!
//! The generator is SplitMix64 (state += 0x9e3779b97f4a7c15, then the
//! Stafford "Mix13" finalizer). It is simple enough to reimplement bit for
//! bit in any language:
//!
//! ```text
//! next():  x = x + 0x9e3779b97f4a7c15          (mod 2^64)
//!          z = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9
//!          z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//!          return z ^ (z >> 31)
//! uniform: (next() >> 11) * 2^-53               in [0, 1)
//! mix(seed, i) = first next() of a generator seeded with
//!                seed ^ (first next() of a generator seeded with i)
//! ```
//!
//! Matrix `i` of an instance is drawn from the substream `mix(seed, i)`.
//! B is filled row-major; for the real field each entry is
//! `(2u − 1)·√scale`, for the complex field each entry consumes two draws,
//! real part first, each `(2u − 1)·√(scale/2)`. The returned matrix is B*B.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::psd::PsdMatrix;
use crate::matrix::{Matrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomInstanceConfig {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub scale: f64,
    pub field: Field,
}

impl RandomInstanceConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::InvalidArgument(
                "instance config needs n >= 1 and m >= 1".into(),
            ));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidArgument("scale must be positive".into()));
        }
        Ok(())
    }
}

/// Deterministic seed for substream `index` of `seed`.
pub fn mix(seed: u64, index: u64) -> u64 {
    let h = SplitMix64::seed_from_u64(index).next_u64();
    SplitMix64::seed_from_u64(seed ^ h).next_u64()
}

/// Uniform draws in [0, 1) with 53 bits of precision.
pub struct UniformStream(SplitMix64);

impl UniformStream {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [−1, 1).
    pub fn next_signed(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}

/// Dense matrix with entries `(2u − 1)·√scale` (split between real and
/// imaginary parts for the complex field).
pub fn random_square(n: usize, field: Field, scale: f64, stream: &mut UniformStream) -> Matrix {
    match field {
        Field::Real => {
            let s = scale.sqrt();
            Matrix::from_fn(n, |_, _| C64::new(stream.next_signed() * s, 0.0))
        }
        Field::Complex => {
            let s = (scale / 2.0).sqrt();
            Matrix::from_fn(n, |_, _| {
                let re = stream.next_signed() * s;
                let im = stream.next_signed() * s;
                C64::new(re, im)
            })
        }
    }
}

/// `config.m` Gram matrices B*B, matrix i drawn from substream `mix(seed, i)`.
pub fn random_psd(config: &RandomInstanceConfig) -> Vec<PsdMatrix> {
    (0..config.m as u64)
        .map(|i| {
            let mut stream = UniformStream::new(mix(config.seed, i));
            PsdMatrix::gram(&random_square(
                config.n,
                config.field,
                config.scale,
                &mut stream,
            ))
        })
        .collect()
}
