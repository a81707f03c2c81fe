//! Hermitian/PSD matrix algebra.

pub mod eig;
pub mod kron;
pub mod psd;
pub mod random;

pub use eig::{hermitian_eig, SpectralDecomposition, MAX_EIG_DEGREE};
pub use kron::{kron, kron_all, kron_power};
pub use psd::{is_psd, loewner_geq, matrix_root, PsdMatrix};
pub use random::{random_psd, Field, RandomInstanceConfig};
