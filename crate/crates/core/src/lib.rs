//! Generalized matrix functions on positive semidefinite matrices, and
//! numerical checks of the inequalities they satisfy under sums.
//!
//! The crate is organised bottom-up:
//!
//! - [`permchar`]: permutation groups and their linear characters.
//! - [`matrix`], [`linalg`]: dense complex matrices, a Hermitian
//!   eigensolver, PSD certification, Kronecker powers and seeded sampling.
//! - [`gmf`]: d_χ^G(A) by enumeration, Ryser's formula, elimination and
//!   a tensor-space oracle.
//! - [`majorization`]: weak majorization and power sums.
//! - [`inequality`]: slack functionals producing [`SlackReport`]s.
//! - [`search`]: seeded random search, r-scans and example reproduction.

pub mod error;
pub mod gmf;
pub mod inequality;
pub mod linalg;
pub mod majorization;
pub mod matrix;
pub mod permchar;
pub mod search;

pub use error::{Error, Result};
pub use gmf::{gmf, GmfSpec, GmfValue};
pub use inequality::{SlackReport, Verdict};
pub use linalg::PsdMatrix;
pub use matrix::{Matrix, C64};
