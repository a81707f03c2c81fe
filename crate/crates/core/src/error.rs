use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group closure exceeded cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("group is not cyclic with the given generator (order {order}, group size {size})")]
    NotCyclic { order: usize, size: usize },
    #[error("character is not a homomorphism at elements ({0}, {1})")]
    NotAHomomorphism(usize, usize),
    #[error("character value at element {0} does not have unit modulus")]
    NotUnitModulus(usize),
    #[error("character has {got} values but the group has {expected} elements")]
    CharacterLength { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degree {degree} exceeds the limit {limit} for this engine")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("expected {expected} blocks, got {got}")]
    BlockCountMismatch { expected: usize, got: usize },
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("Jacobi eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("result dimension {0} exceeds the supported limit")]
    ResultTooLarge(usize),
    #[error("negative entry {0} where a nonnegative value is required")]
    NegativeEntry(f64),
    #[error("invalid levels: need 1 <= k < l < p <= m, got k={k}, l={l}, p={p}, m={m}")]
    BadLevels {
        k: usize,
        l: usize,
        p: usize,
        m: usize,
    },
    #[error("imaginary residue {residue:e} exceeds tolerance {tolerance:e}")]
    ImagResidue { residue: f64, tolerance: f64 },
    #[error("generalized matrix function value {0:e} is negative beyond tolerance")]
    NegativeValue(f64),
    #[error("reproduction failed for {example}: expected {expected}, got {actual}")]
    ReproductionFailed {
        example: String,
        expected: String,
        actual: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures that indicate numerical pathology rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence(_) | Error::ImagResidue { .. } | Error::NegativeValue(_)
        )
    }
}
