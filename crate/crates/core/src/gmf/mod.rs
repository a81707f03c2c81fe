//! Generalized matrix functions d_χ^G(A) = Σ_{σ∈G} χ(σ) Π_i a_{i,σ(i)}.
//!
//! Values are computed in complex arithmetic. For Hermitian inputs the exact
//! value is real; [`GmfValue`] keeps the real part and records how large the
//! discarded imaginary part was.

mod det;
mod ryser;
mod tensor;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, C64};
use crate::permchar::{GroupCharacter, LinearCharacter, PermutationGroup};

pub use det::determinant;
pub use ryser::{permanent_ryser, MAX_RYSER_DEGREE};
pub use tensor::{gmf_tensor_oracle, MAX_TENSOR_DEGREE};

/// Largest degree evaluated by direct enumeration over the group.
pub const MAX_NAIVE_DEGREE: usize = 8;

/// Relative imaginary-residue tolerance (times [`gmf_scale`]).
pub const IMAG_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmfValue {
    pub value: f64,
    pub imag_residue: f64,
}

impl GmfValue {
    pub fn from_complex(z: C64) -> Self {
        Self {
            value: z.re,
            imag_residue: z.im.abs(),
        }
    }
}

/// Which generalized matrix function to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub enum GmfSpec {
    Det(usize),
    Per(usize),
    Custom {
        label: String,
        gc: GroupCharacter,
    },
    /// d(X_1, …, X_k) = d_1(X_1)⋯d_k(X_k); sub-specs are never products.
    Product(Vec<GmfSpec>),
}

impl GmfSpec {
    pub fn custom(label: impl Into<String>, gc: GroupCharacter) -> Self {
        GmfSpec::Custom {
            label: label.into(),
            gc,
        }
    }

    /// C_n with character index k, labelled `cyclic{n}:{k}`.
    pub fn cyclic(n: usize, k: usize) -> Result<Self> {
        Ok(Self::custom(
            format!("cyclic{n}:{k}"),
            GroupCharacter::cyclic(n, k)?,
        ))
    }

    /// ⟨(0 1)⟩ ≤ S_n with the sign character.
    pub fn transposition_sign(n: usize) -> Result<Self> {
        Ok(Self::custom(
            format!("transposition{n}"),
            GroupCharacter::transposition_sign(n)?,
        ))
    }

    pub fn product(blocks: Vec<GmfSpec>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidArgument(
                "product needs at least one block".into(),
            ));
        }
        for b in &blocks {
            if matches!(b, GmfSpec::Product(_)) {
                return Err(Error::InvalidArgument(
                    "nested products are not supported".into(),
                ));
            }
            if b.degree() == 0 {
                return Err(Error::InvalidArgument(
                    "product block degrees must be >= 1".into(),
                ));
            }
        }
        Ok(GmfSpec::Product(blocks))
    }

    /// Matrix size this spec acts on; for products, the sum of block sizes.
    pub fn degree(&self) -> usize {
        match self {
            GmfSpec::Det(n) | GmfSpec::Per(n) => *n,
            GmfSpec::Custom { gc, .. } => gc.group.degree(),
            GmfSpec::Product(blocks) => blocks.iter().map(GmfSpec::degree).sum(),
        }
    }

    pub fn block_degrees(&self) -> Vec<usize> {
        match self {
            GmfSpec::Product(blocks) => blocks.iter().map(GmfSpec::degree).collect(),
            other => vec![other.degree()],
        }
    }

    /// Same kind of function at a different degree, where that makes sense.
    pub fn with_degree(&self, n: usize) -> Result<Self> {
        match self {
            GmfSpec::Det(_) => Ok(GmfSpec::Det(n)),
            GmfSpec::Per(_) => Ok(GmfSpec::Per(n)),
            other if other.degree() == n => Ok(other.clone()),
            other => Err(Error::DimensionMismatch {
                expected: other.degree(),
                got: n,
            }),
        }
    }

    /// Stable identifier used in reports.
    pub fn id(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GmfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GmfSpec::Det(_) => f.write_str("det"),
            GmfSpec::Per(_) => f.write_str("per"),
            GmfSpec::Custom { label, .. } => write!(f, "custom:{label}"),
            GmfSpec::Product(blocks) => {
                for (i, b) in blocks.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{b}")?;
                }
                Ok(())
            }
        }
    }
}

fn check_square(spec_degree: usize, a: &Matrix) -> Result<()> {
    if a.n() != spec_degree {
        return Err(Error::DimensionMismatch {
            expected: spec_degree,
            got: a.n(),
        });
    }
    Ok(())
}

fn symmetric_group(n: usize) -> Result<Arc<(PermutationGroup, LinearCharacter)>> {
    static CACHE: [OnceLock<Arc<(PermutationGroup, LinearCharacter)>>; MAX_NAIVE_DEGREE + 1] =
        [const { OnceLock::new() }; MAX_NAIVE_DEGREE + 1];
    if n > MAX_NAIVE_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: MAX_NAIVE_DEGREE,
        });
    }
    Ok(CACHE[n]
        .get_or_init(|| {
            let g = PermutationGroup::symmetric(n).expect("S_n for n <= 8 fits the cap");
            let sign = LinearCharacter::sign(&g);
            Arc::new((g, sign))
        })
        .clone())
}

/// Group, and per-element character values, for a non-product spec.
pub(crate) fn with_group<T>(
    spec: &GmfSpec,
    f: impl FnOnce(&PermutationGroup, &mut dyn Iterator<Item = C64>) -> T,
) -> Result<T> {
    match spec {
        GmfSpec::Det(n) => {
            let sg = symmetric_group(*n)?;
            Ok(f(&sg.0, &mut sg.1.values().iter().copied()))
        }
        GmfSpec::Per(n) => {
            let sg = symmetric_group(*n)?;
            Ok(f(&sg.0, &mut std::iter::repeat(C64::new(1.0, 0.0))))
        }
        GmfSpec::Custom { gc, .. } => Ok(f(&gc.group, &mut gc.character.values().iter().copied())),
        GmfSpec::Product(_) => Err(Error::InvalidArgument(
            "product specs are evaluated block by block".into(),
        )),
    }
}

/// Direct enumeration Σ_σ χ(σ) Π_i a_{i,σ(i)}.
pub fn gmf_naive(spec: &GmfSpec, a: &Matrix) -> Result<GmfValue> {
    Ok(GmfValue::from_complex(naive_complex(spec, a)?))
}

fn naive_complex(spec: &GmfSpec, a: &Matrix) -> Result<C64> {
    let n = spec.degree();
    check_square(n, a)?;
    if n > MAX_NAIVE_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: MAX_NAIVE_DEGREE,
        });
    }
    with_group(spec, |group, chars| {
        let mut total = C64::new(0.0, 0.0);
        for (sigma, chi) in group.elements().iter().zip(chars) {
            let mut term = chi;
            for i in 0..n {
                term *= a[(i, sigma.apply(i))];
            }
            total += term;
        }
        total
    })
}

fn complex_value(spec: &GmfSpec, a: &Matrix) -> Result<C64> {
    match spec {
        GmfSpec::Det(n) => {
            check_square(*n, a)?;
            Ok(det::determinant_complex(a))
        }
        GmfSpec::Per(n) => {
            check_square(*n, a)?;
            ryser::permanent_complex(a)
        }
        GmfSpec::Custom { .. } => naive_complex(spec, a),
        GmfSpec::Product(blocks) => {
            let parts = diagonal_blocks(a, &spec.block_degrees())?;
            product_complex(blocks, &parts)
        }
    }
}

/// Dispatching evaluator: determinant by elimination, permanent by Ryser,
/// custom characters by enumeration. A product spec reads its blocks off the
/// block diagonal of `a`.
pub fn gmf(spec: &GmfSpec, a: &Matrix) -> Result<GmfValue> {
    Ok(GmfValue::from_complex(complex_value(spec, a)?))
}

fn product_complex(specs: &[GmfSpec], blocks: &[Matrix]) -> Result<C64> {
    if specs.len() != blocks.len() {
        return Err(Error::BlockCountMismatch {
            expected: specs.len(),
            got: blocks.len(),
        });
    }
    specs
        .iter()
        .zip(blocks)
        .try_fold(C64::new(1.0, 0.0), |acc, (s, x)| {
            Ok(acc * complex_value(s, x)?)
        })
}

/// d_1(X_1)⋯d_k(X_k) for a product spec.
pub fn product_gmf(spec: &GmfSpec, blocks: &[Matrix]) -> Result<GmfValue> {
    match spec {
        GmfSpec::Product(specs) => Ok(GmfValue::from_complex(product_complex(specs, blocks)?)),
        _ => Err(Error::InvalidArgument(
            "product_gmf needs a product spec".into(),
        )),
    }
}

/// Principal diagonal blocks of sizes `sizes`.
pub fn diagonal_blocks(a: &Matrix, sizes: &[usize]) -> Result<Vec<Matrix>> {
    let total: usize = sizes.iter().sum();
    check_square(total, a)?;
    let mut offset = 0;
    Ok(sizes
        .iter()
        .map(|&s| {
            let block = Matrix::from_fn(s, |i, j| a[(offset + i, offset + j)]);
            offset += s;
            block
        })
        .collect())
}

/// Block-diagonal matrix diag(X_1, …, X_k).
pub fn block_diagonal(blocks: &[Matrix]) -> Matrix {
    let total = blocks.iter().map(Matrix::n).sum();
    let mut out = Matrix::zeros(total);
    let mut offset = 0;
    for b in blocks {
        for i in 0..b.n() {
            for j in 0..b.n() {
                out[(offset + i, offset + j)] = b[(i, j)];
            }
        }
        offset += b.n();
    }
    out
}

/// (max diagonal entry)^n, or the product of that over the blocks of a
/// product spec. Bounds |d(A)| for PSD A.
pub fn gmf_scale(spec: &GmfSpec, a: &Matrix) -> f64 {
    let sizes = spec.block_degrees();
    match diagonal_blocks(a, &sizes) {
        Ok(blocks) => blocks
            .iter()
            .map(|b| b.max_diagonal().powi(b.n() as i32))
            .product(),
        Err(_) => a.max_diagonal().powi(a.n() as i32),
    }
}
