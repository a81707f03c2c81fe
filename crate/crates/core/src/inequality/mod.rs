//! Slack functionals: each inequality is evaluated as lhs − rhs on concrete
//! PSD inputs and classified against a relative tolerance.

mod convex;
mod report;
mod subsets;
mod tensor;

pub use convex::{ConvexFn, FnClass, REGISTERED as REGISTERED_FUNCTIONS};
pub use report::{instance_digest, Params, SlackReport, Verdict, SLACK_TOL};
pub use subsets::{
    binomial, canonical_masks, decompose_from_values, decompose_subset_weights, evaluate, members,
    subset_values, DValue, SubsetWeights, MAX_SUBSET_MATRICES,
};
pub use tensor::{slack_tensor_blocks, slack_tensor_three, slack_tensor_two, MAX_TENSOR_SLACK_DIM};

use crate::error::{Error, Result};
use crate::gmf::GmfSpec;
use crate::linalg::{matrix_root, PsdMatrix};

fn digest(matrices: &[PsdMatrix]) -> String {
    instance_digest(matrices.iter().map(PsdMatrix::matrix))
}

fn base_params(spec: &GmfSpec) -> Params {
    Params {
        n: Some(spec.degree()),
        ..Default::default()
    }
}

fn check_exponent(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "exponent r = {r} must be positive"
        )));
    }
    Ok(())
}

fn check_at_least_one(p: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidArgument(format!("exponent {p} must be >= 1")));
    }
    Ok(())
}

/// Σ_{|J|=j} g(d(A_J)) for j = 0..=m (entry 0 is 0).
fn sums_by_size(m: usize, values: &[DValue], g: impl Fn(DValue) -> f64) -> Vec<f64> {
    let mut out = vec![0.0; m + 1];
    for (mask, &v) in values.iter().enumerate().skip(1) {
        out[(mask as u32).count_ones() as usize] += g(v);
    }
    out
}

/// d(A+B)^p ≥ d(A)^p + d(B)^p.
pub fn slack_two_term_power(
    spec: &GmfSpec,
    a: &PsdMatrix,
    b: &PsdMatrix,
    p: f64,
) -> Result<SlackReport> {
    check_at_least_one(p)?;
    let mats = [a.clone(), b.clone()];
    let d = subset_values(spec, &mats)?;
    Ok(SlackReport::new(
        "two_term_power",
        &spec.id(),
        Params {
            r: Some(p),
            ..base_params(spec)
        },
        d[3].pow(p),
        d[1].pow(p) + d[2].pow(p),
        digest(&mats),
    ))
}

/// d((A+B)^{1/n})^p ≥ d(A^{1/n})^p + d(B^{1/n})^p with n the spec degree.
/// For the determinant this is det(A+B)^q ≥ det(A)^q + det(B)^q with
/// q = p/n, which is recorded in the report.
pub fn slack_root_superadditivity(
    spec: &GmfSpec,
    a: &PsdMatrix,
    b: &PsdMatrix,
    p: f64,
) -> Result<SlackReport> {
    check_at_least_one(p)?;
    let n = spec.degree();
    let order = u32::try_from(n).map_err(|_| Error::InvalidArgument("degree too large".into()))?;
    let root = |x: &PsdMatrix| matrix_root(x, order);
    let ab = &a.clone() + b;
    let lhs = evaluate(spec, &root(&ab)?)?.pow(p);
    let rhs = evaluate(spec, &root(a)?)?.pow(p) + evaluate(spec, &root(b)?)?.pow(p);
    let q = matches!(spec, GmfSpec::Det(_)).then(|| p / n as f64);
    Ok(SlackReport::new(
        "root_superadditivity",
        &spec.id(),
        Params {
            r: Some(p),
            q,
            ..base_params(spec)
        },
        lhs,
        rhs,
        digest(&[a.clone(), b.clone()]),
    ))
}

/// det(A+B)^q ≥ det(A)^q + det(B)^q for q ≥ 1/n.
pub fn slack_det_power(a: &PsdMatrix, b: &PsdMatrix, q: f64) -> Result<SlackReport> {
    let n = a.n();
    if n == 0 || !q.is_finite() || q * (n as f64) < 1.0 - 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "q = {q} must be at least 1/{n}"
        )));
    }
    slack_root_superadditivity(&GmfSpec::Det(n), a, b, (q * n as f64).max(1.0))
}

/// d(A+B+C) + d(A) ≥ d(A+B) + d(A+C).
pub fn slack_three_term_basic(
    spec: &GmfSpec,
    a: &PsdMatrix,
    b: &PsdMatrix,
    c: &PsdMatrix,
) -> Result<SlackReport> {
    three_term(spec, [a, b, c], None, |d| d.clamped())
}

/// Φ(d(A+B+C)) + Φ(d(A)) ≥ Φ(d(A+B)) + Φ(d(A+C)) for convex nondecreasing
/// Φ, the weak-majorization consequence of the basic three-term inequality.
pub fn slack_three_term_phi(
    spec: &GmfSpec,
    a: &PsdMatrix,
    b: &PsdMatrix,
    c: &PsdMatrix,
    phi: &ConvexFn,
) -> Result<SlackReport> {
    three_term(spec, [a, b, c], Some(phi.name().to_string()), |d| {
        phi.eval(d.clamped())
    })
}

fn three_term(
    spec: &GmfSpec,
    abc: [&PsdMatrix; 3],
    phi: Option<String>,
    g: impl Fn(DValue) -> f64,
) -> Result<SlackReport> {
    let mats: Vec<PsdMatrix> = abc.iter().map(|&x| x.clone()).collect();
    let d = subset_values(spec, &mats)?;
    Ok(SlackReport::new(
        "three_term",
        &spec.id(),
        Params {
            phi,
            ..base_params(spec)
        },
        g(d[7]) + g(d[1]),
        g(d[3]) + g(d[5]),
        digest(&mats),
    ))
}

fn three_matrix_with(
    id: &str,
    spec: &GmfSpec,
    abc: [&PsdMatrix; 3],
    params: Params,
    g: impl Fn(DValue) -> f64,
) -> Result<SlackReport> {
    let mats: Vec<PsdMatrix> = abc.iter().map(|&x| x.clone()).collect();
    let d = subset_values(spec, &mats)?;
    Ok(SlackReport::new(
        id,
        &spec.id(),
        params,
        g(d[7]) + g(d[1]) + g(d[2]) + g(d[4]),
        g(d[3]) + g(d[5]) + g(d[6]),
        digest(&mats),
    ))
}

/// d(A+B+C)^r + d(A)^r + d(B)^r + d(C)^r ≥ d(A+B)^r + d(A+C)^r + d(B+C)^r.
///
/// Any r > 0 is accepted so that the boundary of the valid range can be
/// probed; the inequality is only guaranteed for r ∈ {1} ∪ [2, ∞).
pub fn slack_theorem_2_1(
    spec: &GmfSpec,
    a: &PsdMatrix,
    b: &PsdMatrix,
    c: &PsdMatrix,
    r: f64,
) -> Result<SlackReport> {
    check_exponent(r)?;
    three_matrix_with(
        "theorem2_1",
        spec,
        [a, b, c],
        Params {
            r: Some(r),
            ..base_params(spec)
        },
        |d| d.pow(r),
    )
}

/// [`slack_theorem_2_1`] with Φ(d) in place of d^r.
pub fn slack_theorem_2_1_phi(
    spec: &GmfSpec,
    a: &PsdMatrix,
    b: &PsdMatrix,
    c: &PsdMatrix,
    phi: &ConvexFn,
) -> Result<SlackReport> {
    three_matrix_with(
        "theorem2_1",
        spec,
        [a, b, c],
        Params {
            phi: Some(phi.name().to_string()),
            ..base_params(spec)
        },
        |d| phi.eval(d.clamped()),
    )
}

/// Smallest class P_k for which Φ(d) may replace d^r in the three-matrix
/// inequality. x^r with 1 < r < 2 lies in P_2 but fails there, so P_3 is
/// required.
pub const THEOREM_2_1_PHI_CLASS: FnClass = FnClass::P(3);

/// Class required to replace d^r by Φ(d) in the m-matrix alternating sum.
pub fn alternating_phi_class(m: usize) -> FnClass {
    FnClass::P(m)
}

/// Class required to replace d^r by Φ(d) in the three-level inequality.
pub const THREE_LEVEL_PHI_CLASS: FnClass = FnClass::P(3);

fn alternating_with(
    spec: &GmfSpec,
    matrices: &[PsdMatrix],
    params: Params,
    g: impl Fn(DValue) -> f64,
) -> Result<SlackReport> {
    let m = matrices.len();
    subsets::check_count(m, 2)?;
    let d = subset_values(spec, matrices)?;
    let by_size = sums_by_size(m, &d, g);
    let (mut pos, mut neg) = (0.0, 0.0);
    for (j, s) in by_size.iter().enumerate().skip(1) {
        if (m - j).is_multiple_of(2) {
            pos += s;
        } else {
            neg += s;
        }
    }
    Ok(SlackReport::new(
        "theorem3_3",
        &spec.id(),
        Params {
            m: Some(m),
            ..params
        },
        pos,
        neg,
        digest(matrices),
    ))
}

/// Σ_{j=1}^m (−1)^{m−j} Σ_{|J|=j} d(A_J)^r ≥ 0, reported with the
/// positive-sign terms as lhs and the negative-sign terms as rhs.
/// Guaranteed for r ∈ {1, …, m−2} ∪ [m−1, ∞).
pub fn slack_alternating(spec: &GmfSpec, matrices: &[PsdMatrix], r: f64) -> Result<SlackReport> {
    check_exponent(r)?;
    alternating_with(
        spec,
        matrices,
        Params {
            r: Some(r),
            ..base_params(spec)
        },
        |d| d.pow(r),
    )
}

pub fn slack_alternating_phi(
    spec: &GmfSpec,
    matrices: &[PsdMatrix],
    phi: &ConvexFn,
) -> Result<SlackReport> {
    alternating_with(
        spec,
        matrices,
        Params {
            phi: Some(phi.name().to_string()),
            ..base_params(spec)
        },
        |d| phi.eval(d.clamped()),
    )
}

/// d(A_1+⋯+A_m) + (m−2) Σ_j d(A_j) ≥ Σ_{i<j} d(A_i + A_j).
pub fn slack_pairwise(spec: &GmfSpec, matrices: &[PsdMatrix]) -> Result<SlackReport> {
    let m = matrices.len();
    subsets::check_count(m, 3)?;
    let d = subset_values(spec, matrices)?;
    let by_size = sums_by_size(m, &d, |v| v.clamped());
    Ok(SlackReport::new(
        "pairwise",
        &spec.id(),
        Params {
            m: Some(m),
            ..base_params(spec)
        },
        by_size[m] + (m as f64 - 2.0) * by_size[1],
        by_size[2],
        digest(matrices),
    ))
}

/// Subset-size levels 1 ≤ k < ℓ < p ≤ m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Levels {
    pub k: usize,
    pub l: usize,
    pub p: usize,
}

impl Levels {
    pub fn new(k: usize, l: usize, p: usize) -> Self {
        Self { k, l, p }
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        let Levels { k, l, p } = *self;
        if 1 <= k && k < l && l < p && p <= m {
            Ok(())
        } else {
            Err(Error::BadLevels { k, l, p, m })
        }
    }
}

fn three_level_with(
    id: &str,
    spec: &GmfSpec,
    matrices: &[PsdMatrix],
    levels: Levels,
    params: Params,
    weight: impl Fn(usize) -> f64,
    g: impl Fn(DValue) -> f64,
) -> Result<SlackReport> {
    let m = matrices.len();
    subsets::check_count(m, 1)?;
    levels.validate(m)?;
    let d = subset_values(spec, matrices)?;
    let by_size = sums_by_size(m, &d, g);
    let t = |q: usize| by_size[q] / weight(q);
    let Levels { k, l, p } = levels;
    let (tk, tl, tp) = (t(k), t(l), t(p));
    let (lk, pl) = ((l - k) as f64, (p - l) as f64);
    Ok(SlackReport::new(
        id,
        &spec.id(),
        Params {
            m: Some(m),
            k: Some(k),
            l: Some(l),
            p: Some(p),
            ..params
        },
        lk * tp + pl * tk,
        (lk + pl) * tl,
        digest(matrices),
    ))
}

/// (ℓ−k)(t_p − t_ℓ) ≥ (p−ℓ)(t_ℓ − t_k) with
/// t_q = Σ_{|J|=q} d(A_J)^r / (q·C(m, q)); guaranteed for r ∈ {1} ∪ [2, ∞).
pub fn slack_three_level(
    spec: &GmfSpec,
    matrices: &[PsdMatrix],
    levels: Levels,
    r: f64,
) -> Result<SlackReport> {
    check_exponent(r)?;
    let m = matrices.len();
    three_level_with(
        "theorem3_5",
        spec,
        matrices,
        levels,
        Params {
            r: Some(r),
            ..base_params(spec)
        },
        |q| q as f64 * binomial(m, q),
        |d| d.pow(r),
    )
}

/// The three-level inequality with t_j = Σ_{|J|=j} Φ(d(A_J)) / C(m, j),
/// valid for every convex nondecreasing Φ.
pub fn slack_convex_three_level(
    spec: &GmfSpec,
    matrices: &[PsdMatrix],
    levels: Levels,
    phi: &ConvexFn,
) -> Result<SlackReport> {
    let m = matrices.len();
    three_level_with(
        "theorem4_2",
        spec,
        matrices,
        levels,
        Params {
            phi: Some(phi.name().to_string()),
            ..base_params(spec)
        },
        |q| binomial(m, q),
        |d| phi.eval(d.clamped()),
    )
}

/// d(A_1+⋯+A_m)^p ≥ Σ_j d(A_{I_j})^p for a partition {I_j} of the
/// 0-based indices 0..m.
pub fn slack_partition_schur(
    spec: &GmfSpec,
    matrices: &[PsdMatrix],
    partition: &[Vec<usize>],
    p: f64,
) -> Result<SlackReport> {
    check_at_least_one(p)?;
    let m = matrices.len();
    subsets::check_count(m, 1)?;
    let mut seen = vec![false; m];
    let mut blocks = Vec::with_capacity(partition.len());
    for block in partition {
        let mut mask = 0u32;
        if block.is_empty() {
            return Err(Error::InvalidArgument(
                "partition blocks must be nonempty".into(),
            ));
        }
        for &i in block {
            if i >= m || seen[i] {
                return Err(Error::InvalidArgument(format!(
                    "partition is not a partition of 0..{m}: index {i}"
                )));
            }
            seen[i] = true;
            mask |= 1 << i;
        }
        blocks.push(mask);
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidArgument(format!(
            "partition does not cover 0..{m}"
        )));
    }
    let d = subset_values(spec, matrices)?;
    let full = (1usize << m) - 1;
    Ok(SlackReport::new(
        "partition_schur",
        &spec.id(),
        Params {
            r: Some(p),
            m: Some(m),
            partition: Some(partition.to_vec()),
            ..base_params(spec)
        },
        d[full].pow(p),
        blocks.iter().map(|&b| d[b as usize].pow(p)).sum(),
        digest(matrices),
    ))
}

/// Nonnegativity of the subset weights: lhs = min_J x_J,
/// rhs = 0, tolerance 1e−8·(1 + max_J |d(A_J)|).
pub fn slack_subset_weights(spec: &GmfSpec, matrices: &[PsdMatrix]) -> Result<SlackReport> {
    let w = decompose_subset_weights(spec, matrices)?;
    let (_, min) = w.min_weight();
    Ok(SlackReport::with_tolerance(
        "lemma3_2",
        &spec.id(),
        Params {
            m: Some(matrices.len()),
            ..base_params(spec)
        },
        min,
        0.0,
        w.tolerance(),
        digest(matrices),
    ))
}

/// The three-matrix inequality for a product d_1(X_1)⋯d_k(X_k). Each
/// argument lists one PSD block per factor of `spec`.
pub fn slack_product_gmf(
    spec: &GmfSpec,
    a: &[PsdMatrix],
    b: &[PsdMatrix],
    c: &[PsdMatrix],
    r: f64,
) -> Result<SlackReport> {
    let GmfSpec::Product(_) = spec else {
        return Err(Error::InvalidArgument(
            "product_gmf needs a product spec".into(),
        ));
    };
    check_exponent(r)?;
    let degrees = spec.block_degrees();
    let assemble = |blocks: &[PsdMatrix]| -> Result<PsdMatrix> {
        if blocks.len() != degrees.len() {
            return Err(Error::BlockCountMismatch {
                expected: degrees.len(),
                got: blocks.len(),
            });
        }
        for (blk, &deg) in blocks.iter().zip(&degrees) {
            if blk.n() != deg {
                return Err(Error::DimensionMismatch {
                    expected: deg,
                    got: blk.n(),
                });
            }
        }
        Ok(PsdMatrix::block_diagonal(blocks))
    };
    let (a, b, c) = (assemble(a)?, assemble(b)?, assemble(c)?);
    three_matrix_with(
        "product_gmf",
        spec,
        [&a, &b, &c],
        Params {
            r: Some(r),
            blocks: Some(degrees.clone()),
            ..base_params(spec)
        },
        |d| d.pow(r),
    )
}

/// f(m, r) = Σ_{j=1}^m (−1)^{m−j} C(m, j) j^r, the m-th forward difference
/// of x ↦ x^r at 0.
pub fn finite_difference_f(m: usize, r: f64) -> f64 {
    (1..=m)
        .map(|j| {
            let sign = if (m - j).is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * binomial(m, j) * (j as f64).powf(r)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn one() -> PsdMatrix {
        PsdMatrix::scalar(1.0).unwrap()
    }

    fn ones2() -> PsdMatrix {
        PsdMatrix::new(Matrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap()).unwrap()
    }

    fn example_c(x: f64) -> PsdMatrix {
        PsdMatrix::new(Matrix::from_real_rows(&[vec![x, -x], vec![-x, x]]).unwrap()).unwrap()
    }

    fn scalars(m: usize) -> Vec<PsdMatrix> {
        vec![one(); m]
    }

    #[test]
    fn two_term_examples() {
        let r = slack_two_term_power(&GmfSpec::Det(1), &one(), &one(), 1.0).unwrap();
        assert_eq!(r.slack, 0.0);
        let r = slack_two_term_power(&GmfSpec::Per(2), &ones2(), &ones2(), 1.0).unwrap();
        assert!((r.slack - 4.0).abs() < 1e-12);
        assert!(slack_two_term_power(&GmfSpec::Per(2), &ones2(), &ones2(), 0.5).is_err());
    }

    #[test]
    fn root_examples() {
        let i = PsdMatrix::identity(2);
        let r = slack_det_power(&i, &i, 0.5).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-12 && (r.rhs - 2.0).abs() < 1e-12);
        assert_eq!(r.params.q, Some(0.5));
        let r = slack_root_superadditivity(&GmfSpec::Per(2), &i, &i, 1.0).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-12);
        assert_eq!(r.params.q, None);
        assert!(slack_det_power(&i, &i, 0.4).is_err());
    }

    #[test]
    fn three_term_examples() {
        let r = slack_three_term_basic(&GmfSpec::Det(1), &one(), &one(), &one()).unwrap();
        assert_eq!(r.slack, 0.0);
        assert_eq!(r.verdict, Verdict::Equality);
        let r =
            slack_three_term_basic(&GmfSpec::Per(2), &ones2(), &ones2(), &example_c(0.17)).unwrap();
        assert!(r.slack >= 0.0);
    }

    #[test]
    fn three_matrix_scalars() {
        for &r in &[1.0, 1.5, 2.0, 3.0] {
            let rep = slack_theorem_2_1(&GmfSpec::Det(1), &one(), &one(), &one(), r).unwrap();
            let closed = 3f64.powf(r) + 3.0 - 3.0 * 2f64.powf(r);
            assert!((rep.slack - closed).abs() < 1e-12);
        }
        let rep = slack_theorem_2_1(&GmfSpec::Det(1), &one(), &one(), &one(), 1.5).unwrap();
        assert_eq!(rep.verdict, Verdict::Violated);
    }

    #[test]
    fn three_matrix_permanent_counterexample() {
        let rep =
            slack_theorem_2_1(&GmfSpec::Per(2), &ones2(), &ones2(), &example_c(0.17), 1.4).unwrap();
        assert!((rep.slack - (-0.010122960771607126)).abs() < 1e-12);
        assert!(rep.is_violated());
    }

    #[test]
    fn phi_variant_matches_power() {
        let phi = ConvexFn::power(2.5).unwrap();
        let a = slack_theorem_2_1_phi(&GmfSpec::Per(2), &ones2(), &ones2(), &example_c(0.3), &phi)
            .unwrap();
        let b =
            slack_theorem_2_1(&GmfSpec::Per(2), &ones2(), &ones2(), &example_c(0.3), 2.5).unwrap();
        assert!((a.slack - b.slack).abs() < 1e-12);
        assert_eq!(a.params.phi.as_deref(), Some("x^2.5"));
    }

    #[test]
    fn p2_is_not_enough_for_three_matrices() {
        let phi = ConvexFn::power(1.5).unwrap();
        assert!(phi.class().satisfies(FnClass::P(2)));
        assert!(!phi.class().satisfies(THEOREM_2_1_PHI_CLASS));
        let rep = slack_theorem_2_1_phi(&GmfSpec::Det(1), &one(), &one(), &one(), &phi).unwrap();
        assert!(rep.is_violated());
        let phi = ConvexFn::power(2.5).unwrap();
        assert!(phi.class().satisfies(THEOREM_2_1_PHI_CLASS));
        assert!(!phi.class().satisfies(alternating_phi_class(4)));
        assert!(slack_alternating_phi(&GmfSpec::Det(1), &scalars(4), &phi)
            .unwrap()
            .is_violated());
    }

    #[test]
    fn alternating_examples() {
        let r = slack_alternating(&GmfSpec::Det(1), &scalars(3), 1.0).unwrap();
        assert_eq!(r.slack, 0.0);
        let r = slack_alternating(&GmfSpec::Det(1), &scalars(3), 4.0).unwrap();
        assert!((r.slack - 36.0).abs() < 1e-12);
        let r = slack_alternating(&GmfSpec::Det(1), &scalars(4), 2.5).unwrap();
        assert!(r.is_violated());
        assert!(slack_alternating(&GmfSpec::Det(1), &scalars(1), 1.0).is_err());
    }

    #[test]
    fn pairwise_examples() {
        assert_eq!(
            slack_pairwise(&GmfSpec::Det(1), &scalars(3)).unwrap().slack,
            0.0
        );
        assert_eq!(
            slack_pairwise(&GmfSpec::Det(1), &scalars(4)).unwrap().slack,
            0.0
        );
        assert!(slack_pairwise(&GmfSpec::Det(1), &scalars(2)).is_err());
    }

    #[test]
    fn three_level_examples() {
        let r =
            slack_three_level(&GmfSpec::Det(1), &scalars(3), Levels::new(1, 2, 3), 2.0).unwrap();
        assert!(r.slack.abs() < 1e-12);
        assert!(matches!(
            slack_three_level(&GmfSpec::Det(1), &scalars(3), Levels::new(2, 2, 3), 2.0),
            Err(Error::BadLevels { .. })
        ));
        assert!(matches!(
            slack_three_level(&GmfSpec::Det(1), &scalars(3), Levels::new(1, 2, 4), 2.0),
            Err(Error::BadLevels { .. })
        ));
    }

    #[test]
    fn three_level_reduces_to_three_matrices() {
        let mats = [ones2(), ones2(), example_c(0.17)];
        for &r in &[1.4, 2.0, 3.3] {
            let t = slack_three_level(&GmfSpec::Per(2), &mats, Levels::new(1, 2, 3), r).unwrap();
            let e = slack_theorem_2_1(&GmfSpec::Per(2), &mats[0], &mats[1], &mats[2], r).unwrap();
            assert!((t.slack - e.slack / 3.0).abs() < 1e-10);
        }
    }

    #[test]
    fn convex_three_level_examples() {
        let lv = Levels::new(1, 2, 3);
        let r = slack_convex_three_level(&GmfSpec::Det(1), &scalars(3), lv, &ConvexFn::identity())
            .unwrap();
        assert_eq!(r.slack, 0.0);
        let r =
            slack_convex_three_level(&GmfSpec::Det(1), &scalars(3), lv, &ConvexFn::exp()).unwrap();
        assert!((r.slack - 8.025706553785412).abs() < 1e-12);
    }

    #[test]
    fn partition_examples() {
        let part = vec![vec![0], vec![1, 2]];
        let r = slack_partition_schur(&GmfSpec::Det(1), &scalars(3), &part, 1.0).unwrap();
        assert_eq!(r.slack, 0.0);
        let r = slack_partition_schur(&GmfSpec::Det(1), &scalars(3), &part, 2.0).unwrap();
        assert_eq!(r.slack, 4.0);
        for bad in [
            vec![vec![0], vec![1]],
            vec![vec![0, 1], vec![1, 2]],
            vec![vec![0, 1, 3]],
        ] {
            assert!(slack_partition_schur(&GmfSpec::Det(1), &scalars(3), &bad, 1.0).is_err());
        }
    }

    #[test]
    fn product_examples() {
        let spec = GmfSpec::product(vec![GmfSpec::Det(1), GmfSpec::Per(1)]).unwrap();
        let blocks = [one(), one()];
        let r = slack_product_gmf(&spec, &blocks, &blocks, &blocks, 1.0).unwrap();
        assert!(r.slack.abs() < 1e-12);
        let r = slack_product_gmf(&spec, &blocks, &blocks, &blocks, 2.0).unwrap();
        assert!((r.slack - 36.0).abs() < 1e-12);
        assert!(matches!(
            slack_product_gmf(&spec, &blocks[..1], &blocks, &blocks, 1.0),
            Err(Error::BlockCountMismatch { .. })
        ));
    }

    #[test]
    fn finite_difference_values() {
        assert_eq!(finite_difference_f(3, 1.0), 0.0);
        assert_eq!(finite_difference_f(3, 2.0), 0.0);
        assert!((finite_difference_f(4, 2.5) - (-0.412703575525299)).abs() < 1e-12);
        assert!((finite_difference_f(4, 1.5) - 0.18595305765061454).abs() < 1e-12);
    }

    #[test]
    fn subset_weight_report() {
        let r = slack_subset_weights(&GmfSpec::Det(1), &scalars(3)).unwrap();
        assert_eq!(r.inequality_id, "lemma3_2");
        assert_eq!(r.verdict, Verdict::Equality);
    }
}
