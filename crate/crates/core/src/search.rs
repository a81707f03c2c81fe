//! Seeded random search, r-grid scans and reproduction of the named
//! examples.
//!
//! Trial `t` draws its instance from seed `mix(config.seed, t)`, so results
//! do not depend on how trials are scheduled across threads.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gmf::{gmf, GmfSpec};
use crate::inequality::{self as ineq, ConvexFn, Levels, SlackReport, Verdict};
use crate::linalg::random::{mix, random_square, UniformStream};
use crate::linalg::{random_psd, Field, PsdMatrix, RandomInstanceConfig};
use crate::majorization::{majorization_gap, weak_majorizes};
use crate::matrix::Matrix;

/// Registered inequality suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InequalityId {
    TwoTermPower,
    RootSuperadditivity,
    ThreeTerm,
    Theorem2_1,
    Theorem3_3,
    Pairwise,
    Theorem3_5,
    Theorem4_2,
    PartitionSchur,
    Lemma3_2,
    TensorTwo,
    TensorThree,
    Prop4_3,
    ProductGmf,
}

/// How many matrices a suite consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Exactly(usize),
    AtLeast(usize),
}

impl Arity {
    pub fn accepts(self, m: usize) -> bool {
        match self {
            Arity::Exactly(k) => m == k,
            Arity::AtLeast(k) => m >= k,
        }
    }

    pub fn default_m(self) -> usize {
        match self {
            Arity::Exactly(k) => k,
            Arity::AtLeast(k) => k.max(3),
        }
    }
}

impl InequalityId {
    pub const ALL: [InequalityId; 14] = [
        InequalityId::TwoTermPower,
        InequalityId::RootSuperadditivity,
        InequalityId::ThreeTerm,
        InequalityId::Theorem2_1,
        InequalityId::Theorem3_3,
        InequalityId::Pairwise,
        InequalityId::Theorem3_5,
        InequalityId::Theorem4_2,
        InequalityId::PartitionSchur,
        InequalityId::Lemma3_2,
        InequalityId::TensorTwo,
        InequalityId::TensorThree,
        InequalityId::Prop4_3,
        InequalityId::ProductGmf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::TwoTermPower => "two_term_power",
            InequalityId::RootSuperadditivity => "root_superadditivity",
            InequalityId::ThreeTerm => "three_term",
            InequalityId::Theorem2_1 => "theorem2_1",
            InequalityId::Theorem3_3 => "theorem3_3",
            InequalityId::Pairwise => "pairwise",
            InequalityId::Theorem3_5 => "theorem3_5",
            InequalityId::Theorem4_2 => "theorem4_2",
            InequalityId::PartitionSchur => "partition_schur",
            InequalityId::Lemma3_2 => "lemma3_2",
            InequalityId::TensorTwo => "tensor_two",
            InequalityId::TensorThree => "tensor_three",
            InequalityId::Prop4_3 => "prop4_3",
            InequalityId::ProductGmf => "product_gmf",
        }
    }

    pub fn arity(self) -> Arity {
        use InequalityId::*;
        match self {
            TwoTermPower | RootSuperadditivity | TensorTwo => Arity::Exactly(2),
            ThreeTerm | Theorem2_1 | TensorThree | Prop4_3 | ProductGmf => Arity::Exactly(3),
            Theorem3_3 => Arity::AtLeast(2),
            Pairwise | Theorem3_5 | Theorem4_2 => Arity::AtLeast(3),
            PartitionSchur | Lemma3_2 => Arity::AtLeast(1),
        }
    }

    /// Whether the suite is evaluated once per exponent in the r-grid.
    pub fn uses_exponent(self, suite: &SuiteParams) -> bool {
        use InequalityId::*;
        match self {
            TwoTermPower | RootSuperadditivity | Theorem3_5 | PartitionSchur | ProductGmf => true,
            Theorem2_1 | Theorem3_3 => suite.phi.is_none(),
            _ => false,
        }
    }

    /// Operator-level suites that ignore the GMF spec.
    pub fn is_tensor(self) -> bool {
        matches!(
            self,
            InequalityId::TensorTwo | InequalityId::TensorThree | InequalityId::Prop4_3
        )
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown inequality {s:?}")))
    }
}

/// Suite-specific parameters beyond the exponent.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub levels: Option<Levels>,
    pub phi: Option<ConvexFn>,
    /// 0-based partition of the matrix indices; singletons by default.
    pub partition: Option<Vec<Vec<usize>>>,
    /// Kronecker power for the operator suites; defaults to the matrix size.
    pub tensor_power: Option<usize>,
}

/// Exponents to evaluate: an inclusive arithmetic range or an explicit list.
#[derive(Debug, Clone, PartialEq)]
pub enum RGrid {
    Range { min: f64, max: f64, step: f64 },
    List(Vec<f64>),
}

impl RGrid {
    pub fn single(r: f64) -> Self {
        RGrid::List(vec![r])
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match self {
            RGrid::Range { min, max, step } => {
                if !(*min > 0.0 && min.is_finite() && max.is_finite()) {
                    return bad(format!("r range minimum {min} must be positive"));
                }
                if !(*step > 0.0 && step.is_finite()) {
                    return bad(format!("r step {step} must be positive"));
                }
                if max < min {
                    return bad(format!("r range [{min}, {max}] is empty"));
                }
                if (max - min) / step > 1e6 {
                    return bad("r grid has more than a million points".into());
                }
                Ok(())
            }
            RGrid::List(rs) => {
                if rs.is_empty() {
                    return bad("r list is empty".into());
                }
                match rs.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
                    Some(r) => bad(format!("r = {r} must be positive")),
                    None => Ok(()),
                }
            }
        }
    }

    /// Grid points min + i·step, with the final point snapped to max when
    /// it lands within rounding of it.
    pub fn points(&self) -> Vec<f64> {
        match self {
            RGrid::List(rs) => rs.clone(),
            RGrid::Range { min, max, step } => {
                let slack = 1e-9 * step;
                let mut out = Vec::new();
                let mut i = 0u64;
                loop {
                    let r = min + i as f64 * step;
                    if r > max + slack {
                        break;
                    }
                    out.push(if (r - max).abs() <= slack { *max } else { r });
                    i += 1;
                }
                out
            }
        }
    }
}

/// A list of PSD matrices; for product specs each matrix is also kept as
/// its diagonal blocks.
#[derive(Debug, Clone)]
pub struct Instance {
    pub matrices: Vec<PsdMatrix>,
    pub blocks: Option<Vec<Vec<PsdMatrix>>>,
}

impl Instance {
    pub fn new(matrices: Vec<PsdMatrix>) -> Self {
        Self {
            matrices,
            blocks: None,
        }
    }

    pub fn from_blocks(blocks: Vec<Vec<PsdMatrix>>) -> Self {
        Self {
            matrices: blocks
                .iter()
                .map(|b| PsdMatrix::block_diagonal(b))
                .collect(),
            blocks: Some(blocks),
        }
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// `{"matrices": [...]}` in the matrix JSON format, for replay.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "matrices": self.matrices.iter().map(|m| m.matrix().to_json()).collect::<Vec<_>>()
        })
    }
}

/// m PSD matrices of the given block sizes, matrix i drawn from substream
/// `mix(seed, i)`. A single block reproduces [`random_psd`] exactly.
pub fn random_instance(
    block_sizes: &[usize],
    m: usize,
    field: Field,
    scale: f64,
    seed: u64,
) -> Instance {
    if let [n] = block_sizes {
        return Instance::new(random_psd(&RandomInstanceConfig {
            n: *n,
            m,
            seed,
            scale,
            field,
        }));
    }
    let blocks = (0..m as u64)
        .map(|i| {
            let mut stream = UniformStream::new(mix(seed, i));
            block_sizes
                .iter()
                .map(|&s| PsdMatrix::gram(&random_square(s, field, scale, &mut stream)))
                .collect()
        })
        .collect();
    Instance::from_blocks(blocks)
}

/// A = B = [[1,1],[1,1]] and C(x) = x·[[1,−1],[−1,1]].
pub fn permanent_counterexample_instance(x: f64) -> Result<[PsdMatrix; 3]> {
    let ones = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]])?;
    let c = Matrix::from_real_rows(&[vec![x, -x], vec![-x, x]])?;
    Ok([
        PsdMatrix::new(ones.clone())?,
        PsdMatrix::new(ones)?,
        PsdMatrix::new(c)?,
    ])
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub inequality: InequalityId,
    pub spec: GmfSpec,
    pub instance: RandomInstanceConfig,
    pub r_grid: Option<RGrid>,
    pub trials: u64,
    pub suite: SuiteParams,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        self.instance.validate()?;
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be >= 1".into()));
        }
        let m = self.instance.m;
        if !self.inequality.arity().accepts(m) {
            return Err(Error::InvalidArgument(format!(
                "{} does not accept m = {m} ({:?})",
                self.inequality,
                self.inequality.arity()
            )));
        }
        if m > ineq::MAX_SUBSET_MATRICES {
            return Err(Error::InvalidArgument(format!(
                "m = {m} exceeds {}",
                ineq::MAX_SUBSET_MATRICES
            )));
        }
        if !self.inequality.is_tensor() && self.instance.n != self.spec.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.spec.degree(),
                got: self.instance.n,
            });
        }
        if self.inequality == InequalityId::ProductGmf && !matches!(self.spec, GmfSpec::Product(_))
        {
            return Err(Error::InvalidArgument(
                "product_gmf needs a product spec".into(),
            ));
        }
        match (&self.r_grid, self.inequality.uses_exponent(&self.suite)) {
            (Some(g), _) => g.validate()?,
            (None, true) => {
                return Err(Error::InvalidArgument(format!(
                    "{} needs at least one exponent r",
                    self.inequality
                )))
            }
            (None, false) => {}
        }
        match self.inequality {
            InequalityId::Theorem3_5 | InequalityId::Theorem4_2 => {
                self.levels()?.validate(m)?;
            }
            _ => {}
        }
        if self.inequality == InequalityId::Theorem4_2 && self.suite.phi.is_none() {
            return Err(Error::InvalidArgument(
                "theorem4_2 needs a function phi".into(),
            ));
        }
        Ok(())
    }

    /// Levels, defaulting to (p−2, p−1, p) with p = m.
    fn levels(&self) -> Result<Levels> {
        let m = self.instance.m;
        Ok(self
            .suite
            .levels
            .unwrap_or_else(|| Levels::new(m.saturating_sub(2), m.saturating_sub(1), m)))
    }

    fn block_sizes(&self) -> Vec<usize> {
        match self.inequality {
            InequalityId::TensorTwo | InequalityId::TensorThree => vec![self.instance.n],
            _ => self.spec.block_degrees(),
        }
    }

    fn exponents(&self) -> Vec<Option<f64>> {
        match (&self.r_grid, self.inequality.uses_exponent(&self.suite)) {
            (Some(g), true) => g.points().into_iter().map(Some).collect(),
            _ => vec![None],
        }
    }

    /// The example instance substituted for trial 0, if one applies.
    pub fn known_instance(&self) -> Option<Instance> {
        use InequalityId::*;
        if self.inequality.is_tensor() || matches!(self.spec, GmfSpec::Product(_)) {
            return None;
        }
        if self.spec == GmfSpec::Per(2)
            && self.instance.m == 3
            && matches!(
                self.inequality,
                Theorem2_1 | ThreeTerm | Theorem3_5 | Theorem4_2
            )
        {
            return permanent_counterexample_instance(0.17)
                .ok()
                .map(|m| Instance::new(m.to_vec()));
        }
        if self.spec.degree() == 1 {
            let one = PsdMatrix::identity(1);
            return Some(Instance::new(vec![one; self.instance.m]));
        }
        None
    }

    pub fn trial_instance(&self, trial: u64) -> Instance {
        if trial == 0 {
            if let Some(inst) = self.known_instance() {
                return inst;
            }
        }
        random_instance(
            &self.block_sizes(),
            self.instance.m,
            self.instance.field,
            self.instance.scale,
            mix(self.instance.seed, trial),
        )
    }
}

/// Evaluates one suite on one instance.
pub fn evaluate(
    inequality: InequalityId,
    spec: &GmfSpec,
    suite: &SuiteParams,
    inst: &Instance,
    r: Option<f64>,
) -> Result<SlackReport> {
    use InequalityId::*;
    let mats = &inst.matrices;
    if !inequality.arity().accepts(mats.len()) {
        return Err(Error::InvalidArgument(format!(
            "{inequality} does not accept {} matrices",
            mats.len()
        )));
    }
    let need_r =
        || r.ok_or_else(|| Error::InvalidArgument(format!("{inequality} needs an exponent r")));
    let need_phi = || {
        suite
            .phi
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument(format!("{inequality} needs a function phi")))
    };
    let levels = || {
        let m = mats.len();
        suite
            .levels
            .unwrap_or_else(|| Levels::new(m.saturating_sub(2), m.saturating_sub(1), m))
    };
    let power = || suite.tensor_power.unwrap_or(mats[0].n());
    match inequality {
        TwoTermPower => ineq::slack_two_term_power(spec, &mats[0], &mats[1], need_r()?),
        RootSuperadditivity => {
            ineq::slack_root_superadditivity(spec, &mats[0], &mats[1], need_r()?)
        }
        ThreeTerm => match &suite.phi {
            Some(phi) => ineq::slack_three_term_phi(spec, &mats[0], &mats[1], &mats[2], phi),
            None => ineq::slack_three_term_basic(spec, &mats[0], &mats[1], &mats[2]),
        },
        Theorem2_1 => match &suite.phi {
            Some(phi) => ineq::slack_theorem_2_1_phi(spec, &mats[0], &mats[1], &mats[2], phi),
            None => ineq::slack_theorem_2_1(spec, &mats[0], &mats[1], &mats[2], need_r()?),
        },
        Theorem3_3 => match &suite.phi {
            Some(phi) => ineq::slack_alternating_phi(spec, mats, phi),
            None => ineq::slack_alternating(spec, mats, need_r()?),
        },
        Pairwise => ineq::slack_pairwise(spec, mats),
        Theorem3_5 => ineq::slack_three_level(spec, mats, levels(), need_r()?),
        Theorem4_2 => ineq::slack_convex_three_level(spec, mats, levels(), need_phi()?),
        PartitionSchur => {
            let singletons: Vec<Vec<usize>> = (0..mats.len()).map(|i| vec![i]).collect();
            let part = suite.partition.as_ref().unwrap_or(&singletons);
            ineq::slack_partition_schur(spec, mats, part, need_r()?)
        }
        Lemma3_2 => ineq::slack_subset_weights(spec, mats),
        TensorTwo => ineq::slack_tensor_two(&mats[0], &mats[1], power()),
        TensorThree => ineq::slack_tensor_three(&mats[0], &mats[1], &mats[2], power()),
        Prop4_3 => {
            let blocks = inst
                .blocks
                .clone()
                .unwrap_or_else(|| mats.iter().map(|m| vec![m.clone()]).collect());
            let k = blocks[0].len();
            let triples: Vec<_> = (0..k)
                .map(|i| {
                    (
                        blocks[0][i].clone(),
                        blocks[1][i].clone(),
                        blocks[2][i].clone(),
                    )
                })
                .collect();
            let powers: Vec<usize> = match suite.tensor_power {
                Some(p) => vec![p; k],
                None => triples.iter().map(|t| t.0.n()).collect(),
            };
            ineq::slack_tensor_blocks(&triples, &powers)
        }
        ProductGmf => {
            let blocks = inst.blocks.clone().ok_or_else(|| {
                Error::InvalidArgument("product_gmf needs block-structured instances".into())
            })?;
            ineq::slack_product_gmf(spec, &blocks[0], &blocks[1], &blocks[2], need_r()?)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub worst: SlackReport,
    pub violations: Vec<SlackReport>,
    pub evaluated: u64,
    /// Excluded from serialization so reruns are byte-identical.
    #[serde(skip)]
    pub wall_time: Duration,
    /// Every report in (trial, exponent) order.
    #[serde(skip)]
    pub reports: Vec<SlackReport>,
}

impl SearchResult {
    /// Builds the result from reports in their output order. The worst
    /// report is the first one attaining the minimal slack; NaN counts as
    /// −∞.
    pub fn from_reports(reports: Vec<SlackReport>, wall_time: Duration) -> Result<Self> {
        let key = |r: &SlackReport| {
            if r.slack.is_nan() {
                f64::NEG_INFINITY
            } else {
                r.slack
            }
        };
        let worst = reports
            .iter()
            .fold(None::<&SlackReport>, |best, r| match best {
                Some(b) if key(b) <= key(r) => Some(b),
                _ => Some(r),
            })
            .cloned()
            .ok_or_else(|| Error::InvalidArgument("no reports were produced".into()))?;
        Ok(Self {
            worst,
            violations: reports
                .iter()
                .filter(|r| r.is_violated())
                .cloned()
                .collect(),
            evaluated: reports.len() as u64,
            wall_time,
            reports,
        })
    }

    pub fn summary(&self) -> Summary {
        let count = |v: Verdict| self.reports.iter().filter(|r| r.verdict == v).count() as u64;
        Summary {
            inequality_id: self.worst.inequality_id.clone(),
            spec_id: self.worst.spec_id.clone(),
            evaluated: self.evaluated,
            holds: count(Verdict::Holds),
            equality: count(Verdict::Equality),
            violated: count(Verdict::Violated),
            worst_slack: self.worst.slack,
            worst: self.worst.clone(),
        }
    }
}

/// Aggregate counts over a run.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub inequality_id: String,
    pub spec_id: String,
    pub evaluated: u64,
    pub holds: u64,
    pub equality: u64,
    pub violated: u64,
    pub worst_slack: f64,
    pub worst: SlackReport,
}

/// One trial's reports (one per exponent), each tagged with the trial.
pub fn run_trial(config: &SearchConfig, trial: u64) -> Result<(Instance, Vec<SlackReport>)> {
    let inst = config.trial_instance(trial);
    let reports = config
        .exponents()
        .into_iter()
        .map(|r| {
            let mut rep = evaluate(config.inequality, &config.spec, &config.suite, &inst, r)?;
            rep.params.trial = Some(trial);
            Ok(rep)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((inst, reports))
}

/// Runs every trial in parallel and returns the reports in trial order.
/// On failure the error of the lowest-numbered failing trial is returned.
pub fn run_reports(config: &SearchConfig) -> Result<Vec<SlackReport>> {
    config.validate()?;
    let per_trial: Vec<Result<Vec<SlackReport>>> = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, t).map(|(_, r)| r))
        .collect();
    let mut out = Vec::new();
    for r in per_trial {
        out.extend(r?);
    }
    Ok(out)
}

pub fn random_search(config: &SearchConfig) -> Result<SearchResult> {
    let start = Instant::now();
    let reports = run_reports(config)?;
    SearchResult::from_reports(reports, start.elapsed())
}

/// One report per grid point on a fixed instance.
pub fn scan_r(
    inequality: InequalityId,
    spec: &GmfSpec,
    suite: &SuiteParams,
    instance: &Instance,
    grid: &RGrid,
) -> Result<SearchResult> {
    grid.validate()?;
    let start = Instant::now();
    let reports = grid
        .points()
        .into_iter()
        .map(|r| evaluate(inequality, spec, suite, instance, Some(r)))
        .collect::<Result<Vec<_>>>()?;
    SearchResult::from_reports(reports, start.elapsed())
}

/// Named examples accepted by [`reproduce`].
pub const EXAMPLES: [&str; 4] = ["eg2_2", "eg2_3", "finite_diff", "majorization_gap"];

fn failed(example: &str, expected: impl Into<String>, actual: impl Into<String>) -> Error {
    Error::ReproductionFailed {
        example: example.into(),
        expected: expected.into(),
        actual: actual.into(),
    }
}

/// Runs a named example and checks its claim, returning the reports.
pub fn reproduce(example_id: &str) -> Result<SearchResult> {
    match example_id {
        "eg2_2" => reproduce_eg2_2(),
        "eg2_3" => reproduce_eg2_3(),
        "finite_diff" => reproduce_finite_diff(),
        "majorization_gap" => reproduce_majorization_gap(),
        other => Err(Error::InvalidArgument(format!(
            "unknown example {other:?} (expected one of {})",
            EXAMPLES.join(", ")
        ))),
    }
}

fn reproduce_eg2_2() -> Result<SearchResult> {
    let spec = GmfSpec::Det(1);
    let inst = Instance::new(vec![PsdMatrix::identity(1); 3]);
    let mut grid = RGrid::Range {
        min: 1.0,
        max: 2.0,
        step: 0.05,
    }
    .points();
    grid.extend([2.5, 3.0, 5.0]);
    let res = scan_r(
        InequalityId::Theorem2_1,
        &spec,
        &SuiteParams::default(),
        &inst,
        &RGrid::List(grid),
    )?;
    for rep in &res.reports {
        let r = rep.params.r.unwrap_or(f64::NAN);
        let closed = 3f64.powf(r) + 3.0 - 3.0 * 2f64.powf(r);
        if (rep.slack - closed).abs() > 1e-12 * (1.0 + closed.abs()) {
            return Err(failed(
                "eg2_2",
                format!("slack {closed} at r = {r}"),
                rep.slack.to_string(),
            ));
        }
        let expected = if r == 1.0 || r == 2.0 {
            Verdict::Equality
        } else if r < 2.0 {
            Verdict::Violated
        } else {
            Verdict::Holds
        };
        if rep.verdict != expected {
            return Err(failed(
                "eg2_2",
                format!("{expected:?} at r = {r}"),
                format!("{:?} (slack {})", rep.verdict, rep.slack),
            ));
        }
    }
    Ok(res)
}

fn reproduce_eg2_3() -> Result<SearchResult> {
    let x = 0.17;
    let [a, b, c] = permanent_counterexample_instance(x)?;
    let spec = GmfSpec::Per(2);
    let per = |m: &Matrix| -> Result<f64> { Ok(gmf(&spec, m)?.value) };
    let checks = [
        ("per(A+B)", per(&(a.matrix() + b.matrix()))?, 8.0),
        ("per(C)", per(&c)?, 2.0 * x * x),
        (
            "per(A+C)",
            per(&(a.matrix() + c.matrix()))?,
            (1.0 + x).powi(2) + (1.0 - x).powi(2),
        ),
        (
            "per(B+C)",
            per(&(b.matrix() + c.matrix()))?,
            (1.0 + x).powi(2) + (1.0 - x).powi(2),
        ),
        (
            "per(A+B+C)",
            per(&(&(a.matrix() + b.matrix()) + c.matrix()))?,
            (2.0 + x).powi(2) + (2.0 - x).powi(2),
        ),
    ];
    for (name, got, want) in checks {
        if (got - want).abs() > 1e-12 {
            return Err(failed("eg2_3", format!("{name} = {want}"), got.to_string()));
        }
    }
    let rep = ineq::slack_theorem_2_1(&spec, &a, &b, &c, 1.4)?;
    if rep.slack.is_nan() || rep.slack >= -0.01 {
        return Err(failed("eg2_3", "slack < -0.01", rep.slack.to_string()));
    }
    let mut rep = rep;
    rep.params.x = Some(x);
    SearchResult::from_reports(vec![rep], Duration::ZERO)
}

/// Sign of the m-th derivative of x^r on x > 0, which the m-th finite
/// difference at 0 shares: zero for integer r < m, else the sign of
/// r(r−1)⋯(r−m+1).
fn finite_difference_sign(m: usize, r: f64) -> i8 {
    if r.fract() == 0.0 && r < m as f64 {
        return 0;
    }
    let prod: f64 = (0..m).map(|i| r - i as f64).product();
    if prod > 0.0 {
        1
    } else {
        -1
    }
}

fn reproduce_finite_diff() -> Result<SearchResult> {
    let spec = GmfSpec::Det(1);
    let mut reports = Vec::new();
    for m in 3..=5usize {
        let inst = Instance::new(vec![PsdMatrix::identity(1); m]);
        let grid = RGrid::Range {
            min: 0.25,
            max: m as f64 + 1.0,
            step: 0.25,
        };
        let res = scan_r(
            InequalityId::Theorem3_3,
            &spec,
            &SuiteParams::default(),
            &inst,
            &grid,
        )?;
        for rep in res.reports {
            let r = rep.params.r.unwrap_or(f64::NAN);
            let f = ineq::finite_difference_f(m, r);
            if (rep.slack - f).abs() > 1e-12 * (1.0 + f.abs()) {
                return Err(failed(
                    "finite_diff",
                    format!("f({m}, {r}) = {f}"),
                    rep.slack.to_string(),
                ));
            }
            let expected = match finite_difference_sign(m, r) {
                0 => Verdict::Equality,
                1 => Verdict::Holds,
                _ => Verdict::Violated,
            };
            if rep.verdict != expected {
                return Err(failed(
                    "finite_diff",
                    format!("{expected:?} for f({m}, {r})"),
                    format!("{:?} (value {f})", rep.verdict),
                ));
            }
            reports.push(rep);
        }
    }
    SearchResult::from_reports(reports, Duration::ZERO)
}

/// With A = B = C = I_n, (2ⁿ, 2ⁿ, 2ⁿ, 0) against (3ⁿ, 1, 1, 1). The first
/// is not weakly majorized by the second for n ≤ 2 (for n = 2 the third
/// partial sums are 12 > 11); from n = 3 on it is, since 3·2ⁿ ≤ 3ⁿ + 2.
fn reproduce_majorization_gap() -> Result<SearchResult> {
    let mut reports = Vec::new();
    for n in 1..=4usize {
        let spec = GmfSpec::Det(n);
        let i = Matrix::identity(n);
        let d = |k: f64| -> Result<f64> { Ok(gmf(&spec, &i.scale(k))?.value) };
        let v = [d(3.0)?, d(1.0)?, d(1.0)?, d(1.0)?];
        let u = [d(2.0)?, d(2.0)?, d(2.0)?, 0.0];
        let expect_majorized = n >= 3;
        if weak_majorizes(&v, &u) != expect_majorized {
            return Err(failed(
                "majorization_gap",
                format!("weakly majorized = {expect_majorized} for {u:?} against {v:?}"),
                format!("{}", !expect_majorized),
            ));
        }
        let gap = majorization_gap(&v, &u);
        let digest = ineq::instance_digest([&i, &i, &i]);
        reports.push(SlackReport::new(
            "majorization_gap",
            &spec.id(),
            ineq::Params {
                n: Some(n),
                ..Default::default()
            },
            gap,
            0.0,
            digest,
        ));
    }
    SearchResult::from_reports(reports, Duration::ZERO)
}
