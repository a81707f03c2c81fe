use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::matrix::Matrix;

/// Relative slack tolerance: tol = 1e−8·(1 + max(|lhs|, |rhs|)).
pub const SLACK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Holds,
    Violated,
    Equality,
}

impl Verdict {
    pub fn classify(slack: f64, tolerance: f64) -> Self {
        if slack.is_nan() || slack < -tolerance {
            Verdict::Violated
        } else if slack.abs() <= tolerance {
            Verdict::Equality
        } else {
            Verdict::Holds
        }
    }
}

/// Parameters of one evaluation; absent fields are omitted from JSON.
///
/// `r` is the exponent for every power-type inequality (including power
/// sums); `k`, `l`, `p` are subset-size levels.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
}

/// One inequality evaluation: slack = lhs − rhs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlackReport {
    pub inequality_id: String,
    pub spec_id: String,
    pub params: Params,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub instance_digest: String,
}

impl SlackReport {
    pub fn new(
        inequality_id: &str,
        spec_id: &str,
        params: Params,
        lhs: f64,
        rhs: f64,
        instance_digest: String,
    ) -> Self {
        let tolerance = SLACK_TOL * (1.0 + lhs.abs().max(rhs.abs()));
        Self::with_tolerance(
            inequality_id,
            spec_id,
            params,
            lhs,
            rhs,
            tolerance,
            instance_digest,
        )
    }

    pub fn with_tolerance(
        inequality_id: &str,
        spec_id: &str,
        params: Params,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        instance_digest: String,
    ) -> Self {
        let slack = lhs - rhs;
        Self {
            inequality_id: inequality_id.to_string(),
            spec_id: spec_id.to_string(),
            params,
            lhs,
            rhs,
            slack,
            tolerance,
            verdict: Verdict::classify(slack, tolerance),
            instance_digest,
        }
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

/// First 128 bits of SHA-256 over the matrices' canonical bytes, as hex.
pub fn instance_digest<'a>(matrices: impl IntoIterator<Item = &'a Matrix>) -> String {
    let mut h = Sha256::new();
    for m in matrices {
        h.update(m.digest_bytes());
    }
    hex::encode(&h.finalize()[..16])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        assert_eq!(Verdict::classify(0.0, 1e-8), Verdict::Equality);
        assert_eq!(Verdict::classify(-1e-9, 1e-8), Verdict::Equality);
        assert_eq!(Verdict::classify(-2e-8, 1e-8), Verdict::Violated);
        assert_eq!(Verdict::classify(1.0, 1e-8), Verdict::Holds);
        assert_eq!(Verdict::classify(f64::NAN, 1e-8), Verdict::Violated);
    }

    #[test]
    fn json_field_names() {
        let r = SlackReport::new(
            "theorem2_1",
            "det",
            Params {
                r: Some(2.0),
                ..Default::default()
            },
            12.0,
            12.0,
            "00".into(),
        );
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        for k in [
            "inequality_id",
            "spec_id",
            "params",
            "lhs",
            "rhs",
            "slack",
            "tolerance",
            "verdict",
            "instance_digest",
        ] {
            assert!(keys.contains(&k), "missing {k}");
        }
        assert_eq!(v["verdict"], "EQUALITY");
        assert_eq!(v["params"], serde_json::json!({"r": 2.0}));
    }

    #[test]
    fn digest_distinguishes_order() {
        let a = Matrix::scalar(1.0);
        let b = Matrix::scalar(2.0);
        assert_ne!(instance_digest([&a, &b]), instance_digest([&b, &a]));
        assert_eq!(instance_digest([&a, &b]).len(), 32);
    }
}
