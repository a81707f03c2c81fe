//! Functions Φ on [0, ∞) that may replace d^r in the subset inequalities.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Declared regularity of Φ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FnClass {
    /// Convex and nondecreasing on [0, ∞).
    Convex,
    /// Φ^{(i)} ≥ 0 on [0, ∞) for 0 ≤ i ≤ k; `usize::MAX` means every order.
    P(usize),
}

impl FnClass {
    /// Whether membership in `self` implies membership in `required`.
    /// Every P_k with k ≥ 2 is convex and nondecreasing.
    pub fn satisfies(self, required: FnClass) -> bool {
        match (self, required) {
            (_, FnClass::Convex) => {
                matches!(self, FnClass::Convex) || matches!(self, FnClass::P(k) if k >= 2)
            }
            (FnClass::P(have), FnClass::P(need)) => have >= need,
            (FnClass::Convex, FnClass::P(need)) => need <= 2,
        }
    }
}

impl fmt::Display for FnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnClass::Convex => f.write_str("CONVEX"),
            FnClass::P(usize::MAX) => f.write_str("P_inf"),
            FnClass::P(k) => write!(f, "P_{k}"),
        }
    }
}

#[derive(Clone)]
pub struct ConvexFn {
    name: String,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    class: FnClass,
}

impl fmt::Debug for ConvexFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConvexFn")
            .field("name", &self.name)
            .field("class", &self.class)
            .finish()
    }
}

impl ConvexFn {
    pub fn new(
        name: impl Into<String>,
        class: FnClass,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            class,
        }
    }

    pub fn identity() -> Self {
        Self::new("x", FnClass::P(usize::MAX), |x| x)
    }

    pub fn exp() -> Self {
        Self::new("exp", FnClass::P(usize::MAX), f64::exp)
    }

    /// x^r for r ≥ 1. Integer exponents lie in every P_k; otherwise the
    /// derivative of order ⌊r⌋+2 is the first negative one.
    pub fn power(r: f64) -> Result<Self> {
        if !(r >= 1.0 && r.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "x^{r} is not convex on [0, inf)"
            )));
        }
        let class = if r.fract() == 0.0 {
            FnClass::P(usize::MAX)
        } else {
            FnClass::P(r.floor() as usize + 1)
        };
        Ok(Self::new(format!("x^{r}"), class, move |x: f64| {
            x.max(0.0).powf(r)
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn class(&self) -> FnClass {
        self.class
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// Sampled midpoint convexity on a grid over [0, 8]: the largest
    /// violation Φ((a+b)/2) − (Φ(a)+Φ(b))/2 beyond 1e−9 relative slack,
    /// or `None` if there is none.
    pub fn midpoint_violation(&self) -> Option<(f64, f64)> {
        let grid: Vec<f64> = (0..=32).map(|i| i as f64 * 0.25).collect();
        for (i, &a) in grid.iter().enumerate() {
            for &b in &grid[i + 1..] {
                let mid = self.eval(0.5 * (a + b));
                let avg = 0.5 * (self.eval(a) + self.eval(b));
                if mid > avg + 1e-9 * (1.0 + avg.abs()) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Spot check of the declared class: forward differences with step
    /// 1e−4 of orders 0..=min(k, 3) must be nonnegative at sample points.
    /// Returns the first (order, x) that fails.
    pub fn derivative_sign_violation(&self) -> Option<(usize, f64)> {
        const H: f64 = 1e-4;
        let max_order = match self.class {
            FnClass::Convex => 2,
            FnClass::P(k) => k.min(3),
        };
        for &x in &[0.25, 0.5, 1.0, 2.0, 4.0] {
            for order in 0..=max_order {
                let mut diff = 0.0;
                let mut magnitude: f64 = 0.0;
                for j in 0..=order {
                    let sign = if (order - j) % 2 == 0 { 1.0 } else { -1.0 };
                    let v = self.eval(x + j as f64 * H);
                    diff += sign * binomial_u(order, j) * v;
                    magnitude = magnitude.max(v.abs());
                }
                let noise = (1u64 << order) as f64 * 8.0 * f64::EPSILON * (1.0 + magnitude);
                if diff < -noise {
                    return Some((order, x));
                }
            }
        }
        None
    }
}

fn binomial_u(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl FromStr for ConvexFn {
    type Err = Error;

    /// Registered names: `x`, `exp`, `x^R` for real R ≥ 1.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Self::identity()),
            "exp" => Ok(Self::exp()),
            _ => match s.strip_prefix("x^").map(str::parse::<f64>) {
                Some(Ok(r)) => Self::power(r),
                _ => Err(Error::InvalidArgument(format!(
                    "unknown function {s:?} (expected x, exp or x^R)"
                ))),
            },
        }
    }
}

/// Names accepted by [`ConvexFn::from_str`], as examples.
pub const REGISTERED: &[&str] = &["x", "x^1.5", "x^2", "exp"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_parses() {
        for name in REGISTERED {
            let f: ConvexFn = name.parse().unwrap();
            assert_eq!(f.name(), *name);
            assert!(f.midpoint_violation().is_none(), "{name}");
            assert!(f.derivative_sign_violation().is_none(), "{name}");
        }
        assert!("sin".parse::<ConvexFn>().is_err());
        assert!("x^0.5".parse::<ConvexFn>().is_err());
    }

    #[test]
    fn power_classes() {
        assert_eq!(ConvexFn::power(1.5).unwrap().class(), FnClass::P(2));
        assert_eq!(ConvexFn::power(2.5).unwrap().class(), FnClass::P(3));
        assert_eq!(
            ConvexFn::power(2.0).unwrap().class(),
            FnClass::P(usize::MAX)
        );
    }

    #[test]
    fn misdeclared_class_is_caught() {
        let wrong = ConvexFn::new("x^1.5", FnClass::P(3), |x: f64| x.powf(1.5));
        assert_eq!(wrong.derivative_sign_violation().map(|v| v.0), Some(3));
        let concave = ConvexFn::new("sqrt", FnClass::Convex, f64::sqrt);
        assert!(concave.midpoint_violation().is_some());
    }

    #[test]
    fn class_implication() {
        assert!(FnClass::P(3).satisfies(FnClass::P(2)));
        assert!(!FnClass::P(2).satisfies(FnClass::P(3)));
        assert!(FnClass::P(2).satisfies(FnClass::Convex));
        assert!(!FnClass::P(1).satisfies(FnClass::Convex));
        assert!(!FnClass::Convex.satisfies(FnClass::P(3)));
        assert_eq!(FnClass::P(usize::MAX).to_string(), "P_inf");
    }
}
