//! Closed intervals and analytic function models.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// A finite closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn check(&self, t: f64) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                value: t,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Boundary behaviour used by the Csiszár conventions when a probability vanishes.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Limits {
    /// `lim_{t -> 0+} f(t)`.
    pub at_zero: Option<f64>,
    /// `lim_{t -> inf} f(t) / t`.
    pub slope_at_infinity: Option<f64>,
}

type Derivatives = dyn Fn(usize, f64) -> f64 + Send + Sync;

/// A real function on a closed interval together with its derivatives up to `max_order`.
///
/// Derivatives are supplied analytically by whoever builds the model; nothing
/// here differentiates numerically.
#[derive(Clone)]
pub struct FunctionModel {
    name: String,
    domain: Interval,
    max_order: usize,
    limits: Limits,
    derivs: Arc<Derivatives>,
}

impl fmt::Debug for FunctionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionModel")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("max_order", &self.max_order)
            .field("limits", &self.limits)
            .finish()
    }
}

impl FunctionModel {
    /// `derivs(k, t)` must return the k-th derivative at `t` (k = 0 is the value)
    /// for every `k <= max_order` and `t` in `domain`.
    pub fn new<F>(name: impl Into<String>, domain: Interval, max_order: usize, derivs: F) -> Self
    where
        F: Fn(usize, f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            domain,
            max_order,
            limits: Limits::default(),
            derivs: Arc::new(derivs),
        }
    }

    /// Polynomial `c0 + c1 t + c2 t^2 + ...` with exact derivatives of every order.
    pub fn polynomial(coeffs: &[f64], domain: Interval) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite { field: "coeffs" });
        }
        let coeffs: Vec<f64> = if coeffs.is_empty() { vec![0.0] } else { coeffs.to_vec() };
        let name = format!(
            "poly:{}",
            coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        );
        let limits = Limits {
            at_zero: Some(coeffs[0]),
            slope_at_infinity: match poly::degree(&coeffs) {
                0 => Some(0.0),
                1 => Some(coeffs[1]),
                _ => None,
            },
        };
        Ok(Self::new(name, domain, poly::MAX_ORDER, move |k, t| {
            poly::eval_derivative(&coeffs, k, t)
        })
        .with_limits(limits))
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn with_max_order(mut self, max_order: usize) -> Self {
        self.max_order = max_order;
        self
    }

    /// Same derivative stack restricted (or extended) to another interval.
    /// The caller is responsible for the formulas remaining valid there.
    pub fn with_domain(mut self, domain: Interval) -> Self {
        self.domain = domain;
        self
    }

    /// `-f`, with limits negated.
    pub fn negated(&self) -> Self {
        let inner = Arc::clone(&self.derivs);
        Self {
            name: format!("-({})", self.name),
            domain: self.domain,
            max_order: self.max_order,
            limits: Limits {
                at_zero: self.limits.at_zero.map(|v| -v),
                slope_at_infinity: self.limits.slope_at_infinity.map(|v| -v),
            },
            derivs: Arc::new(move |k, t| -inner(k, t)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.derivs)(0, t)
    }

    /// k-th derivative at `t`; `k = 0` is the value itself.
    pub fn deriv(&self, k: usize, t: f64) -> Result<f64> {
        self.require_order(k)?;
        Ok((self.derivs)(k, t))
    }

    pub fn require_order(&self, k: usize) -> Result<()> {
        if k > self.max_order {
            Err(Error::OrderExceeded {
                required: k,
                available: self.max_order,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn deriv_unchecked(&self, k: usize, t: f64) -> f64 {
        (self.derivs)(k, t)
    }
}
