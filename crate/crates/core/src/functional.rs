//! Discrete positive normalized linear functionals `A(h) = Σ w_i h(x_i)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{FunctionModel, Interval};

/// Weight sums within this distance of 1 are renormalized; anything further is rejected.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

/// Points `x_i = g(t_i)` in `[a, b]` with nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteFunctional {
    points: Vec<f64>,
    weights: Vec<f64>,
    interval: Interval,
}

/// JSON shape `{"points": [...], "weights": [...], "interval": [a, b]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalSpec {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    pub interval: [f64; 2],
}

impl TryFrom<FunctionalSpec> for DiscreteFunctional {
    type Error = Error;

    fn try_from(spec: FunctionalSpec) -> Result<Self> {
        let interval = Interval::new(spec.interval[0], spec.interval[1])?;
        DiscreteFunctional::new(spec.points, spec.weights, interval)
    }
}

impl From<&DiscreteFunctional> for FunctionalSpec {
    fn from(a: &DiscreteFunctional) -> Self {
        FunctionalSpec {
            points: a.points.clone(),
            weights: a.weights.clone(),
            interval: a.interval.into(),
        }
    }
}

impl DiscreteFunctional {
    pub fn new(points: Vec<f64>, weights: Vec<f64>, interval: Interval) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty { field: "points" });
        }
        if points.len() != weights.len() {
            return Err(Error::LengthMismatch {
                left: "points",
                left_len: points.len(),
                right: "weights",
                right_len: weights.len(),
            });
        }
        for &x in &points {
            if !x.is_finite() {
                return Err(Error::NonFinite { field: "points" });
            }
            interval.check(x)?;
        }
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::NonFinite { field: "weights" });
            }
            if w < 0.0 {
                return Err(Error::NegativeWeight { index, value: w });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::NotNormalized { field: "weights", sum });
        }
        let weights = if sum == 1.0 {
            weights
        } else {
            weights.into_iter().map(|w| w / sum).collect()
        };
        Ok(Self {
            points,
            weights,
            interval,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `A(h) = Σ w_i h(x_i)`.
    pub fn apply(&self, h: impl Fn(f64) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * h(x))
            .sum()
    }

    /// Fallible variant of [`apply`](Self::apply); stops at the first error.
    pub fn try_apply(&self, h: impl Fn(f64) -> Result<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (&x, &w) in self.points.iter().zip(&self.weights) {
            acc += w * h(x)?;
        }
        Ok(acc)
    }

    /// `A(g)`.
    pub fn mean(&self) -> f64 {
        self.apply(|x| x)
    }

    /// `A[(g − a)^j (g − b)^k]`.
    pub fn moment(&self, j: usize, k: usize) -> f64 {
        let (a, b) = (self.interval.lo(), self.interval.hi());
        self.apply(|x| (x - a).powi(j as i32) * (x - b).powi(k as i32))
    }

    /// Value at `x` of the chord through `(a, f(a))` and `(b, f(b))`.
    pub fn chord(&self, f: &FunctionModel, x: f64) -> f64 {
        let (a, b) = (self.interval.lo(), self.interval.hi());
        (b - x) / (b - a) * f.eval(a) + (x - a) / (b - a) * f.eval(b)
    }

    /// `A(f∘g)` minus the chord at `A(g)`; nonpositive for convex `f`.
    pub fn lr_difference(&self, f: &FunctionModel) -> Result<f64> {
        self.require_domain(f)?;
        Ok(self.apply(|x| f.eval(x)) - self.chord(f, self.mean()))
    }

    pub(crate) fn require_domain(&self, f: &FunctionModel) -> Result<()> {
        if f.domain().contains_interval(&self.interval) {
            Ok(())
        } else {
            let d = f.domain();
            let value = if self.interval.lo() < d.lo() {
                self.interval.lo()
            } else {
                self.interval.hi()
            };
            Err(Error::OutsideDomain {
                value,
                lo: d.lo(),
                hi: d.hi(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_half() -> DiscreteFunctional {
        DiscreteFunctional::new(vec![0.5, 1.5], vec![0.5, 0.5], Interval::new(0.0, 2.0).unwrap())
            .unwrap()
    }

    #[test]
    fn apply_and_moments() {
        let a = half_half();
        assert_eq!(a.apply(|_| 1.0), 1.0);
        assert_eq!(a.mean(), 1.0);
        assert_eq!(a.apply(|x| x * x), 1.25);
        assert_eq!(a.moment(0, 0), 1.0);
        assert_eq!(a.moment(1, 1), -0.75);
        assert_eq!(a.moment(1, 0), a.mean() - 0.0);
    }

    #[test]
    fn lr_of_square() {
        let a = half_half();
        let f = FunctionModel::polynomial(&[0.0, 0.0, 1.0], Interval::new(0.0, 2.0).unwrap()).unwrap();
        assert_eq!(a.lr_difference(&f).unwrap(), -0.75);
        let lin = FunctionModel::polynomial(&[3.0, -2.0], Interval::new(0.0, 2.0).unwrap()).unwrap();
        assert!(a.lr_difference(&lin).unwrap().abs() < 1e-12);
    }

    #[test]
    fn endpoint_moments_vanish() {
        let i = Interval::new(-1.0, 2.0).unwrap();
        let at_a = DiscreteFunctional::new(vec![-1.0, -1.0], vec![0.25, 0.75], i).unwrap();
        let at_b = DiscreteFunctional::new(vec![2.0], vec![1.0], i).unwrap();
        for j in 1..5 {
            assert_eq!(at_a.moment(j, 2), 0.0);
            assert_eq!(at_b.moment(1, j), 0.0);
        }
    }

    #[test]
    fn renormalizes_tiny_drift_and_rejects_large() {
        let i = Interval::new(0.0, 1.0).unwrap();
        let a = DiscreteFunctional::new(vec![0.2, 0.4], vec![0.5, 0.5 + 5e-13], i).unwrap();
        assert!((a.weights().iter().sum::<f64>() - 1.0).abs() <= f64::EPSILON);
        assert!(matches!(
            DiscreteFunctional::new(vec![0.2, 0.4], vec![0.5, 0.6], i),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn construction_errors() {
        let i = Interval::new(0.0, 1.0).unwrap();
        assert!(matches!(
            DiscreteFunctional::new(vec![], vec![], i),
            Err(Error::Empty { .. })
        ));
        assert!(matches!(
            DiscreteFunctional::new(vec![0.5], vec![0.5, 0.5], i),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            DiscreteFunctional::new(vec![0.5, 1.5], vec![0.5, 0.5], i),
            Err(Error::OutsideDomain { .. })
        ));
        assert!(matches!(
            DiscreteFunctional::new(vec![0.5, 0.7], vec![1.5, -0.5], i),
            Err(Error::NegativeWeight { index: 1, .. })
        ));
    }

    #[test]
    fn zero_weights_are_kept() {
        let i = Interval::new(0.0, 1.0).unwrap();
        let a = DiscreteFunctional::new(vec![0.1, 0.9], vec![0.0, 1.0], i).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.mean(), 0.9);
    }

    #[test]
    fn function_domain_must_cover_interval() {
        let a = half_half();
        let f = FunctionModel::polynomial(&[0.0, 1.0], Interval::new(0.0, 1.0).unwrap()).unwrap();
        assert!(matches!(a.lr_difference(&f), Err(Error::OutsideDomain { .. })));
    }
}
