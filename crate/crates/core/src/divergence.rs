//! Generalized Csiszár f-divergence `Σ q_i f(p_i / q_i)` and its
//! Edmundson-Lah-Ribarič type bounds.
//!
//! The bounds are obtained by viewing `q` as the weights and `p_i / q_i` as
//! the points of a discrete functional whose mean is exactly 1. They are
//! evaluated twice, once by delegating to [`crate::bounds`] and once through
//! the explicit sums `Σ (p_i − a q_i)^j (p_i − b q_i)^k / q_i^(j+k−1)`, and
//! the two routes must agree.

use serde::{Deserialize, Serialize};

use crate::bounds::{self, dispatch, BoundReport, Convexity, Theorem};
use crate::divided_diff::{divided_difference, NodeMultiset};
use crate::error::{Error, Result};
use crate::function::{FunctionModel, Interval};
use crate::functional::DiscreteFunctional;

/// Allowed drift of a probability vector's total from 1.
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-12;

/// Allowed gap between the delegated and the direct evaluation, relative to
/// `max(1, |value|)`.
pub const DELEGATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty { field: "probabilities" });
        }
        for (index, &value) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { index, value });
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
            return Err(Error::NotNormalized { field: "probabilities", sum });
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<'de> Deserialize<'de> for ProbabilityVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<f64>::deserialize(d)?;
        ProbabilityVector::new(values).map_err(serde::de::Error::custom)
    }
}

/// JSON shape `{"p": [...], "q": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionPair {
    pub p: ProbabilityVector,
    pub q: ProbabilityVector,
}

/// `[min p_i/q_i, max p_i/q_i]`; degenerate (`a == b == 1`) when `p == q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioRange {
    pub a: f64,
    pub b: f64,
}

impl RatioRange {
    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    /// Nondegenerate interval with `a <= 1 <= b`, as required by the bounds.
    pub fn to_interval(&self) -> Result<Interval> {
        check_ratio_interval(self.a, self.b)
    }
}

fn check_ratio_interval(a: f64, b: f64) -> Result<Interval> {
    if !(a <= 1.0 && 1.0 <= b && a < b) {
        return Err(Error::InvalidRatioRange { a, b });
    }
    Interval::new(a, b)
}

fn check_lengths(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: "p",
            left_len: p.len(),
            right: "q",
            right_len: q.len(),
        });
    }
    Ok(())
}

/// `Σ q_i f(p_i / q_i)` with the Csiszár conventions
/// `0 · f(0/0) = 0`, `f(0) = lim_{t→0+} f(t)` and
/// `0 · f(p/0) = p · lim_{t→∞} f(t)/t`.
pub fn f_divergence(f: &FunctionModel, p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
    check_lengths(p, q)?;
    let limits = f.limits();
    let domain = f.domain();
    let mut total = 0.0;
    for (index, (&pi, &qi)) in p.values().iter().zip(q.values()).enumerate() {
        total += match (pi == 0.0, qi == 0.0) {
            (true, true) => 0.0,
            (false, true) => pi * limits.slope_at_infinity.ok_or(Error::MissingLimit { index })?,
            (true, false) => {
                let at_zero = if domain.contains(0.0) {
                    f.eval(0.0)
                } else {
                    limits.at_zero.ok_or(Error::OutsideDomain {
                        value: 0.0,
                        lo: domain.lo(),
                        hi: domain.hi(),
                    })?
                };
                qi * at_zero
            }
            (false, false) => {
                let t = pi / qi;
                domain.check(t)?;
                qi * f.eval(t)
            }
        };
    }
    Ok(total)
}

pub fn ratio_range(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<RatioRange> {
    check_lengths(p, q)?;
    let mut a = f64::INFINITY;
    let mut b = f64::NEG_INFINITY;
    for (index, (&pi, &qi)) in p.values().iter().zip(q.values()).enumerate() {
        if qi == 0.0 {
            return Err(Error::ZeroReference { index });
        }
        let r = pi / qi;
        a = a.min(r);
        b = b.max(r);
    }
    Ok(RatioRange { a, b })
}

/// Output of [`divergence_bounds`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceReport {
    /// `D̃_f(p, q)`.
    pub divergence: f64,
    /// `((b − 1) f(a) + (1 − a) f(b)) / (b − a)`.
    pub chord_at_one: f64,
    pub interval: [f64; 2],
    pub bounds: BoundReport,
    /// Largest relative gap between the direct and the delegated route.
    pub delegation_gap: f64,
}

/// Discrete functional with points `p_i / q_i` and weights `q_i` on `[a, b]`.
pub fn ratio_functional(
    p: &ProbabilityVector,
    q: &ProbabilityVector,
    interval: Option<Interval>,
) -> Result<DiscreteFunctional> {
    let range = ratio_range(p, q)?;
    let interval = match interval {
        Some(i) => {
            let i = check_ratio_interval(i.lo(), i.hi())?;
            if !(i.lo() <= range.a && range.b <= i.hi()) {
                return Err(Error::InvalidParameter {
                    name: "interval",
                    reason: format!("{i} does not contain the ratios [{}, {}]", range.a, range.b),
                });
            }
            i
        }
        None => range.to_interval()?,
    };
    let points = p.values().iter().zip(q.values()).map(|(pi, qi)| pi / qi).collect();
    DiscreteFunctional::new(points, q.values().to_vec(), interval)
}

/// Bound statement applied to `A(h) = Σ q_i h(p_i / q_i)`.
///
/// With `A(g) = 1` the LR difference is `D̃_f(p, q) − chord_at_one`. The
/// interval defaults to the ratio range and may be widened with `interval`.
#[allow(clippy::too_many_arguments)]
pub fn divergence_bounds(
    f: &FunctionModel,
    p: &ProbabilityVector,
    q: &ProbabilityVector,
    n: usize,
    m: Option<usize>,
    theorem: Theorem,
    convexity: Convexity,
    interval: Option<Interval>,
) -> Result<DivergenceReport> {
    let functional = ratio_functional(p, q, interval)?;
    let delegated = bounds::bound(theorem, f, &functional, n, m, convexity)?;
    let direct = direct_bounds(f, p, q, functional.interval(), n, m, theorem)?;

    let divergence = direct.divergence;
    let chord_at_one = direct.chord_at_one;
    let direct_lr = divergence - chord_at_one;
    let (lower, upper) = if dispatch(theorem, &delegated.case).forward {
        (direct.lower, direct.upper)
    } else {
        (direct.upper, direct.lower)
    };
    let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(y.abs()).max(1.0);
    let opt_rel = |x: Option<f64>, y: Option<f64>| match (x, y) {
        (Some(x), Some(y)) => rel(x, y),
        (None, None) => 0.0,
        _ => f64::INFINITY,
    };
    let gap = rel(delegated.lr, direct_lr)
        .max(opt_rel(delegated.lower, lower))
        .max(opt_rel(delegated.upper, upper));
    if !(gap <= DELEGATION_TOLERANCE) {
        return Err(Error::DelegationMismatch { gap });
    }
    Ok(DivergenceReport {
        divergence,
        chord_at_one,
        interval: functional.interval().into(),
        bounds: delegated,
        delegation_gap: gap,
    })
}

/// Direct evaluation in the n-convex orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectBounds {
    pub divergence: f64,
    pub chord_at_one: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

/// Evaluates the divergence form of each statement from the probability
/// vectors themselves, without building a functional.
pub fn direct_bounds(
    f: &FunctionModel,
    p: &ProbabilityVector,
    q: &ProbabilityVector,
    interval: Interval,
    n: usize,
    m: Option<usize>,
    theorem: Theorem,
) -> Result<DirectBounds> {
    check_lengths(p, q)?;
    let (a, b) = (interval.lo(), interval.hi());
    let divergence = f_divergence(f, p, q)?;
    let chord_at_one = ((b - 1.0) * f.eval(a) + (1.0 - a) * f.eval(b)) / (b - a);

    // Σ (p_i − a q_i)^j (p_i − b q_i)^k / q_i^(j+k−1)
    let s = |j: usize, k: usize| -> f64 {
        p.values()
            .iter()
            .zip(q.values())
            .map(|(&pi, &qi)| {
                (pi - a * qi).powi(j as i32) * (pi - b * qi).powi(k as i32)
                    / qi.powi(j as i32 + k as i32 - 1)
            })
            .sum()
    };
    let dd = |x: f64, i: usize, y: f64, j: usize| -> Result<f64> {
        divided_difference(f, &NodeMultiset::two_point(x, i, y, j)?)
    };

    let a_side = |m: usize| -> Result<f64> {
        let mut v = (1.0 - a) * (dd(a, 2, b, 0)? - dd(a, 1, b, 1)?);
        for k in 2..m {
            v += dd(a, k + 1, b, 0)? * s(k, 0);
        }
        for k in 1..=n - m {
            v += dd(a, m, b, k)? * s(m, k - 1);
        }
        Ok(v)
    };
    let b_side = |m: usize| -> Result<f64> {
        let mut v = (b - 1.0) * (dd(a, 1, b, 1)? - dd(b, 2, a, 0)?);
        for k in 2..m {
            v += dd(b, k + 1, a, 0)? * s(0, k);
        }
        for k in 1..=n - m {
            v += dd(b, m, a, k)? * s(k - 1, m);
        }
        Ok(v)
    };
    let a_m1 = || -> Result<f64> {
        let mut v = 0.0;
        for k in 2..n {
            v += dd(a, 1, b, k)? * s(1, k - 1);
        }
        Ok(v)
    };
    let a_m2 = || -> Result<f64> {
        let mut v = dd(a, 2, b, 1)? * s(1, 1);
        for k in 2..n - 1 {
            v += dd(a, 2, b, k)? * s(2, k - 1);
        }
        Ok(v)
    };
    let b_m1 = || -> Result<f64> {
        let mut v = 0.0;
        for k in 2..n {
            v += dd(b, 1, a, k)? * s(k - 1, 1);
        }
        Ok(v)
    };
    let b_m2 = || -> Result<f64> {
        let mut v = dd(b, 2, a, 1)? * s(1, 1);
        for k in 2..n - 1 {
            v += dd(b, 2, a, k)? * s(k - 1, 2);
        }
        Ok(v)
    };

    let need_m = || -> Result<usize> {
        let m = m.ok_or(Error::InvalidParameter {
            name: "m",
            reason: format!("{theorem} needs m"),
        })?;
        if m < 3 || m + 1 > n {
            return Err(Error::InvalidOrder { n, m, min: 3 });
        }
        Ok(m)
    };
    if !theorem.uses_m() && n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3 });
    }
    f.require_order(n)?;

    let (lower, upper) = match theorem {
        Theorem::Tm21 => (None, Some(a_side(need_m()?)?)),
        Theorem::Tm22 => (None, Some(b_side(need_m()?)?)),
        Theorem::Cor21 => {
            let m = need_m()?;
            (Some(a_side(m)?), Some(b_side(m)?))
        }
        Theorem::Tm23 => (Some(a_m1()?), Some(a_m2()?)),
        Theorem::Tm24 => (Some(b_m2()?), Some(b_m1()?)),
    };
    Ok(DirectBounds {
        divergence,
        chord_at_one,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{classify, make_generator, GeneratorKind, GeneratorSpec};

    fn pv(v: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(v.to_vec()).unwrap()
    }

    fn pair() -> (ProbabilityVector, ProbabilityVector) {
        (pv(&[0.5, 0.5]), pv(&[0.25, 0.75]))
    }

    fn generator(kind: GeneratorKind, lo: f64, hi: f64) -> FunctionModel {
        make_generator(&GeneratorSpec::new(kind, Interval::new(lo, hi).unwrap())).unwrap()
    }

    #[test]
    fn reference_values() {
        let (p, q) = pair();
        // ½ Σ (√q − √p)²
        let hellinger = f_divergence(&generator(GeneratorKind::Hellinger, 0.5, 2.0), &p, &q).unwrap();
        assert!((hellinger - 0.034074173710931714).abs() < 1e-8);
        // Σ p ln(p / q) = ½ ln(4/3)
        let kl = f_divergence(&generator(GeneratorKind::Kl, 0.5, 2.0), &p, &q).unwrap();
        assert!((kl - 0.14384103622589042).abs() < 1e-6);
        assert!((kl - 0.5 * (4.0f64 / 3.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn identical_distributions_vanish() {
        let p = pv(&[0.1, 0.2, 0.7]);
        for kind in [GeneratorKind::Kl, GeneratorKind::Hellinger, GeneratorKind::Jeffreys] {
            let f = generator(kind, 0.5, 2.0);
            assert!(f_divergence(&f, &p, &p).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn zero_conventions() {
        let kl = generator(GeneratorKind::Kl, 0.5, 2.0);
        // p_i = 0 uses f(0+) = 0; p = q = 0 contributes nothing
        let v = f_divergence(&kl, &pv(&[0.0, 1.0, 0.0]), &pv(&[0.5, 0.5, 0.0])).unwrap();
        assert!((v - 0.5 * 2.0f64.ln() * 2.0).abs() < 1e-15);
        // q_i = 0 < p_i uses the slope at infinity: unbounded for kl,
        // undeclared for a bare model
        assert_eq!(f_divergence(&kl, &pv(&[0.5, 0.5]), &pv(&[1.0, 0.0])).unwrap(), f64::INFINITY);
        let bare = FunctionModel::new("sq", Interval::new(0.0, 2.0).unwrap(), 2, |k, t| match k {
            0 => t * t,
            1 => 2.0 * t,
            _ => 2.0,
        });
        assert!(matches!(
            f_divergence(&bare, &pv(&[0.5, 0.5]), &pv(&[1.0, 0.0])),
            Err(Error::MissingLimit { index: 1 })
        ));
        let h = generator(GeneratorKind::Hellinger, 0.5, 2.0);
        let v = f_divergence(&h, &pv(&[0.5, 0.5]), &pv(&[1.0, 0.0])).unwrap();
        // 1·f(0.5) + 0.5·(1/2)
        assert!((v - (0.5 * (1.0 - 0.5f64.sqrt()).powi(2) + 0.25)).abs() < 1e-15);
    }

    #[test]
    fn ratio_range_examples() {
        let (p, q) = pair();
        let r = ratio_range(&p, &q).unwrap();
        assert!((r.a - 2.0 / 3.0).abs() < 1e-15 && r.b == 2.0);
        let same = ratio_range(&p, &p).unwrap();
        assert!(same.is_degenerate());
        assert!(matches!(same.to_interval(), Err(Error::InvalidRatioRange { .. })));
        assert!(matches!(ratio_range(&p, &pv(&[1.0, 0.0])), Err(Error::ZeroReference { index: 1 })));
    }

    #[test]
    fn probability_validation() {
        assert!(ProbabilityVector::new(vec![]).is_err());
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![1.5, -0.5]).is_err());
        let parsed: DistributionPair = serde_json::from_str(r#"{"p":[0.5,0.5],"q":[0.25,0.75]}"#).unwrap();
        assert_eq!(parsed.q.values(), &[0.25, 0.75]);
        assert!(serde_json::from_str::<DistributionPair>(r#"{"p":[0.5,0.6],"q":[0.25,0.75]}"#).is_err());
    }

    #[test]
    fn cubic_bracket_on_ratios() {
        let (p, q) = pair();
        let f = FunctionModel::polynomial(&[0.0, 0.0, 0.0, 1.0], Interval::new(0.0, 3.0).unwrap()).unwrap();
        let r = divergence_bounds(&f, &p, &q, 3, None, Theorem::Tm23, Convexity::Convex, None).unwrap();
        assert_eq!(r.interval, [2.0 / 3.0, 2.0]);
        assert!(r.bounds.direction_valid && r.bounds.holds());
        assert!(r.delegation_gap <= DELEGATION_TOLERANCE);
        assert!((r.bounds.lr - (r.divergence - r.chord_at_one)).abs() < 1e-12);
        // Σ q (p/q)³ = 0.25·8 + 0.75·8/27
        assert!((r.divergence - (2.0 + 2.0 / 9.0)).abs() < 1e-14);
    }

    #[test]
    fn jeffreys_tm24_with_certified_class() {
        let (p, q) = pair();
        let spec = GeneratorSpec::new(GeneratorKind::Jeffreys, Interval::new(2.0 / 3.0, 2.0).unwrap());
        let class = classify(&spec, 3).unwrap();
        assert_eq!(class, Convexity::Concave);
        let f = make_generator(&spec).unwrap();
        let r = divergence_bounds(&f, &p, &q, 3, None, Theorem::Tm24, class, None).unwrap();
        assert!(r.bounds.direction_valid && r.bounds.holds(), "{r:?}");
    }

    #[test]
    fn widened_interval_for_equal_distributions() {
        let p = pv(&[0.3, 0.7]);
        let f = FunctionModel::polynomial(&[1.0, -2.0, 0.5], Interval::new(0.0, 3.0).unwrap()).unwrap();
        assert!(divergence_bounds(&f, &p, &p, 3, None, Theorem::Tm23, Convexity::Convex, None).is_err());
        let wide = Some(Interval::new(0.5, 2.0).unwrap());
        let r = divergence_bounds(&f, &p, &p, 3, None, Theorem::Tm23, Convexity::Convex, wide).unwrap();
        assert!(r.bounds.is_tight());
        // an override must contain 1 and the ratios
        assert!(divergence_bounds(&f, &p, &p, 3, None, Theorem::Tm23, Convexity::Convex, Some(Interval::new(1.5, 2.0).unwrap())).is_err());
    }

    #[test]
    fn every_statement_delegates() {
        let p = pv(&[0.1, 0.25, 0.3, 0.35]);
        let q = pv(&[0.2, 0.2, 0.4, 0.2]);
        let f = generator(GeneratorKind::Kl, 0.5, 1.75);
        for theorem in Theorem::ALL {
            let (n, m) = if theorem.uses_m() { (5, Some(3)) } else { (5, None) };
            let r = divergence_bounds(&f, &p, &q, n, m, theorem, Convexity::Concave, None).unwrap();
            assert!(r.delegation_gap <= DELEGATION_TOLERANCE, "{theorem}");
            assert!(r.bounds.holds(), "{theorem}: {:?}", r.bounds);
        }
    }
}
