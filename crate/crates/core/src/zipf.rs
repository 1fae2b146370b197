//! Zipf–Mandelbrot laws on `{1, ..., N}` with pmf `(i + q)^(−s) / H_{N,q,s}`.

use serde::{Deserialize, Serialize};

use crate::bounds::Theorem;
use crate::divergence::{self, DivergenceReport, ProbabilityVector, RatioRange};
use crate::error::{Error, Result};
use crate::function::Interval;
use crate::generators::{classify, make_generator, GeneratorKind, GeneratorSpec};

/// Above this exponent magnitude terms are formed as `exp(−s ln(i + q))`.
const LOG_SPACE_THRESHOLD: f64 = 600.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZipfMandelbrot {
    n: usize,
    q: f64,
    s: f64,
}

impl ZipfMandelbrot {
    pub fn new(n: usize, q: f64, s: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "N",
                reason: "must be at least 1".into(),
            });
        }
        if !(q.is_finite() && q >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "q",
                reason: format!("must be finite and >= 0, got {q}"),
            });
        }
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidParameter {
                name: "s",
                reason: format!("must be finite and > 0, got {s}"),
            });
        }
        Ok(Self { n, q, s })
    }

    /// Zipf's law: `q = 0`.
    pub fn zipf(n: usize, s: f64) -> Result<Self> {
        Self::new(n, 0.0, s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// `(i + q)^(−s)`.
    fn weight(&self, i: usize) -> f64 {
        let base = i as f64 + self.q;
        let exponent = self.s * base.ln();
        if exponent > LOG_SPACE_THRESHOLD {
            (-exponent).exp()
        } else {
            base.powf(-self.s)
        }
    }

    /// `H_{N,q,s} = Σ_{i=1}^{N} (i + q)^(−s)`.
    pub fn normalizer(&self) -> f64 {
        (1..=self.n).map(|i| self.weight(i)).sum()
    }

    /// `ln H_{N,q,s}`, accumulated in shifted log space so it stays finite
    /// when the individual terms underflow.
    pub fn log_normalizer(&self) -> f64 {
        let top = self.log_weight(1);
        let sum: f64 = (1..=self.n).map(|i| (self.log_weight(i) - top).exp()).sum();
        top + sum.ln()
    }

    fn log_weight(&self, i: usize) -> f64 {
        -self.s * (i as f64 + self.q).ln()
    }

    pub fn pmf(&self, i: usize) -> Result<f64> {
        if i < 1 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        Ok((self.log_weight(i) - self.log_normalizer()).exp())
    }

    /// `[pmf(1), ..., pmf(N)]`.
    pub fn pmf_vector(&self) -> Vec<f64> {
        let log_h = self.log_normalizer();
        (1..=self.n).map(|i| (self.log_weight(i) - log_h).exp()).collect()
    }

    pub fn distribution(&self) -> Result<ProbabilityVector> {
        ProbabilityVector::new(self.pmf_vector())
    }
}

fn same_support(p: &ZipfMandelbrot, q: &ZipfMandelbrot) -> Result<()> {
    if p.n != q.n {
        return Err(Error::LengthMismatch {
            left: "P",
            left_len: p.n,
            right: "Q",
            right_len: q.n,
        });
    }
    Ok(())
}

/// Extremes of `p_i / q_i = (H_Q / H_P) (i + q_Q)^(s_Q) / (i + q_P)^(s_P)`,
/// scanned over every `i`.
pub fn ratio_extrema(p: &ZipfMandelbrot, q: &ZipfMandelbrot) -> Result<RatioRange> {
    same_support(p, q)?;
    let log_scale = q.log_normalizer() - p.log_normalizer();
    let (mut a, mut b) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 1..=p.n {
        let r = (log_scale + q.s * (i as f64 + q.q).ln() - p.s * (i as f64 + p.q).ln()).exp();
        a = a.min(r);
        b = b.max(r);
    }
    Ok(RatioRange { a, b })
}

/// Bound statement for `D̃_f(P, Q)` between two Zipf–Mandelbrot laws.
///
/// Both pmfs are materialized and handed to
/// [`divergence::divergence_bounds`]; the generator is placed on the ratio
/// interval (or `interval`, if wider) and its class for `n` is taken from
/// [`classify`].
pub fn zm_divergence_bounds(
    p: &ZipfMandelbrot,
    q: &ZipfMandelbrot,
    generator: &GeneratorKind,
    n: usize,
    m: Option<usize>,
    theorem: Theorem,
    interval: Option<Interval>,
) -> Result<DivergenceReport> {
    same_support(p, q)?;
    let pv = p.distribution()?;
    let qv = q.distribution()?;
    let domain = match interval {
        Some(i) => i,
        None => divergence::ratio_range(&pv, &qv)?.to_interval()?,
    };
    let spec = GeneratorSpec::new(generator.clone(), domain);
    let f = make_generator(&spec)?;
    let convexity = classify(&spec, n)?;
    divergence::divergence_bounds(&f, &pv, &qv, n, m, theorem, convexity, interval)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizer_values() {
        assert_eq!(ZipfMandelbrot::zipf(2, 1.0).unwrap().normalizer(), 1.5);
        let single = ZipfMandelbrot::new(1, 2.5, 1.7).unwrap();
        assert!((single.normalizer() - 3.5f64.powf(-1.7)).abs() < 1e-16);
        let zm = ZipfMandelbrot::new(3, 1.0, 2.0).unwrap();
        let h = 0.25 + 1.0 / 9.0 + 1.0 / 16.0;
        assert!((zm.normalizer() - h).abs() < 1e-15);
    }

    #[test]
    fn pmf_values() {
        assert!((ZipfMandelbrot::zipf(2, 1.0).unwrap().pmf(1).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let zm = ZipfMandelbrot::new(3, 1.0, 2.0).unwrap();
        // (1/9) / (1/4 + 1/9 + 1/16) = 16/61
        assert!((zm.pmf(2).unwrap() - 16.0 / 61.0).abs() < 1e-15);
        assert!(matches!(zm.pmf(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(zm.pmf(4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn parameter_validation() {
        assert!(ZipfMandelbrot::new(0, 0.0, 1.0).is_err());
        assert!(ZipfMandelbrot::new(3, -0.1, 1.0).is_err());
        assert!(ZipfMandelbrot::new(3, 0.0, 0.0).is_err());
    }

    #[test]
    fn huge_exponents_stay_finite() {
        let zm = ZipfMandelbrot::new(50, 1e6, 200.0).unwrap();
        assert_eq!(zm.normalizer(), 0.0);
        let sum: f64 = zm.pmf_vector().iter().sum();
        assert!((sum - 1.0).abs() < 1e-12, "{sum}");
    }

    #[test]
    fn ratio_extrema_examples() {
        let p = ZipfMandelbrot::zipf(2, 1.0).unwrap();
        let q = ZipfMandelbrot::zipf(2, 2.0).unwrap();
        let r = ratio_extrema(&p, &q).unwrap();
        assert!((r.a - 5.0 / 6.0).abs() < 1e-12);
        assert!((r.b - 5.0 / 3.0).abs() < 1e-12);
        let same = ratio_extrema(&p, &p).unwrap();
        assert!((same.a - 1.0).abs() < 1e-15 && (same.b - 1.0).abs() < 1e-15);
        assert!(ratio_extrema(&p, &ZipfMandelbrot::zipf(3, 1.0).unwrap()).is_err());
    }
}
