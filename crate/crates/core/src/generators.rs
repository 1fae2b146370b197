//! Built-in generating functions with closed-form derivative stacks.
//!
//! `kl`, `hellinger`, `harmonic` and `jeffreys` are the usual f-divergence
//! generators. `exp`, `power:<p>` and `poly:<c0,c1,...>` are extra test
//! functions for arbitrary n.

use std::fmt;
use std::str::FromStr;

use crate::bounds::Convexity;
use crate::error::{Error, Result};
use crate::function::{FunctionModel, Interval, Limits};
use crate::poly;

/// Highest derivative order exposed by the closed-form generators.
pub const MAX_GENERATOR_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorKind {
    /// `t ln t`
    Kl,
    /// `(1 − √t)² / 2`
    Hellinger,
    /// `2t / (1 + t)`
    Harmonic,
    /// `(1 − t) ln(1/t)`
    Jeffreys,
    Exp,
    /// Ascending coefficients.
    Poly(Vec<f64>),
    /// `t^p`
    Power(f64),
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::Kl => f.write_str("kl"),
            GeneratorKind::Hellinger => f.write_str("hellinger"),
            GeneratorKind::Harmonic => f.write_str("harmonic"),
            GeneratorKind::Jeffreys => f.write_str("jeffreys"),
            GeneratorKind::Exp => f.write_str("exp"),
            GeneratorKind::Poly(c) => write!(
                f,
                "poly:{}",
                c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ),
            GeneratorKind::Power(p) => write!(f, "power:{p}"),
        }
    }
}

fn parse_number(name: &'static str, s: &str) -> Result<f64> {
    let v: f64 = s.trim().parse().map_err(|_| Error::InvalidParameter {
        name,
        reason: format!("`{s}` is not a number"),
    })?;
    if !v.is_finite() {
        return Err(Error::NonFinite { field: name });
    }
    Ok(v)
}

impl FromStr for GeneratorKind {
    type Err = Error;

    /// `kl|hellinger|harmonic|jeffreys|exp|poly:<c0,c1,...>|power:<p>`
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        match (head.to_ascii_lowercase().as_str(), tail) {
            ("kl", None) => Ok(GeneratorKind::Kl),
            ("hellinger", None) => Ok(GeneratorKind::Hellinger),
            ("harmonic", None) => Ok(GeneratorKind::Harmonic),
            ("jeffreys", None) => Ok(GeneratorKind::Jeffreys),
            ("exp", None) => Ok(GeneratorKind::Exp),
            ("poly", Some(list)) => list
                .split(',')
                .map(|c| parse_number("poly", c))
                .collect::<Result<Vec<_>>>()
                .map(GeneratorKind::Poly),
            ("power", Some(p)) => parse_number("power", p).map(GeneratorKind::Power),
            _ => Err(Error::InvalidParameter {
                name: "function",
                reason: format!(
                    "unknown generator `{s}` (expected kl, hellinger, harmonic, jeffreys, exp, poly:<c0,c1,...> or power:<p>)"
                ),
            }),
        }
    }
}

/// A generator together with the interval it is used on.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub domain: Interval,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, domain: Interval) -> Self {
        Self { kind, domain }
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

/// `(2k − 3)!! = 1 · 3 · 5 ··· (2k − 3)`, empty product for k <= 1.
fn odd_double_factorial(k: usize) -> f64 {
    (1..k).map(|j| (2 * j - 1) as f64).product()
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn is_nonnegative_integer(p: f64) -> bool {
    p >= 0.0 && p.fract() == 0.0
}

fn kl(k: usize, t: f64) -> f64 {
    match k {
        0 => t * t.ln(),
        1 => t.ln() + 1.0,
        // (−1)^k (k−2)! t^{−(k−1)}
        _ => sign(k) * factorial(k - 2) * t.powi(-(k as i32 - 1)),
    }
}

fn hellinger(k: usize, t: f64) -> f64 {
    match k {
        0 => 0.5 * (1.0 - t.sqrt()).powi(2),
        1 => (t.sqrt() - 1.0) / (2.0 * t.sqrt()),
        // (−1)^k (2k−3)!! / 2^k · t^{−(2k−1)/2}
        _ => sign(k) * odd_double_factorial(k) / 2f64.powi(k as i32) * t.powf(-(2.0 * k as f64 - 1.0) / 2.0),
    }
}

fn harmonic(k: usize, t: f64) -> f64 {
    match k {
        0 => 2.0 * t / (1.0 + t),
        // 2 (−1)^{k+1} k! (1+t)^{−(k+1)}
        _ => -2.0 * sign(k) * factorial(k) * (1.0 + t).powi(-(k as i32 + 1)),
    }
}

fn jeffreys(k: usize, t: f64) -> f64 {
    match k {
        0 => (t - 1.0) * t.ln(),
        1 => t.ln() + 1.0 - 1.0 / t,
        // d^{k−2}(1/t + 1/t²) = (−1)^k (k−2)! t^{−k} (t + k − 1)
        _ => sign(k) * factorial(k - 2) * t.powi(-(k as i32)) * (t + k as f64 - 1.0),
    }
}

fn power(p: f64, k: usize, t: f64) -> f64 {
    let falling: f64 = (0..k).map(|j| p - j as f64).product();
    if falling == 0.0 {
        return 0.0;
    }
    falling * t.powf(p - k as f64)
}

fn require_positive(kind: &GeneratorKind, domain: Interval) -> Result<()> {
    if domain.lo() > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "domain",
            reason: format!("{kind} needs a domain inside (0, inf), got {domain}"),
        })
    }
}

/// Function model for a generator on its declared domain.
pub fn make_generator(spec: &GeneratorSpec) -> Result<FunctionModel> {
    let domain = spec.domain;
    let name = spec.kind.to_string();
    let model = match &spec.kind {
        GeneratorKind::Kl => {
            require_positive(&spec.kind, domain)?;
            FunctionModel::new(name, domain, MAX_GENERATOR_ORDER, kl).with_limits(Limits {
                at_zero: Some(0.0),
                slope_at_infinity: Some(f64::INFINITY),
            })
        }
        GeneratorKind::Hellinger => {
            require_positive(&spec.kind, domain)?;
            FunctionModel::new(name, domain, MAX_GENERATOR_ORDER, hellinger).with_limits(Limits {
                at_zero: Some(0.5),
                slope_at_infinity: Some(0.5),
            })
        }
        GeneratorKind::Harmonic => {
            if domain.contains(-1.0) {
                return Err(Error::InvalidParameter {
                    name: "domain",
                    reason: format!("harmonic generator is singular at -1, got {domain}"),
                });
            }
            FunctionModel::new(name, domain, MAX_GENERATOR_ORDER, harmonic).with_limits(Limits {
                at_zero: Some(0.0),
                slope_at_infinity: Some(0.0),
            })
        }
        GeneratorKind::Jeffreys => {
            require_positive(&spec.kind, domain)?;
            FunctionModel::new(name, domain, MAX_GENERATOR_ORDER, jeffreys).with_limits(Limits {
                at_zero: Some(f64::INFINITY),
                slope_at_infinity: Some(f64::INFINITY),
            })
        }
        GeneratorKind::Exp => FunctionModel::new(name, domain, MAX_GENERATOR_ORDER, |_, t| t.exp())
            .with_limits(Limits {
                at_zero: Some(1.0),
                slope_at_infinity: Some(f64::INFINITY),
            }),
        GeneratorKind::Poly(coeffs) => FunctionModel::polynomial(coeffs, domain)?,
        GeneratorKind::Power(p) => {
            let p = *p;
            if !is_nonnegative_integer(p) {
                require_positive(&spec.kind, domain)?;
            }
            let limits = Limits {
                at_zero: Some(if p == 0.0 {
                    1.0
                } else if p > 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }),
                slope_at_infinity: if p < 1.0 {
                    Some(0.0)
                } else if p == 1.0 {
                    Some(1.0)
                } else {
                    Some(f64::INFINITY)
                },
            };
            FunctionModel::new(name, domain, MAX_GENERATOR_ORDER, move |k, t| power(p, k, t))
                .with_limits(limits)
        }
    };
    Ok(model)
}

/// Class of a function whose sign changes only at `root`: `below` on the
/// left of it, the opposite on the right.
fn split_at(domain: Interval, root: f64, below: Convexity) -> Convexity {
    if domain.hi() <= root {
        below
    } else if domain.lo() >= root {
        below.flipped()
    } else {
        Convexity::Indefinite
    }
}

fn from_sign(s: f64) -> Convexity {
    if s >= 0.0 {
        Convexity::Convex
    } else {
        Convexity::Concave
    }
}

/// Sign class of the n-th derivative on the declared domain.
///
/// | generator | n-convex for | n-concave for |
/// |-----------|--------------|---------------|
/// | kl, hellinger, jeffreys | even n ≥ 2 | odd n ≥ 3 |
/// | harmonic on t > −1 | odd n | even n |
/// | harmonic on t < −1 | every n | – |
/// | exp | every n | – |
///
/// Powers use the sign of `p (p − 1) ··· (p − n + 1)`; polynomials use the
/// range of the n-th derivative on the domain and are indefinite when it
/// changes sign. A derivative that vanishes identically counts as n-convex.
/// Orders 0 and 1 of kl, hellinger and jeffreys depend on which side of the
/// sign change of `f` or `f'` the domain lies.
pub fn classify(spec: &GeneratorSpec, n: usize) -> Result<Convexity> {
    let limit = match spec.kind {
        GeneratorKind::Poly(_) => poly::MAX_ORDER,
        _ => MAX_GENERATOR_ORDER,
    };
    if n > limit {
        return Err(Error::OrderExceeded {
            required: n,
            available: limit,
        });
    }
    let even = n % 2 == 0;
    let class = match &spec.kind {
        GeneratorKind::Kl if n == 0 => split_at(spec.domain, 1.0, Convexity::Concave),
        GeneratorKind::Kl if n == 1 => split_at(spec.domain, (-1.0f64).exp(), Convexity::Concave),
        GeneratorKind::Hellinger | GeneratorKind::Jeffreys if n == 0 => Convexity::Convex,
        GeneratorKind::Hellinger | GeneratorKind::Jeffreys if n == 1 => {
            split_at(spec.domain, 1.0, Convexity::Concave)
        }
        GeneratorKind::Harmonic if n == 0 && spec.domain.hi() > -1.0 => {
            split_at(spec.domain, 0.0, Convexity::Concave)
        }
        GeneratorKind::Kl | GeneratorKind::Hellinger | GeneratorKind::Jeffreys => {
            if even {
                Convexity::Convex
            } else {
                Convexity::Concave
            }
        }
        GeneratorKind::Harmonic => {
            if spec.domain.hi() < -1.0 || !even {
                Convexity::Convex
            } else {
                Convexity::Concave
            }
        }
        GeneratorKind::Exp => Convexity::Convex,
        GeneratorKind::Power(p) => from_sign((0..n).map(|j| p - j as f64).product()),
        GeneratorKind::Poly(coeffs) => {
            let d = poly::derivative(coeffs, n);
            let (lo, hi) = poly::range_on(&d, spec.domain.lo(), spec.domain.hi());
            let scale = d.iter().fold(0.0_f64, |s, c| s.max(c.abs()));
            let tol = 1e-12 * scale;
            if lo >= -tol {
                Convexity::Convex
            } else if hi <= tol {
                Convexity::Concave
            } else {
                Convexity::Indefinite
            }
        }
    };
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on(kind: GeneratorKind, lo: f64, hi: f64) -> GeneratorSpec {
        GeneratorSpec::new(kind, Interval::new(lo, hi).unwrap())
    }

    #[test]
    fn parse_names() {
        assert_eq!("kl".parse::<GeneratorKind>().unwrap(), GeneratorKind::Kl);
        assert_eq!("Jeffreys".parse::<GeneratorKind>().unwrap(), GeneratorKind::Jeffreys);
        assert_eq!(
            "poly:0,0,1".parse::<GeneratorKind>().unwrap(),
            GeneratorKind::Poly(vec![0.0, 0.0, 1.0])
        );
        assert_eq!("power:2.5".parse::<GeneratorKind>().unwrap(), GeneratorKind::Power(2.5));
        assert!("poly:1,x".parse::<GeneratorKind>().is_err());
        assert!("sin".parse::<GeneratorKind>().is_err());
        assert!("kl:3".parse::<GeneratorKind>().is_err());
    }

    #[test]
    fn closed_form_spot_values() {
        let kl = make_generator(&on(GeneratorKind::Kl, 0.5, 2.0)).unwrap();
        assert_eq!(kl.deriv(2, 1.0).unwrap(), 1.0);
        let h = make_generator(&on(GeneratorKind::Hellinger, 0.5, 2.0)).unwrap();
        assert_eq!(h.deriv(1, 1.0).unwrap(), 0.0);
        // f'' = t^{-3/2}/4
        assert!((h.deriv(2, 0.25).unwrap() - 2.0).abs() < 1e-15);
        let p = make_generator(&on(GeneratorKind::Poly(vec![0.0, 0.0, 0.0, 1.0]), -1.0, 1.0)).unwrap();
        assert_eq!(p.deriv(3, 0.3).unwrap(), 6.0);
        let j = make_generator(&on(GeneratorKind::Jeffreys, 0.5, 2.0)).unwrap();
        // f'' = 1/t + 1/t^2
        assert!((j.deriv(2, 0.5).unwrap() - 6.0).abs() < 1e-14);
        // f''' = −(t + 2)/t^3
        assert!((j.deriv(3, 1.0).unwrap() + 3.0).abs() < 1e-14);
        let ha = make_generator(&on(GeneratorKind::Harmonic, 0.5, 2.0)).unwrap();
        assert!((ha.deriv(1, 1.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn unit_fixed_point() {
        for kind in [GeneratorKind::Kl, GeneratorKind::Hellinger, GeneratorKind::Jeffreys] {
            let f = make_generator(&on(kind, 0.5, 2.0)).unwrap();
            assert_eq!(f.eval(1.0), 0.0);
        }
    }

    #[test]
    fn domain_validation() {
        assert!(make_generator(&on(GeneratorKind::Kl, 0.0, 1.0)).is_err());
        assert!(make_generator(&on(GeneratorKind::Harmonic, -2.0, 0.0)).is_err());
        assert!(make_generator(&on(GeneratorKind::Harmonic, -3.0, -2.0)).is_ok());
        assert!(make_generator(&on(GeneratorKind::Power(0.5), -1.0, 1.0)).is_err());
        assert!(make_generator(&on(GeneratorKind::Power(3.0), -1.0, 1.0)).is_ok());
    }

    #[test]
    fn classification_table() {
        let pos = |k| on(k, 0.5, 2.0);
        assert_eq!(classify(&pos(GeneratorKind::Kl), 4).unwrap(), Convexity::Convex);
        assert_eq!(classify(&pos(GeneratorKind::Kl), 3).unwrap(), Convexity::Concave);
        assert_eq!(classify(&pos(GeneratorKind::Hellinger), 2).unwrap(), Convexity::Convex);
        assert_eq!(classify(&pos(GeneratorKind::Harmonic), 3).unwrap(), Convexity::Convex);
        assert_eq!(classify(&pos(GeneratorKind::Harmonic), 2).unwrap(), Convexity::Concave);
        assert_eq!(
            classify(&on(GeneratorKind::Harmonic, -3.0, -2.0), 2).unwrap(),
            Convexity::Convex
        );
        assert_eq!(classify(&pos(GeneratorKind::Jeffreys), 2).unwrap(), Convexity::Convex);
        assert_eq!(classify(&pos(GeneratorKind::Jeffreys), 3).unwrap(), Convexity::Concave);
        assert_eq!(
            classify(&pos(GeneratorKind::Poly(vec![0.0, 0.0, 0.0, 1.0])), 3).unwrap(),
            Convexity::Convex
        );
        assert_eq!(
            classify(&on(GeneratorKind::Poly(vec![0.0, 0.0, 0.0, 1.0]), -1.0, 1.0), 2).unwrap(),
            Convexity::Indefinite
        );
        assert_eq!(classify(&pos(GeneratorKind::Power(2.5)), 4).unwrap(), Convexity::Concave);
        assert!(classify(&pos(GeneratorKind::Kl), 13).is_err());
    }

    #[test]
    fn classification_matches_sampled_derivative_sign() {
        let kinds = [
            GeneratorKind::Kl,
            GeneratorKind::Hellinger,
            GeneratorKind::Harmonic,
            GeneratorKind::Jeffreys,
            GeneratorKind::Exp,
            GeneratorKind::Power(-1.5),
            GeneratorKind::Power(3.5),
        ];
        for kind in kinds {
            let spec = on(kind, 0.3, 3.0);
            let f = make_generator(&spec).unwrap();
            for n in 0..=MAX_GENERATOR_ORDER {
                let class = classify(&spec, n).unwrap();
                for i in 0..100 {
                    let t = 0.3 + 2.7 * i as f64 / 99.0;
                    let d = f.deriv(n, t).unwrap();
                    match class {
                        Convexity::Convex => assert!(d >= 0.0, "{} n={n} t={t}", spec.kind),
                        Convexity::Concave => assert!(d <= 0.0, "{} n={n} t={t}", spec.kind),
                        Convexity::Indefinite => {}
                    }
                }
            }
        }
    }
}
