//! Edmundson-Lah-Ribarič differences for n-convex functions: exact
//! expansions around either endpoint, and the directional bounds and
//! brackets obtained by dropping the remainder.
//!
//! Two expansions of `LR(f, A)` are available. [`decompose_lemma21`] expands
//! the Hermite interpolant of type (m, n − m) with `m` conditions at `a`;
//! [`decompose_lemma22`] is its mirror image with `m` conditions at `b`. In
//! both cases `LR = Σ terms + A(remainder)`, and the sign of the remainder is
//! fixed by `n`, `m` and the n-convexity of `f`. The bound operations keep the
//! terms and pick the direction from a dispatch table ([`dispatch`]).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::divided_diff::{divided_difference, remainder_r, remainder_r_star, NodeMultiset};
use crate::error::{Error, Result};
use crate::function::FunctionModel;
use crate::functional::DiscreteFunctional;

/// Sign class of the n-th order divided differences of a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convexity {
    #[serde(rename = "n-convex")]
    Convex,
    #[serde(rename = "n-concave")]
    Concave,
    #[serde(rename = "indefinite")]
    Indefinite,
}

impl Convexity {
    /// Class of `-f`.
    pub fn flipped(self) -> Self {
        match self {
            Convexity::Convex => Convexity::Concave,
            Convexity::Concave => Convexity::Convex,
            Convexity::Indefinite => Convexity::Indefinite,
        }
    }

    pub fn is_definite(self) -> bool {
        self != Convexity::Indefinite
    }
}

impl fmt::Display for Convexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convexity::Convex => "n-convex",
            Convexity::Concave => "n-concave",
            Convexity::Indefinite => "indefinite",
        })
    }
}

impl FromStr for Convexity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "convex" | "n-convex" => Ok(Convexity::Convex),
            "concave" | "n-concave" => Ok(Convexity::Concave),
            "indefinite" => Ok(Convexity::Indefinite),
            other => Err(Error::InvalidParameter {
                name: "convexity",
                reason: format!("unknown class `{other}`"),
            }),
        }
    }
}

/// Which bound statement to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Theorem {
    /// One-sided bound from the a-anchored expansion, `m >= 3`.
    Tm21,
    /// One-sided bound from the b-anchored expansion, `m >= 3`.
    Tm22,
    /// Two-sided bracket combining `Tm21` and `Tm22`, `n` odd.
    Cor21,
    /// Bracket from the a-anchored expansions with `m = 1` and `m = 2`.
    Tm23,
    /// Bracket from the b-anchored expansions with `m = 1` and `m = 2`.
    Tm24,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [
        Theorem::Tm21,
        Theorem::Tm22,
        Theorem::Cor21,
        Theorem::Tm23,
        Theorem::Tm24,
    ];

    /// Whether the statement takes an `m` parameter.
    pub fn uses_m(self) -> bool {
        matches!(self, Theorem::Tm21 | Theorem::Tm22 | Theorem::Cor21)
    }

    pub fn is_bracket(self) -> bool {
        matches!(self, Theorem::Cor21 | Theorem::Tm23 | Theorem::Tm24)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Tm21 => "TM21",
            Theorem::Tm22 => "TM22",
            Theorem::Cor21 => "COR21",
            Theorem::Tm23 => "TM23",
            Theorem::Tm24 => "TM24",
        })
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tm21" => Ok(Theorem::Tm21),
            "tm22" => Ok(Theorem::Tm22),
            "cor21" => Ok(Theorem::Cor21),
            "tm23" => Ok(Theorem::Tm23),
            "tm24" => Ok(Theorem::Tm24),
            other => Err(Error::InvalidParameter {
                name: "theorem",
                reason: format!("unknown tag `{other}`"),
            }),
        }
    }
}

/// Endpoint at which the Hermite expansion places its `m` conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Anchor {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    /// `(A(g) − a)(f[a,a] − f[a,b])` or its mirror `(b − A(g))(f[a,b] − f[b,b])`.
    Slope,
    /// `f^(k)(c)/k! · A[(g − c)^k]`.
    Taylor,
    /// Mixed divided difference times a product moment.
    Mixed,
}

/// One summand `coefficient × moment` of an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub kind: TermKind,
    pub k: usize,
    pub coefficient: f64,
    pub moment: f64,
}

impl Term {
    pub fn value(&self) -> f64 {
        self.coefficient * self.moment
    }
}

pub fn sum_terms(terms: &[Term]) -> f64 {
    terms.iter().map(Term::value).sum()
}

/// `LR = Σ terms + remainder`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub anchor: Anchor,
    pub n: usize,
    pub m: usize,
    pub terms: Vec<Term>,
    pub remainder: f64,
    pub lr: f64,
}

impl Decomposition {
    pub fn sum(&self) -> f64 {
        sum_terms(&self.terms)
    }

    /// `|LR − Σ terms − remainder|`.
    pub fn residual(&self) -> f64 {
        (self.lr - self.sum() - self.remainder).abs()
    }
}

fn check_nm(n: usize, m: usize, min_m: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    if m < min_m || m + 1 > n {
        return Err(Error::InvalidOrder { n, m, min: min_m });
    }
    Ok(())
}

/// `f[x × i; y × j]`.
fn dd2(f: &FunctionModel, x: f64, i: usize, y: f64, j: usize) -> Result<f64> {
    divided_difference(f, &NodeMultiset::two_point(x, i, y, j)?)
}

/// Summands of the expansion anchored at `anchor`, remainder excluded.
pub fn expansion_terms(
    f: &FunctionModel,
    functional: &DiscreteFunctional,
    anchor: Anchor,
    n: usize,
    m: usize,
) -> Result<Vec<Term>> {
    check_nm(n, m, 1)?;
    f.require_order(n)?;
    functional.require_domain(f)?;
    let interval = functional.interval();
    let (a, b) = (interval.lo(), interval.hi());
    // near endpoint c with m conditions, far endpoint d
    let (c, d) = match anchor {
        Anchor::A => (a, b),
        Anchor::B => (b, a),
    };
    // A[(g − c)^i (g − d)^j]
    let moment = |i: usize, j: usize| match anchor {
        Anchor::A => functional.moment(i, j),
        Anchor::B => functional.moment(j, i),
    };
    let mixed = |k: usize, coefficient: f64, moment: f64| Term {
        kind: TermKind::Mixed,
        k,
        coefficient,
        moment,
    };

    let mut terms = Vec::new();
    match m {
        1 => {
            for k in 2..n {
                terms.push(mixed(k, dd2(f, c, 1, d, k)?, moment(1, k - 1)));
            }
        }
        2 => {
            terms.push(mixed(1, dd2(f, c, 2, d, 1)?, moment(1, 1)));
            for k in 2..n - 1 {
                terms.push(mixed(k, dd2(f, c, 2, d, k)?, moment(2, k - 1)));
            }
        }
        _ => {
            let chord_slope = dd2(f, a, 1, b, 1)?;
            let tangent = dd2(f, c, 2, d, 0)?;
            let (coefficient, mom) = match anchor {
                Anchor::A => (tangent - chord_slope, functional.mean() - a),
                Anchor::B => (chord_slope - tangent, b - functional.mean()),
            };
            terms.push(Term {
                kind: TermKind::Slope,
                k: 1,
                coefficient,
                moment: mom,
            });
            for k in 2..m {
                terms.push(Term {
                    kind: TermKind::Taylor,
                    k,
                    coefficient: dd2(f, c, k + 1, d, 0)?,
                    moment: moment(k, 0),
                });
            }
            for k in 1..=n - m {
                terms.push(mixed(k, dd2(f, c, m, d, k)?, moment(m, k - 1)));
            }
        }
    }
    Ok(terms)
}

fn decompose(
    f: &FunctionModel,
    functional: &DiscreteFunctional,
    anchor: Anchor,
    n: usize,
    m: usize,
) -> Result<Decomposition> {
    let terms = expansion_terms(f, functional, anchor, n, m)?;
    let interval = functional.interval();
    let (a, b) = (interval.lo(), interval.hi());
    let remainder = match anchor {
        Anchor::A => functional.try_apply(|t| remainder_r(f, a, b, m, n, t))?,
        Anchor::B => functional.try_apply(|t| remainder_r_star(f, a, b, m, n, t))?,
    };
    Ok(Decomposition {
        anchor,
        n,
        m,
        terms,
        remainder,
        lr: functional.lr_difference(f)?,
    })
}

/// Exact expansion of `LR(f, A)` with `m` Hermite conditions at `a`.
pub fn decompose_lemma21(
    f: &FunctionModel,
    functional: &DiscreteFunctional,
    n: usize,
    m: usize,
) -> Result<Decomposition> {
    decompose(f, functional, Anchor::A, n, m)
}

/// Exact expansion of `LR(f, A)` with `m` Hermite conditions at `b`.
pub fn decompose_lemma22(
    f: &FunctionModel,
    functional: &DiscreteFunctional,
    n: usize,
    m: usize,
) -> Result<Decomposition> {
    decompose(f, functional, Anchor::B, n, m)
}

/// Hypotheses of a bound statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCase {
    pub n: usize,
    pub m: Option<usize>,
    pub convexity: Convexity,
}

/// Direction chosen for a statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dispatch {
    /// The n-convex orientation of the display applies (otherwise every sign is reversed).
    pub forward: bool,
    /// The hypotheses fix a direction at all.
    pub direction_valid: bool,
}

impl Dispatch {
    pub fn reversed(self) -> Self {
        Dispatch {
            forward: !self.forward,
            ..self
        }
    }
}

/// Direction table.
///
/// | statement | forward when |
/// |-----------|--------------|
/// | TM21  | n-convex and parity(n) != parity(m), or n-concave and parity(n) == parity(m) |
/// | TM22  | n-convex and m odd, or n-concave and m even |
/// | COR21 | same as TM22; requires n odd |
/// | TM23  | n-convex and n odd, or n-concave and n even |
/// | TM24  | n-convex |
///
/// An indefinite class never yields a valid direction.
pub fn dispatch(theorem: Theorem, case: &ParityCase) -> Dispatch {
    let convex = case.convexity == Convexity::Convex;
    let definite = case.convexity.is_definite();
    let n_odd = case.n % 2 == 1;
    let m_odd = case.m.map(|m| m % 2 == 1).unwrap_or(false);
    let (forward, valid) = match theorem {
        Theorem::Tm21 => (convex == (n_odd != m_odd), definite),
        Theorem::Tm22 => (convex == m_odd, definite),
        Theorem::Cor21 => (convex == m_odd, definite && n_odd),
        Theorem::Tm23 => (convex == n_odd, definite),
        Theorem::Tm24 => (convex, definite),
    };
    Dispatch {
        forward: forward || !definite,
        direction_valid: valid,
    }
}

/// Bound expressions in their n-convex orientation, before dispatch.
#[derive(Debug, Clone, PartialEq)]
pub struct RawBound {
    pub theorem: Theorem,
    pub lower: Option<Vec<Term>>,
    pub upper: Option<Vec<Term>>,
}

fn required_m(theorem: Theorem, n: usize, m: Option<usize>) -> Result<Option<usize>> {
    if theorem.uses_m() {
        let m = m.ok_or(Error::InvalidParameter {
            name: "m",
            reason: format!("{theorem} needs m"),
        })?;
        check_nm(n, m, 3)?;
        Ok(Some(m))
    } else {
        if n < 3 {
            return Err(Error::OrderTooSmall { n, min: 3 });
        }
        Ok(None)
    }
}

/// Expressions of a statement, without direction.
pub fn raw_bound(
    theorem: Theorem,
    f: &FunctionModel,
    functional: &DiscreteFunctional,
    n: usize,
    m: Option<usize>,
) -> Result<RawBound> {
    let m = required_m(theorem, n, m)?;
    let terms = |anchor, m| expansion_terms(f, functional, anchor, n, m);
    let (lower, upper) = match (theorem, m) {
        (Theorem::Tm21, Some(m)) => (None, Some(terms(Anchor::A, m)?)),
        (Theorem::Tm22, Some(m)) => (None, Some(terms(Anchor::B, m)?)),
        (Theorem::Cor21, Some(m)) => (Some(terms(Anchor::A, m)?), Some(terms(Anchor::B, m)?)),
        (Theorem::Tm23, _) => (Some(terms(Anchor::A, 1)?), Some(terms(Anchor::A, 2)?)),
        (Theorem::Tm24, _) => (Some(terms(Anchor::B, 2)?), Some(terms(Anchor::B, 1)?)),
        _ => unreachable!("m presence checked by required_m"),
    };
    Ok(RawBound {
        theorem,
        lower,
        upper,
    })
}

/// Result of a bound statement applied to a concrete `(f, A)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lr: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub theorem: Theorem,
    #[serde(flatten)]
    pub case: ParityCase,
    pub direction_valid: bool,
    #[serde(skip)]
    pub lower_terms: Vec<Term>,
    #[serde(skip)]
    pub upper_terms: Vec<Term>,
}

impl BoundReport {
    /// Containment tolerance `1e-9 (1 + |lr|)`.
    pub fn tolerance(&self) -> f64 {
        1e-9 * (1.0 + self.lr.abs())
    }

    /// `lower <= lr <= upper` (where present) within [`tolerance`](Self::tolerance).
    pub fn holds(&self) -> bool {
        let tol = self.tolerance();
        self.lower.is_none_or(|lo| lo <= self.lr + tol) && self.upper.is_none_or(|up| self.lr <= up + tol)
    }

    /// Largest amount by which a present bound is exceeded (0 when it holds exactly).
    pub fn excess(&self) -> f64 {
        let below = self.lower.map_or(0.0, |lo| (lo - self.lr).max(0.0));
        let above = self.upper.map_or(0.0, |up| (self.lr - up).max(0.0));
        below.max(above)
    }

    /// Every present bound equals `lr` within tolerance.
    pub fn is_tight(&self) -> bool {
        let tol = self.tolerance();
        self.lower.is_none_or(|lo| (lo - self.lr).abs() <= tol)
            && self.upper.is_none_or(|up| (up - self.lr).abs() <= tol)
    }
}

/// Places the raw expressions according to `dispatch`.
pub fn assemble(raw: RawBound, lr: f64, case: ParityCase, dispatch: Dispatch) -> BoundReport {
    let (lower, upper) = if dispatch.forward {
        (raw.lower, raw.upper)
    } else {
        (raw.upper, raw.lower)
    };
    BoundReport {
        lr,
        lower: lower.as_deref().map(sum_terms),
        upper: upper.as_deref().map(sum_terms),
        theorem: raw.theorem,
        case,
        direction_valid: dispatch.direction_valid,
        lower_terms: lower.unwrap_or_default(),
        upper_terms: upper.unwrap_or_default(),
    }
}

/// Evaluates any statement with its direction taken from [`dispatch`].
pub fn bound(
    theorem: Theorem,
    f: &FunctionModel,
    functional: &DiscreteFunctional,
    n: usize,
    m: Option<usize>,
    convexity: Convexity,
) -> Result<BoundReport> {
    let raw = raw_bound(theorem, f, functional, n, m)?;
    let case = ParityCase {
        n,
        m: if theorem.uses_m() { m } else { None },
        convexity,
    };
    let lr = functional.lr_difference(f)?;
    Ok(assemble(raw, lr, case, dispatch(theorem, &case)))
}

pub fn bound_tm21(
    f: &FunctionModel,
    functional: &DiscreteFunctional,
    n: usize,
    m: usize,
    convexity: Convexity,
) -> Result<BoundReport> {
    bound(Theorem::Tm21, f, functional, n, Some(m), convexity)
}

pub fn bound_tm22(
    f: &FunctionModel,
    functional: &DiscreteFunctional,
    n: usize,
    m: usize,
    convexity: Convexity,
) -> Result<BoundReport> {
    bound(Theorem::Tm22, f, functional, n, Some(m), convexity)
}

pub fn bracket_cor21(
    f: &FunctionModel,
    functional: &DiscreteFunctional,
    n: usize,
    m: usize,
    convexity: Convexity,
) -> Result<BoundReport> {
    bound(Theorem::Cor21, f, functional, n, Some(m), convexity)
}

pub fn bracket_tm23(
    f: &FunctionModel,
    functional: &DiscreteFunctional,
    n: usize,
    convexity: Convexity,
) -> Result<BoundReport> {
    bound(Theorem::Tm23, f, functional, n, None, convexity)
}

pub fn bracket_tm24(
    f: &FunctionModel,
    functional: &DiscreteFunctional,
    n: usize,
    convexity: Convexity,
) -> Result<BoundReport> {
    bound(Theorem::Tm24, f, functional, n, None, convexity)
}

/// Legacy n = 3 bracket: the closed-form lower value
/// `A[(g − a)(g − b)] / (b − a) · (f'(b) − f[a, b])` paired with the
/// algorithmic upper value of the a-anchored bracket.
pub fn n3_closed_form(f: &FunctionModel, functional: &DiscreteFunctional) -> Result<(f64, f64)> {
    f.require_order(3)?;
    functional.require_domain(f)?;
    let interval = functional.interval();
    let (a, b) = (interval.lo(), interval.hi());
    let slope = (f.eval(b) - f.eval(a)) / (b - a);
    let lower = functional.moment(1, 1) / (b - a) * (f.deriv(1, b)? - slope);
    let upper = sum_terms(&expansion_terms(f, functional, Anchor::A, 3, 2)?);
    Ok((lower, upper))
}
