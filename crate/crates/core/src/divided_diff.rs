//! Divided differences over node multisets, Newton and two-point Hermite
//! interpolants, and the interpolation remainders.
//!
//! Repeated nodes are handled by the confluent Newton table: nodes are
//! flattened in ascending order with equal values adjacent, a cell spanning
//! `j + 1` copies of the same node `t` holds `f^(j)(t) / j!`, and every other
//! cell uses the ordinary quotient recursion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::FunctionModel;

/// Distinct nodes closer than this (relative to the node scale) are rejected.
pub const MERGE_THRESHOLD: f64 = 1e-13;

/// Multiset of interpolation nodes, kept sorted with equal values merged.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeMultiset {
    entries: Vec<(f64, usize)>,
}

impl NodeMultiset {
    /// Builds from `(node, multiplicity)` pairs in any order; equal nodes are merged.
    pub fn new(entries: impl IntoIterator<Item = (f64, usize)>) -> Result<Self> {
        let mut raw: Vec<(f64, usize)> = Vec::new();
        for (node, mult) in entries {
            if !node.is_finite() {
                return Err(Error::NonFinite { field: "nodes" });
            }
            if mult == 0 {
                return Err(Error::ZeroMultiplicity { node });
            }
            raw.push((node, mult));
        }
        if raw.is_empty() {
            return Err(Error::EmptyNodes);
        }
        raw.sort_by(|x, y| x.0.total_cmp(&y.0));

        let mut entries: Vec<(f64, usize)> = Vec::with_capacity(raw.len());
        for (node, mult) in raw {
            match entries.last_mut() {
                // -0.0 == 0.0 merges as well
                Some(last) if last.0 == node => last.1 += mult,
                _ => entries.push((node, mult)),
            }
        }

        let scale = entries
            .iter()
            .fold(1.0_f64, |s, &(node, _)| s.max(node.abs()));
        for w in entries.windows(2) {
            if w[1].0 - w[0].0 < MERGE_THRESHOLD * scale {
                return Err(Error::NearlyEqualNodes {
                    first: w[0].0,
                    second: w[1].0,
                });
            }
        }
        Ok(Self { entries })
    }

    /// Every node with multiplicity one (duplicates are merged).
    pub fn simple(nodes: &[f64]) -> Result<Self> {
        Self::new(nodes.iter().map(|&t| (t, 1)))
    }

    /// `{a × m, b × (n − m)}`, the node set of a type (m, n − m) Hermite problem.
    pub fn two_point(a: f64, m: usize, b: f64, k: usize) -> Result<Self> {
        Self::new([(a, m), (b, k)].into_iter().filter(|&(_, c)| c > 0))
    }

    pub fn entries(&self) -> &[(f64, usize)] {
        &self.entries
    }

    pub fn total_count(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.1).max().unwrap_or(0)
    }

    /// Nodes repeated by multiplicity, ascending.
    pub fn flatten(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|&(node, mult)| std::iter::repeat_n(node, mult))
            .collect()
    }
}

/// Newton form `c0 + c1 (t − z0) + c2 (t − z0)(t − z1) + ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NewtonForm {
    pub nodes: Vec<f64>,
    pub coeffs: Vec<f64>,
}

impl NewtonForm {
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.coeffs.len();
        if n == 0 {
            return 0.0;
        }
        let mut p = self.coeffs[n - 1];
        for j in (0..n - 1).rev() {
            p = p * (t - self.nodes[j]) + self.coeffs[j];
        }
        p
    }

    /// Value and derivatives `p(t), p'(t), ..., p^(order)(t)`.
    pub fn derivatives(&self, t: f64, order: usize) -> Vec<f64> {
        // Taylor coefficients d[r] = p^(r)(t) / r!, updated by nested multiplication.
        let mut d = vec![0.0; order + 1];
        for j in (0..self.coeffs.len()).rev() {
            let h = t - self.nodes[j];
            for r in (1..=order).rev() {
                d[r] = d[r] * h + d[r - 1];
            }
            d[0] = d[0] * h + self.coeffs[j];
        }
        let mut fact = 1.0;
        for (r, v) in d.iter_mut().enumerate().skip(1) {
            fact *= r as f64;
            *v *= fact;
        }
        d
    }
}

fn check_nodes(f: &FunctionModel, nodes: &NodeMultiset) -> Result<()> {
    let domain = f.domain();
    for &(node, _) in nodes.entries() {
        domain.check(node)?;
    }
    f.require_order(nodes.max_multiplicity() - 1)
}

/// Full confluent table; returns the Newton coefficients `f[z0..zj]` for every j.
fn newton_table(f: &FunctionModel, nodes: &NodeMultiset) -> Result<(Vec<f64>, Vec<f64>)> {
    check_nodes(f, nodes)?;
    let z = nodes.flatten();
    let n = z.len();

    // scaled derivatives f^(j)(t)/j! for each distinct node, indexed by run
    let mut taylor: Vec<Vec<f64>> = Vec::with_capacity(nodes.entries().len());
    for &(node, mult) in nodes.entries() {
        let mut row = Vec::with_capacity(mult);
        let mut fact = 1.0;
        for j in 0..mult {
            if j > 0 {
                fact *= j as f64;
            }
            row.push(f.deriv_unchecked(j, node) / fact);
        }
        taylor.push(row);
    }
    let mut run_of = Vec::with_capacity(n);
    for (r, &(_, mult)) in nodes.entries().iter().enumerate() {
        run_of.extend(std::iter::repeat_n(r, mult));
    }

    let mut c: Vec<f64> = (0..n).map(|i| taylor[run_of[i]][0]).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = if z[i] == z[i - j] {
                taylor[run_of[i]][j]
            } else {
                (c[i] - c[i - 1]) / (z[i] - z[i - j])
            };
        }
    }
    Ok((z, c))
}

/// `f[t0, ..., tn]` over a node multiset.
pub fn divided_difference(f: &FunctionModel, nodes: &NodeMultiset) -> Result<f64> {
    let (_, c) = newton_table(f, nodes)?;
    Ok(*c.last().expect("multiset is non-empty"))
}

/// Newton interpolant through the multiset; coefficient j is the divided
/// difference over the first j + 1 flattened nodes.
pub fn newton_interpolant(f: &FunctionModel, nodes: &NodeMultiset) -> Result<NewtonForm> {
    let (z, c) = newton_table(f, nodes)?;
    Ok(NewtonForm { nodes: z, coeffs: c })
}

fn check_mn(n: usize, m: usize) -> Result<()> {
    if m < 1 || m + 1 > n {
        return Err(Error::InvalidOrder { n, m, min: 1 });
    }
    Ok(())
}

/// Hermite interpolant of type (m, n − m): matches `f, ..., f^(m−1)` at `a`
/// and `f, ..., f^(n−m−1)` at `b`; degree n − 1.
pub fn hermite_mn(f: &FunctionModel, a: f64, b: f64, m: usize, n: usize) -> Result<NewtonForm> {
    check_mn(n, m)?;
    if !(a < b) {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    newton_interpolant(f, &NodeMultiset::two_point(a, m, b, n - m)?)
}

/// `(t − a)^m (t − b)^(n−m) f[t; a × m; b × (n − m)]`, the remainder of the
/// type (m, n − m) Hermite interpolant.
pub fn remainder_r(f: &FunctionModel, a: f64, b: f64, m: usize, n: usize, t: f64) -> Result<f64> {
    remainder(f, (a, m), (b, n - m.min(n)), t, n, m)
}

/// `(t − b)^m (t − a)^(n−m) f[t; b × m; a × (n − m)]`, the mirrored remainder
/// with the roles of the endpoints exchanged.
pub fn remainder_r_star(
    f: &FunctionModel,
    a: f64,
    b: f64,
    m: usize,
    n: usize,
    t: f64,
) -> Result<f64> {
    remainder(f, (b, m), (a, n - m.min(n)), t, n, m)
}

fn remainder(
    f: &FunctionModel,
    (first, m): (f64, usize),
    (second, k): (f64, usize),
    t: f64,
    n: usize,
    m_checked: usize,
) -> Result<f64> {
    check_mn(n, m_checked)?;
    let (a, b) = if first < second { (first, second) } else { (second, first) };
    if !(a < b) {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    if !(a <= t && t <= b) {
        return Err(Error::OutsideDomain { value: t, lo: a, hi: b });
    }
    if t == first || t == second {
        return Ok(0.0);
    }
    let nodes = NodeMultiset::new([(t, 1), (first, m), (second, k)])?;
    let dd = divided_difference(f, &nodes)?;
    Ok((t - first).powi(m as i32) * (t - second).powi(k as i32) * dd)
}
