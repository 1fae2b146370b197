//! Dense monomial-basis polynomial helpers (coefficients in ascending order).

/// Derivative order advertised by polynomial function models.
pub const MAX_ORDER: usize = 64;

/// Degree ignoring trailing zero coefficients; the zero polynomial has degree 0.
pub fn degree(coeffs: &[f64]) -> usize {
    coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
}

pub fn eval(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// Coefficients of the k-th derivative.
pub fn derivative(coeffs: &[f64], k: usize) -> Vec<f64> {
    if k >= coeffs.len() {
        return vec![0.0];
    }
    coeffs[k..]
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            // (i+k)! / i!
            let falling: f64 = ((i + 1)..=(i + k)).map(|j| j as f64).product();
            c * falling
        })
        .collect()
}

pub fn eval_derivative(coeffs: &[f64], k: usize, t: f64) -> f64 {
    if k >= coeffs.len() {
        return 0.0;
    }
    coeffs[k..]
        .iter()
        .enumerate()
        .rev()
        .fold(0.0, |acc, (i, &c)| {
            let falling: f64 = ((i + 1)..=(i + k)).map(|j| j as f64).product();
            acc * t + c * falling
        })
}

/// Minimum and maximum of the polynomial on `[lo, hi]`.
///
/// Extrema sit at the endpoints or at real roots of the derivative, which are
/// located recursively: between consecutive critical points of a polynomial it
/// is monotone, so each sign change is bracketed and bisected.
pub fn range_on(coeffs: &[f64], lo: f64, hi: f64) -> (f64, f64) {
    let mut candidates = vec![lo, hi];
    candidates.extend(roots_in(&derivative(coeffs, 1), lo, hi));
    candidates
        .iter()
        .map(|&t| eval(coeffs, t))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(mn, mx), v| {
            (mn.min(v), mx.max(v))
        })
}

/// Real roots in `[lo, hi]` (sign changes and touching zeros at critical points).
fn roots_in(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let d = degree(coeffs);
    if d == 0 {
        return Vec::new();
    }
    let mut breaks = vec![lo];
    let mut crit = roots_in(&derivative(coeffs, 1), lo, hi);
    crit.sort_by(|x, y| x.total_cmp(y));
    breaks.extend(crit.iter().copied().filter(|&c| c > lo && c < hi));
    breaks.push(hi);

    let mut roots = Vec::new();
    for w in breaks.windows(2) {
        let (mut x0, mut x1) = (w[0], w[1]);
        let (mut f0, f1) = (eval(coeffs, x0), eval(coeffs, x1));
        if f0 == 0.0 {
            roots.push(x0);
            continue;
        }
        if f1 == 0.0 {
            roots.push(x1);
            continue;
        }
        if f0.signum() == f1.signum() {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (x0 + x1);
            if mid <= x0 || mid >= x1 {
                break;
            }
            let fm = eval(coeffs, mid);
            if fm == 0.0 {
                x0 = mid;
                x1 = mid;
                break;
            }
            if fm.signum() == f0.signum() {
                x0 = mid;
                f0 = fm;
            } else {
                x1 = mid;
            }
        }
        roots.push(0.5 * (x0 + x1));
    }
    // touching zeros (even multiplicity) sit at critical points
    roots.extend(crit.into_iter().filter(|&c| eval(coeffs, c) == 0.0));
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_and_derivatives() {
        let c = [1.0, -2.0, 0.0, 1.0]; // t^3 - 2t + 1
        assert_eq!(eval(&c, 2.0), 5.0);
        assert_eq!(derivative(&c, 1), vec![-2.0, 0.0, 3.0]);
        assert_eq!(eval_derivative(&c, 2, 1.5), 9.0);
        assert_eq!(eval_derivative(&c, 3, 7.0), 6.0);
        assert_eq!(eval_derivative(&c, 4, 7.0), 0.0);
    }

    #[test]
    fn degree_skips_trailing_zeros() {
        assert_eq!(degree(&[1.0, 2.0, 0.0, 0.0]), 1);
        assert_eq!(degree(&[0.0]), 0);
    }

    #[test]
    fn range_finds_interior_extrema() {
        // t^2 - 1 on [-2, 1]: min -1 at 0, max 3 at -2
        let (mn, mx) = range_on(&[-1.0, 0.0, 1.0], -2.0, 1.0);
        assert_eq!(mn, -1.0);
        assert_eq!(mx, 3.0);
        // 6t on [-1, 2]
        let (mn, mx) = range_on(&[0.0, 6.0], -1.0, 2.0);
        assert_eq!((mn, mx), (-6.0, 12.0));
        // (t - 0.3)^2 (t - 1.7) on [0, 2], local max at 0.3 where it touches zero
        let c = [-0.153, 1.11, -2.3, 1.0];
        let (_, mx) = range_on(&c, 0.0, 1.0);
        assert!(mx.abs() < 1e-12, "{mx}");
    }
}
