//! Maximization over the photon-number-sharing parameter `lambda in [0, 1]`.
//!
//! Facet bounds are smooth in `lambda` but their pointwise minimum need not be
//! unimodal, so the search is a uniform grid scan followed by golden-section
//! refinement inside the two cells adjacent to the best grid point.

/// Default number of grid points in `[0, 1]`.
pub const DEFAULT_LAMBDA_GRID: usize = 1024;

/// Bracket width at which golden-section refinement stops.
pub const REFINE_TOL: f64 = 1e-12;

/// Result of a `lambda` search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub lambda: f64,
    pub value: f64,
}

/// `lambda_k = k / (n - 1)`, `k = 0..n`.
pub fn lambda_grid(n: usize) -> impl Iterator<Item = f64> + Clone {
    let n = n.max(2);
    (0..n).map(move |k| k as f64 / (n - 1) as f64)
}

/// Maximizes `f` over `[0, 1]`.
///
/// Non-finite values of `f` (e.g. `-inf` for infeasible `lambda`) are allowed
/// and never selected over a finite value.
pub fn maximize(f: impl Fn(f64) -> f64, grid: usize) -> Maximum {
    let grid = grid.max(2);
    let mut best = Maximum {
        lambda: 0.0,
        value: f64::NEG_INFINITY,
    };
    let mut best_k = 0;
    for (k, lambda) in lambda_grid(grid).enumerate() {
        let value = f(lambda);
        if value > best.value {
            best = Maximum { lambda, value };
            best_k = k;
        }
    }
    if !best.value.is_finite() {
        return best;
    }
    let step = 1.0 / (grid - 1) as f64;
    let lo = (best_k as f64 - 1.0).max(0.0) * step;
    let hi = ((best_k + 1) as f64 * step).min(1.0);
    let refined = golden_section(&f, lo, hi, REFINE_TOL);
    if refined.value > best.value {
        refined
    } else {
        best
    }
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
pub fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Maximum {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    while hi - lo > tol {
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        }
    }
    let candidates = [(lo, f(lo)), (a, fa), (b, fb), (hi, f(hi))];
    let (lambda, value) =
        candidates.into_iter().fold(
            (lo, f64::NEG_INFINITY),
            |acc, c| if c.1 > acc.1 { c } else { acc },
        );
    Maximum { lambda, value }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_peak_off_grid() {
        let m = maximize(|x| -(x - 0.123456789).powi(2), 16);
        assert!((m.lambda - 0.123456789).abs() < 1e-7);
        assert!(m.value <= 0.0 && m.value > -1e-14);
    }

    #[test]
    fn endpoints() {
        let m = maximize(|x| x, 8);
        assert_eq!(m.lambda, 1.0);
        let m = maximize(|x| -x, 8);
        assert_eq!(m.lambda, 0.0);
    }

    #[test]
    fn all_infeasible() {
        let m = maximize(|_| f64::NEG_INFINITY, 8);
        assert_eq!(m.value, f64::NEG_INFINITY);
    }

    #[test]
    fn grid_is_inclusive() {
        let v: Vec<f64> = lambda_grid(5).collect();
        assert_eq!(v, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
