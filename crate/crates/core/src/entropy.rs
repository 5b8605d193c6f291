//! Thermal-state entropy `g(x) = (x+1)log2(x+1) - x log2 x`, its inverse, and
//! the ensemble inequalities built on top of it.
//!
//! `g` is evaluated as `log2(x+1) + x log2(1 + 1/x)` with `ln_1p`, which keeps
//! full relative precision for tiny and moderate `x`. Above [`ASYMPTOTIC_THRESHOLD`]
//! the leading terms of the large-`x` expansion are used instead.

use std::f64::consts::{LN_2, LOG2_E};

use crate::error::{domain, Result};

/// Photon numbers below this are treated as exactly zero.
pub const ZERO_CUTOFF: f64 = 1e-300;

/// Switch point for the large-argument expansion of `g`.
pub const ASYMPTOTIC_THRESHOLD: f64 = 1e8;

/// Absolute slack granted to the ensemble inequality checks.
pub const INEQUALITY_TOL: f64 = 1e-9;

/// Allowed deviation of ensemble weights from unit sum.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Mean photon number per mode.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PhotonNumber(f64);

impl PhotonNumber {
    pub const ZERO: PhotonNumber = PhotonNumber(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(domain(format!(
                "photon number must be finite and >= 0, got {value}"
            )));
        }
        Ok(PhotonNumber(value))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Entropy of the thermal state with this occupation.
    pub fn thermal_entropy(self) -> EntropyBits {
        EntropyBits(g_nonneg(self.0))
    }
}

/// Entropy in bits per mode.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntropyBits(f64);

impl EntropyBits {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 {
            return Err(domain(format!("entropy must be >= 0, got {value}")));
        }
        Ok(EntropyBits(value))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Occupation of the thermal state carrying this much entropy.
    pub fn thermal_occupation(self) -> Result<PhotonNumber> {
        g_inverse(self.0).map(PhotonNumber)
    }
}

/// Thermal entropy `g(x)` in bits. Fails on negative or non-finite input.
pub fn g(x: f64) -> Result<f64> {
    PhotonNumber::new(x).map(|n| g_nonneg(n.0))
}

/// `g` for arguments already known to be valid photon numbers.
///
/// Tiny negative arguments (round-off from differences of photon numbers)
/// are clamped to zero.
pub(crate) fn g_nonneg(x: f64) -> f64 {
    debug_assert!(x >= -1e-12, "g evaluated at {x}");
    if x < ZERO_CUTOFF {
        0.0
    } else if x > ASYMPTOTIC_THRESHOLD {
        x.log2() + LOG2_E + 1.0 / (2.0 * x * LN_2)
    } else {
        (x.ln_1p() + x * (1.0 / x).ln_1p()) / LN_2
    }
}

/// Derivative `g'(x) = log2(1 + 1/x)`.
fn g_prime(x: f64) -> f64 {
    (1.0 / x).ln_1p() / LN_2
}

/// Inverse of `g`: the unique `x >= 0` with `g(x) = h`.
///
/// Bisection on `[0, 2^h]` (valid since `g(x) >= log2(x + 1)`) down to a relative
/// width of 1e-14, followed by a single Newton step.
pub fn g_inverse(h: f64) -> Result<f64> {
    if h.is_nan() || h < 0.0 {
        return Err(domain(format!("entropy must be >= 0, got {h}")));
    }
    if h == 0.0 {
        return Ok(0.0);
    }
    let mut hi = h.exp2();
    if !hi.is_finite() {
        return Err(domain(format!(
            "entropy {h} exceeds the representable range"
        )));
    }
    let mut lo = 0.0_f64;
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-14 * mid || mid <= lo || mid >= hi {
            break;
        }
        if g_nonneg(mid) < h {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    if x <= 0.0 {
        return Ok(0.0);
    }
    let polished = x - (g_nonneg(x) - h) / g_prime(x);
    // A Newton step that leaves the bracket is discarded.
    if polished >= lo && polished <= hi && (g_nonneg(polished) - h).abs() <= (g_nonneg(x) - h).abs()
    {
        Ok(polished)
    } else {
        Ok(x)
    }
}

/// `h(x) = x ln((x+1)/x)`, with `h(0) = 0`. Increasing, bounded by 1.
pub fn h_lemma(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(domain(format!("h is defined for finite x >= 0, got {x}")));
    }
    if x < ZERO_CUTOFF {
        return Ok(0.0);
    }
    Ok(x * (1.0 / x).ln_1p())
}

/// A finite probability distribution over nonnegative reals.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedEnsemble {
    weights: Vec<f64>,
    points: Vec<f64>,
}

impl WeightedEnsemble {
    /// Validates the ensemble. Weights are never renormalized.
    pub fn new(weights: Vec<f64>, points: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(domain("ensemble must contain at least one point"));
        }
        if weights.len() != points.len() {
            return Err(domain(format!(
                "{} weights but {} points",
                weights.len(),
                points.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(domain(format!("weight {w} is not a probability")));
        }
        if let Some(y) = points.iter().find(|y| !y.is_finite() || **y < 0.0) {
            return Err(domain(format!("point {y} is negative or non-finite")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(domain(format!("weights sum to {total}, not 1")));
        }
        Ok(WeightedEnsemble { weights, points })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// `sum_x p_x f(y_x)`.
    pub fn average(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.weights
            .iter()
            .zip(&self.points)
            .map(|(p, y)| p * f(*y))
            .sum()
    }

    /// The thermal occupation whose entropy equals the ensemble-average entropy.
    pub fn equivalent_occupation(&self) -> Result<f64> {
        g_inverse(self.average(g_nonneg))
    }
}

/// Checks `sum_x p_x g(q y_x + c) >= g(q y_0 + c)` for `q` in `[0, 1]`, `c >= 0`.
pub fn check_theorem_a1(ens: &WeightedEnsemble, q: f64, c: f64) -> Result<bool> {
    if !(0.0..=1.0).contains(&q) {
        return Err(domain(format!("q must lie in [0, 1], got {q}")));
    }
    if !c.is_finite() || c < 0.0 {
        return Err(domain(format!("C must be finite and >= 0, got {c}")));
    }
    shifted_inequality_holds(ens, q, c)
}

/// Checks `sum_x p_x g(q y_x + q - 1) >= g(q y_0 + q - 1)` for `q > 1`.
pub fn check_theorem_a2(ens: &WeightedEnsemble, q: f64) -> Result<bool> {
    if !q.is_finite() || q <= 1.0 {
        return Err(domain(format!("q must exceed 1, got {q}")));
    }
    shifted_inequality_holds(ens, q, q - 1.0)
}

fn shifted_inequality_holds(ens: &WeightedEnsemble, q: f64, c: f64) -> Result<bool> {
    let y0 = ens.equivalent_occupation()?;
    let lhs = ens.average(|y| g_nonneg(q * y + c));
    let rhs = g_nonneg(q * y0 + c);
    Ok(lhs >= rhs - INEQUALITY_TOL)
}
