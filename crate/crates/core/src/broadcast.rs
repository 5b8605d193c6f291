//! Two-receiver broadcast over the amplifier dilation: Bob holds the amplified
//! output, Charlie the conjugate port.
//!
//! The optimal region is parameterized by the fraction `lambda` of the photon
//! budget carried by Bob's layer of a superposition code. Coherent-detection
//! baselines reduce each receiver to a classical additive Gaussian noise channel.

use serde::Serialize;

use crate::channels::AmplifierChannel;
use crate::entropy::{g_nonneg, PhotonNumber};
use crate::error::{domain, Result};
use crate::geometry::RegionSlice;
use crate::search::{self, Maximum};

/// Largest gain accepted by the large-gain convergence checks.
pub const MAX_KAPPA: f64 = 1e6;

/// Amplifier (possibly with thermal noise) and an input photon budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BroadcastInstance {
    channel: AmplifierChannel,
    n_signal: f64,
}

impl BroadcastInstance {
    pub fn new(channel: AmplifierChannel, n_signal: f64) -> Result<Self> {
        if !n_signal.is_finite() || n_signal <= 0.0 {
            return Err(domain(format!(
                "photon budget must be finite and > 0, got {n_signal}"
            )));
        }
        Ok(BroadcastInstance { channel, n_signal })
    }

    pub fn amplifier(kappa: f64, n_env: f64, n_signal: f64) -> Result<Self> {
        Self::new(AmplifierChannel::new(kappa, n_env)?, n_signal)
    }

    pub fn channel(&self) -> &AmplifierChannel {
        &self.channel
    }

    pub fn n_signal(&self) -> f64 {
        self.n_signal
    }

    /// Whether the region's optimality rests on an unproven multi-mode
    /// minimum-output-entropy statement (true whenever `N_B > 0`).
    pub fn is_conditional(&self) -> bool {
        self.channel.n_env() > 0.0
    }
}

/// Rates to Bob and Charlie in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BroadcastPoint {
    pub r_b: f64,
    pub r_c: f64,
}

/// Coherent-detection receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Detection {
    /// One quadrature, `xi = 1/2`.
    Homodyne,
    /// Both quadratures, `xi = 1`.
    Heterodyne,
}

impl Detection {
    pub fn xi(self) -> f64 {
        match self {
            Detection::Homodyne => 0.5,
            Detection::Heterodyne => 1.0,
        }
    }

    pub fn from_xi(xi: f64) -> Result<Self> {
        if xi == 0.5 {
            Ok(Detection::Homodyne)
        } else if xi == 1.0 {
            Ok(Detection::Heterodyne)
        } else {
            Err(domain(format!(
                "xi must be 1/2 (homodyne) or 1 (heterodyne), got {xi}"
            )))
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Detection::Homodyne => "homodyne",
            Detection::Heterodyne => "heterodyne",
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(domain(format!("lambda must lie in [0, 1], got {lambda}")))
    }
}

/// Boundary point of the optimal region:
/// `R_B = g(kappa lambda N_S + kappa_bar (N_B + 1)) - g(kappa_bar (N_B + 1))`,
/// `R_C = g(kappa_bar (N_S + 1) + kappa N_B) - g(kappa_bar (lambda N_S + 1) + kappa N_B)`.
pub fn broadcast_point(inst: &BroadcastInstance, lambda: f64) -> Result<BroadcastPoint> {
    check_lambda(lambda)?;
    let ch = &inst.channel;
    let ns = inst.n_signal;
    let r_b = g_nonneg(ch.output_photons(lambda * ns)) - g_nonneg(ch.output_photons(0.0));
    let r_c = g_nonneg(ch.complement_photons(ns)) - g_nonneg(ch.complement_photons(lambda * ns));
    Ok(BroadcastPoint {
        r_b: r_b.max(0.0),
        r_c: r_c.max(0.0),
    })
}

/// Boundary point of the region reachable with coherent detection at both
/// receivers. Only defined for a vacuum environment.
pub fn coherent_detection_point(
    inst: &BroadcastInstance,
    lambda: f64,
    detection: Detection,
) -> Result<BroadcastPoint> {
    check_lambda(lambda)?;
    if inst.is_conditional() {
        return Err(domain(
            "coherent-detection rates are only available for N_B = 0",
        ));
    }
    let xi = detection.xi();
    let kappa = inst.channel.kappa();
    let kb = inst.channel.kappa_bar();
    let ns = inst.n_signal;
    let noise = xi * (xi + kb);
    let r_b = xi * (lambda * kappa * ns / noise).ln_1p() / std::f64::consts::LN_2;
    let r_c = xi * ((1.0 - lambda) * kb * ns / (noise + lambda * kb * ns)).ln_1p()
        / std::f64::consts::LN_2;
    Ok(BroadcastPoint { r_b, r_c })
}

/// Gain-independent sum-rate limit `log2(N_S / (N_B + 1) + 1)`.
pub fn large_kappa_sumrate(n_signal: PhotonNumber, n_env: PhotonNumber) -> f64 {
    (n_signal.value() / (n_env.value() + 1.0)).ln_1p() / std::f64::consts::LN_2
}

/// Largest `lambda`-wise minimum of `(r_b(lambda) - R_B, r_c(lambda) - R_C)`.
pub fn broadcast_slack(
    point: &BroadcastPoint,
    lambda_grid: usize,
    boundary: impl Fn(f64) -> Result<BroadcastPoint>,
) -> Maximum {
    search::maximize(
        |lambda| match boundary(lambda) {
            Ok(b) => (b.r_b - point.r_b).min(b.r_c - point.r_c),
            Err(_) => f64::NEG_INFINITY,
        },
        lambda_grid,
    )
}

/// Whether `point` lies in the optimal broadcast region, within `tol`.
pub fn member_broadcast(
    inst: &BroadcastInstance,
    point: &BroadcastPoint,
    lambda_grid: usize,
    tol: f64,
) -> bool {
    broadcast_slack(point, lambda_grid, |l| broadcast_point(inst, l)).value >= -tol
}

/// Boundary of the optimal region as a slice `R_B -> R_C`.
pub fn broadcast_slice(inst: &BroadcastInstance, samples: usize) -> Result<RegionSlice> {
    RegionSlice::from_parametric("R_B_bits", "R_C_bits", samples, |l| {
        broadcast_point(inst, l).map(|p| (p.r_b, p.r_c))
    })
}

/// Boundary of a coherent-detection region as a slice `R_B -> R_C`.
pub fn coherent_detection_slice(
    inst: &BroadcastInstance,
    detection: Detection,
    samples: usize,
) -> Result<RegionSlice> {
    RegionSlice::from_parametric("R_B_bits", "R_C_bits", samples, |l| {
        coherent_detection_point(inst, l, detection).map(|p| (p.r_b, p.r_c))
    })
}

/// One row of a gain sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub kappa: f64,
    /// `sup_lambda |R_B + R_C - log2(N_S/(N_B+1) + 1)|`.
    pub max_deviation: f64,
    pub max_r_b: f64,
    pub max_r_c: f64,
}

/// Distance of the optimal region's sum rate from the large-gain limit, per gain.
pub fn convergence_profile(
    n_signal: PhotonNumber,
    n_env: PhotonNumber,
    kappas: &[f64],
    lambda_grid: usize,
) -> Result<Vec<ConvergenceRow>> {
    if kappas.windows(2).any(|w| w[1] < w[0]) {
        return Err(domain("gain list must be sorted ascending"));
    }
    if let Some(k) = kappas.iter().find(|k| !(1.0..=MAX_KAPPA).contains(*k)) {
        return Err(domain(format!("gain {k} outside [1, {MAX_KAPPA}]")));
    }
    let limit = large_kappa_sumrate(n_signal, n_env);
    kappas
        .iter()
        .map(|&kappa| {
            let inst = BroadcastInstance::amplifier(kappa, n_env.value(), n_signal.value())?;
            let deviation = search::maximize(
                |l| {
                    broadcast_point(&inst, l)
                        .map(|p| (p.r_b + p.r_c - limit).abs())
                        .unwrap_or(f64::NEG_INFINITY)
                },
                lambda_grid,
            );
            Ok(ConvergenceRow {
                kappa,
                max_deviation: deviation.value,
                max_r_b: broadcast_point(&inst, 1.0)?.r_b,
                max_r_c: broadcast_point(&inst, 0.0)?.r_c,
            })
        })
        .collect()
}
