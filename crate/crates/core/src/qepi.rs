//! Outer bound on the (C, Q, E) trade-off region of the pure-loss channel from
//! the entropy power inequality, and the thermal-input region it encloses.
//!
//! The conjectured region is achievable; its optimality depends on an unproven
//! multi-mode minimum-output-entropy statement, so it is always labelled
//! "conjectured".

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::channels::PureLossChannel;
use crate::entropy::g_nonneg;
use crate::error::{domain, Error, Result};
use crate::geometry::{Constraint, FacetRegion};
use crate::tradeoff::LambdaFacets;

/// Gap components below this are treated as a formula error.
pub const GAP_TOL: f64 = 1e-9;

/// Pure-loss channel with `eta >= 1/2` and an input photon budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossTradeoffInstance {
    channel: PureLossChannel,
    n_signal: f64,
}

impl LossTradeoffInstance {
    pub fn new(channel: PureLossChannel, n_signal: f64) -> Result<Self> {
        if channel.eta() < 0.5 {
            return Err(domain(format!(
                "the entropy-power bound needs eta >= 1/2, got {}",
                channel.eta()
            )));
        }
        if !n_signal.is_finite() || n_signal <= 0.0 {
            return Err(domain(format!(
                "photon budget must be finite and > 0, got {n_signal}"
            )));
        }
        Ok(LossTradeoffInstance { channel, n_signal })
    }

    pub fn pure_loss(eta: f64, n_signal: f64) -> Result<Self> {
        Self::new(PureLossChannel::new(eta)?, n_signal)
    }

    pub fn eta(&self) -> f64 {
        self.channel.eta()
    }

    pub fn n_signal(&self) -> f64 {
        self.n_signal
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(domain(format!("lambda must lie in [0, 1], got {lambda}")))
    }
}

/// The four entropy bounds entering the outer region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QepiBounds {
    /// Upper bound on the output entropy, `g(eta N_S)`.
    pub b1: f64,
    /// Upper bound on the average input entropy of the conditional states.
    pub b2: f64,
    /// Upper bound on the average output entropy, `g(eta lambda N_S)`.
    pub b3: f64,
    /// Lower bound on the average complement entropy.
    pub b4: f64,
}

/// `log2(2^h + shift)` computed as `h + log2(1 + shift 2^-h)`.
fn log2_exp2_plus(h: f64, shift: f64) -> Result<f64> {
    let t = shift * (-h).exp2();
    if t <= -1.0 {
        return Err(Error::Inconsistency(format!(
            "log2 argument non-positive (2^{h} + {shift})"
        )));
    }
    Ok(h + t.ln_1p() / LN_2)
}

/// `B1..B4` at `lambda`.
///
/// `B2 = log2[(2^G - (1 - eta)) / eta]` and
/// `B4 = log2[((1 - eta)/eta) 2^G + (2 eta - 1)/eta]` with `G = g(lambda eta N_S)`,
/// both evaluated without forming `2^G`.
pub fn qepi_bound_quantities(inst: &LossTradeoffInstance, lambda: f64) -> Result<QepiBounds> {
    check_lambda(lambda)?;
    let eta = inst.eta();
    let ns = inst.n_signal;
    let out = g_nonneg(eta * lambda * ns);
    let b2 = log2_exp2_plus(out, -(1.0 - eta))? - eta.log2();
    let b4 = if eta == 1.0 {
        0.0
    } else {
        // ((1-eta)/eta) 2^G (1 + ((2eta-1)/(1-eta)) 2^-G)
        log2_exp2_plus(out, (2.0 * eta - 1.0) / (1.0 - eta))? + ((1.0 - eta) / eta).log2()
    };
    Ok(QepiBounds {
        b1: g_nonneg(eta * ns),
        b2,
        b3: out,
        b4,
    })
}

/// Outer-bound facets: `(B1 + B2 - B4, B3 - B4, B1 - B4)`.
pub fn qepi_outer_facets(inst: &LossTradeoffInstance, lambda: f64) -> Result<LambdaFacets> {
    let b = qepi_bound_quantities(inst, lambda)?;
    Ok(LambdaFacets {
        lambda,
        bound_c2q: b.b1 + b.b2 - b.b4,
        bound_qe: b.b3 - b.b4,
        bound_cqe: b.b1 - b.b4,
    })
}

/// Facets of the thermal-input region:
/// `g(lambda N_S) + g(eta N_S) - g((1-eta) lambda N_S)`,
/// `g(eta lambda N_S) - g((1-eta) lambda N_S)`, `g(eta N_S) - g((1-eta) lambda N_S)`.
pub fn conjectured_achievable_facets(
    inst: &LossTradeoffInstance,
    lambda: f64,
) -> Result<LambdaFacets> {
    check_lambda(lambda)?;
    let ch = &inst.channel;
    let ns = inst.n_signal;
    let out = g_nonneg(ch.output_photons(ns));
    let comp = g_nonneg(ch.complement_photons(lambda * ns));
    Ok(LambdaFacets {
        lambda,
        bound_c2q: g_nonneg(lambda * ns) + out - comp,
        bound_qe: g_nonneg(ch.output_photons(lambda * ns)) - comp,
        bound_cqe: out - comp,
    })
}

/// Componentwise outer minus conjectured facets. Errors if any component is
/// below `-GAP_TOL`, since the outer bound must contain the achievable region.
pub fn bound_gap(inst: &LossTradeoffInstance, lambda: f64) -> Result<[f64; 3]> {
    let o = qepi_outer_facets(inst, lambda)?;
    let a = conjectured_achievable_facets(inst, lambda)?;
    let gap = [
        o.bound_c2q - a.bound_c2q,
        o.bound_qe - a.bound_qe,
        o.bound_cqe - a.bound_cqe,
    ];
    if let Some(v) = gap.iter().find(|v| **v < -GAP_TOL) {
        return Err(Error::Inconsistency(format!(
            "outer bound below achievable facet by {} at lambda = {lambda}",
            -v
        )));
    }
    Ok(gap)
}

/// `log2(eta 2^x + 1 - eta)`, the single-mode vacuum entropy-power lower bound.
pub fn epi_vacuum_bound(eta: f64, x: f64) -> f64 {
    log2_exp2_plus(x, (1.0 - eta) / eta).map_or(f64::NAN, |v| v + eta.log2())
}

/// Outer-bound region as a facet family over (C, Q, E).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QepiOuterRegion(pub LossTradeoffInstance);

impl FacetRegion for QepiOuterRegion {
    fn axes(&self) -> [&'static str; 3] {
        ["C_bits", "Q_qubits", "E_ebits"]
    }

    fn constraints_at(&self, lambda: f64) -> Result<Vec<Constraint>> {
        qepi_outer_facets(&self.0, lambda).map(|f| f.constraints())
    }
}

/// Conjectured (thermal-input) region as a facet family over (C, Q, E).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjecturedRegion(pub LossTradeoffInstance);

impl FacetRegion for ConjecturedRegion {
    fn axes(&self) -> [&'static str; 3] {
        ["C_bits", "Q_qubits", "E_ebits"]
    }

    fn constraints_at(&self, lambda: f64) -> Result<Vec<Constraint>> {
        conjectured_achievable_facets(&self.0, lambda).map(|f| f.constraints())
    }
}
