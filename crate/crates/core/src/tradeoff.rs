//! Triple trade-off (C, Q, E) and private dynamic (R, P, S) regions of the
//! quantum-limited amplifier.
//!
//! Both regions are unions over the photon-number-sharing parameter `lambda`
//! of three-facet polyhedra whose right-hand sides are differences of thermal
//! entropies. Negative rates mean the resource is consumed.

use serde::Serialize;

use crate::channels::AmplifierChannel;
use crate::entropy::g_nonneg;
use crate::error::{domain, Error, Result};
use crate::geometry::{self, Constraint, FacetRegion};
use crate::search::Maximum;

/// Quantum-limited amplifier with an input photon budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffInstance {
    channel: AmplifierChannel,
    n_signal: f64,
}

impl TradeoffInstance {
    pub fn new(channel: AmplifierChannel, n_signal: f64) -> Result<Self> {
        if channel.n_env() != 0.0 {
            return Err(domain(
                "trade-off regions require a vacuum environment (N_B = 0)",
            ));
        }
        if !n_signal.is_finite() || n_signal <= 0.0 {
            return Err(domain(format!(
                "photon budget must be finite and > 0, got {n_signal}"
            )));
        }
        Ok(TradeoffInstance { channel, n_signal })
    }

    /// Shorthand for a quantum-limited amplifier of gain `kappa`.
    pub fn amplifier(kappa: f64, n_signal: f64) -> Result<Self> {
        Self::new(AmplifierChannel::quantum_limited(kappa)?, n_signal)
    }

    pub fn channel(&self) -> &AmplifierChannel {
        &self.channel
    }

    pub fn n_signal(&self) -> f64 {
        self.n_signal
    }

    /// `g(kappa N_S + kappa_bar)`: entropy of the full-budget output.
    fn output_entropy(&self) -> f64 {
        g_nonneg(self.channel.output_photons(self.n_signal))
    }

    /// `g(kappa_bar (lambda N_S + 1))`: complement entropy of the conditional states.
    fn complement_entropy(&self, lambda: f64) -> f64 {
        g_nonneg(self.channel.complement_photons(lambda * self.n_signal))
    }

    /// `g(kappa lambda N_S + kappa_bar)`.
    fn conditional_output_entropy(&self, lambda: f64) -> f64 {
        g_nonneg(self.channel.output_photons(lambda * self.n_signal))
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(domain(format!("lambda must lie in [0, 1], got {lambda}")))
    }
}

/// Right-hand sides of `C + 2Q`, `Q + E`, `C + Q + E` at one `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaFacets {
    pub lambda: f64,
    pub bound_c2q: f64,
    pub bound_qe: f64,
    pub bound_cqe: f64,
}

impl LambdaFacets {
    pub fn constraints(&self) -> Vec<Constraint> {
        vec![
            Constraint::new([1.0, 2.0, 0.0], self.bound_c2q),
            Constraint::new([0.0, 1.0, 1.0], self.bound_qe),
            Constraint::new([1.0, 1.0, 1.0], self.bound_cqe),
        ]
    }
}

/// Right-hand sides of `R + P`, `P + S`, `R + P + S` at one `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrivateFacets {
    pub lambda: f64,
    pub bound_rp: f64,
    pub bound_ps: f64,
    pub bound_rps: f64,
}

impl PrivateFacets {
    pub fn constraints(&self) -> Vec<Constraint> {
        vec![
            Constraint::new([1.0, 1.0, 0.0], self.bound_rp),
            Constraint::new([0.0, 1.0, 1.0], self.bound_ps),
            Constraint::new([1.0, 1.0, 1.0], self.bound_rps),
        ]
    }
}

/// Net rates (C, Q, E): classical bits, qubits, ebits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePoint {
    pub c: f64,
    pub q: f64,
    pub e: f64,
}

impl RatePoint {
    pub fn new(c: f64, q: f64, e: f64) -> Self {
        RatePoint { c, q, e }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c, self.q, self.e]
    }
}

/// Net rates (R, P, S): public bits, private bits, secret-key bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrivateRatePoint {
    pub r: f64,
    pub p: f64,
    pub s: f64,
}

impl PrivateRatePoint {
    pub fn new(r: f64, p: f64, s: f64) -> Self {
        PrivateRatePoint { r, p, s }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.r, self.p, self.s]
    }
}

/// Facets of the (C, Q, E) region at `lambda`.
pub fn facets_at(inst: &TradeoffInstance, lambda: f64) -> Result<LambdaFacets> {
    check_lambda(lambda)?;
    let out = inst.output_entropy();
    let comp = inst.complement_entropy(lambda);
    Ok(LambdaFacets {
        lambda,
        bound_c2q: g_nonneg(lambda * inst.n_signal) + out - comp,
        bound_qe: inst.conditional_output_entropy(lambda) - comp,
        bound_cqe: out - comp,
    })
}

/// Facets of the (R, P, S) region at `lambda`.
pub fn private_facets_at(inst: &TradeoffInstance, lambda: f64) -> Result<PrivateFacets> {
    check_lambda(lambda)?;
    let out = inst.output_entropy();
    let comp = inst.complement_entropy(lambda);
    Ok(PrivateFacets {
        lambda,
        bound_rp: out - g_nonneg(inst.channel.kappa_bar()),
        bound_ps: inst.conditional_output_entropy(lambda) - comp,
        bound_rps: out - comp,
    })
}

/// The (C, Q, E) trade-off region as a facet family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffRegion(pub TradeoffInstance);

impl FacetRegion for TradeoffRegion {
    fn axes(&self) -> [&'static str; 3] {
        ["C_bits", "Q_qubits", "E_ebits"]
    }

    fn constraints_at(&self, lambda: f64) -> Result<Vec<Constraint>> {
        facets_at(&self.0, lambda).map(|f| f.constraints())
    }
}

/// The (R, P, S) private dynamic region as a facet family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrivateRegion(pub TradeoffInstance);

impl FacetRegion for PrivateRegion {
    fn axes(&self) -> [&'static str; 3] {
        ["R_bits", "P_bits", "S_bits"]
    }

    fn constraints_at(&self, lambda: f64) -> Result<Vec<Constraint>> {
        private_facets_at(&self.0, lambda).map(|f| f.constraints())
    }
}

/// Whether `p` lies in the (C, Q, E) region, searching `lambda` on a grid of
/// `lambda_grid` points with golden-section refinement.
pub fn member_tradeoff(inst: &TradeoffInstance, p: &RatePoint, lambda_grid: usize) -> bool {
    geometry::is_member(&TradeoffRegion(*inst), p.as_array(), lambda_grid)
}

/// Whether `p` lies in the (R, P, S) region.
pub fn member_private(inst: &TradeoffInstance, p: &PrivateRatePoint, lambda_grid: usize) -> bool {
    geometry::is_member(&PrivateRegion(*inst), p.as_array(), lambda_grid)
}

/// Best `lambda` for `p` and its minimum facet slack (negative when outside).
pub fn tradeoff_slack(inst: &TradeoffInstance, p: &RatePoint, lambda_grid: usize) -> Maximum {
    geometry::max_slack(&TradeoffRegion(*inst), p.as_array(), lambda_grid)
}

/// Finite-energy quantum capacity `g(kappa N_S + kappa_bar) - g(kappa_bar (N_S + 1))`.
pub fn quantum_capacity(inst: &TradeoffInstance) -> f64 {
    facets_at(inst, 1.0)
        .expect("lambda = 1 is in range")
        .bound_qe
}

/// Infinite-energy quantum capacity `log2(kappa / (kappa - 1))`.
pub fn quantum_capacity_limit(kappa: f64) -> Result<f64> {
    let ch = AmplifierChannel::quantum_limited(kappa)?;
    if ch.kappa_bar() == 0.0 {
        return Err(Error::Unbounded(
            "quantum capacity of the identity channel grows without bound".into(),
        ));
    }
    Ok((ch.kappa() / ch.kappa_bar()).log2())
}

/// Time sharing: `t pa + (1 - t) pb`.
pub fn time_sharing_baseline(pa: &RatePoint, pb: &RatePoint, t: f64) -> Result<RatePoint> {
    if !(0.0..=1.0).contains(&t) {
        return Err(domain(format!(
            "time-sharing fraction must lie in [0, 1], got {t}"
        )));
    }
    Ok(RatePoint {
        c: t * pa.c + (1.0 - t) * pb.c,
        q: t * pa.q + (1.0 - t) * pb.q,
        e: t * pa.e + (1.0 - t) * pb.e,
    })
}
