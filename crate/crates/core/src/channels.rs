//! Photon-number maps of the phase-insensitive amplifier, its complement, its
//! degrading channel, and the pure-loss channel.
//!
//! Channels are parameter sets only. Every capacity expression in this crate is
//! a function of thermal occupations pushed through these affine maps.

use crate::entropy::PhotonNumber;
use crate::error::{domain, Result};

/// Amplifier of gain `kappa >= 1` with a thermal environment of occupation `n_env`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplifierChannel {
    kappa: f64,
    n_env: f64,
}

impl AmplifierChannel {
    pub fn new(kappa: f64, n_env: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa < 1.0 {
            return Err(domain(format!(
                "amplifier gain must be finite and >= 1, got {kappa}"
            )));
        }
        let n_env = PhotonNumber::new(n_env)?.value();
        Ok(AmplifierChannel { kappa, n_env })
    }

    /// Quantum-limited amplifier (vacuum environment).
    pub fn quantum_limited(kappa: f64) -> Result<Self> {
        Self::new(kappa, 0.0)
    }

    #[inline]
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// `kappa - 1`: photons produced from a vacuum input.
    #[inline]
    pub fn kappa_bar(&self) -> f64 {
        self.kappa - 1.0
    }

    #[inline]
    pub fn n_env(&self) -> f64 {
        self.n_env
    }

    /// Output occupation for a thermal input: `kappa n + (kappa - 1)(n_env + 1)`.
    pub fn output_photons(&self, n_in: f64) -> f64 {
        self.kappa * n_in + self.kappa_bar() * (self.n_env + 1.0)
    }

    /// Occupation at the conjugate port: `(kappa - 1)(n + 1) + kappa n_env`.
    pub fn complement_photons(&self, n_in: f64) -> f64 {
        self.kappa_bar() * (n_in + 1.0) + self.kappa * self.n_env
    }

    /// The channel mapping this amplifier's output onto its complement.
    pub fn degrading(&self) -> DegradingChannel {
        DegradingChannel {
            kappa_prime: (2.0 * self.kappa - 1.0) / self.kappa,
            n_env: self.n_env,
        }
    }
}

/// Conjugate amplifier with gain `kappa' = (2 kappa - 1) / kappa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegradingChannel {
    kappa_prime: f64,
    n_env: f64,
}

impl DegradingChannel {
    #[inline]
    pub fn kappa_prime(&self) -> f64 {
        self.kappa_prime
    }

    /// `(kappa' - 1)(n + 1) + kappa' n_env`.
    pub fn apply(&self, n: f64) -> f64 {
        (self.kappa_prime - 1.0) * (n + 1.0) + self.kappa_prime * self.n_env
    }
}

/// Beamsplitter coupling to vacuum with transmissivity `eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureLossChannel {
    eta: f64,
}

impl PureLossChannel {
    pub fn new(eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(domain(format!(
                "transmissivity must lie in [0, 1], got {eta}"
            )));
        }
        Ok(PureLossChannel { eta })
    }

    #[inline]
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn output_photons(&self, n_in: f64) -> f64 {
        self.eta * n_in
    }

    pub fn complement_photons(&self, n_in: f64) -> f64 {
        (1.0 - self.eta) * n_in
    }
}
