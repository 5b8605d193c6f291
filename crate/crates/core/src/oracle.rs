//! Covariance-matrix model of single- and two-mode Gaussian states.
//!
//! Quadratures are ordered `(x, p)` per mode with `x = (a + a^dag)/sqrt(2)`, so
//! the vacuum covariance is `I/2`. Entropies come from symplectic eigenvalues
//! and are independent of the closed-form photon-number maps in
//! [`crate::channels`], which makes this module a cross-check for them.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};

use crate::entropy::{g_nonneg, PhotonNumber};
use crate::error::{domain, Error, Result};

/// Tolerance on symmetry and on `det(cov) >= 1/4`.
pub const PHYSICALITY_TOL: f64 = 1e-12;

/// Single-mode Gaussian state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianState {
    cov: Matrix2<f64>,
    mean: Vector2<f64>,
}

impl GaussianState {
    pub fn new(cov: Matrix2<f64>, mean: Vector2<f64>) -> Result<Self> {
        if cov.iter().chain(mean.iter()).any(|v| !v.is_finite()) {
            return Err(domain("covariance and mean must be finite"));
        }
        let asym = (cov[(0, 1)] - cov[(1, 0)]).abs();
        if asym > PHYSICALITY_TOL * cov.abs().max().max(1.0) {
            return Err(Error::Unphysical(format!(
                "covariance asymmetric by {asym:e}"
            )));
        }
        let det = cov.determinant();
        if cov[(0, 0)] <= 0.0 || det < 0.25 - PHYSICALITY_TOL {
            return Err(Error::Unphysical(format!("det(cov) = {det} < 1/4")));
        }
        Ok(GaussianState { cov, mean })
    }

    /// Thermal state: `cov = (n + 1/2) I`, zero mean.
    pub fn thermal(n: PhotonNumber) -> Self {
        GaussianState {
            cov: Matrix2::identity() * (n.value() + 0.5),
            mean: Vector2::zeros(),
        }
    }

    pub fn vacuum() -> Self {
        Self::thermal(PhotonNumber::ZERO)
    }

    /// Coherent state `|alpha>` with `alpha = re + i im`.
    pub fn coherent(re: f64, im: f64) -> Self {
        Self::vacuum().displaced(re, im)
    }

    /// The state displaced by `D(alpha)`.
    pub fn displaced(mut self, re: f64, im: f64) -> Self {
        self.mean += Vector2::new(re, im) * std::f64::consts::SQRT_2;
        self
    }

    pub fn cov(&self) -> &Matrix2<f64> {
        &self.cov
    }

    pub fn mean(&self) -> &Vector2<f64> {
        &self.mean
    }

    /// `sqrt(det(cov))`.
    pub fn symplectic_eigenvalue(&self) -> f64 {
        self.cov.determinant().max(0.0).sqrt()
    }

    /// Mean photon number of the thermal state with the same symplectic spectrum.
    pub fn thermal_occupation(&self) -> f64 {
        (self.symplectic_eigenvalue() - 0.5).max(0.0)
    }
}

/// Two-mode Gaussian state, quadratures ordered `(x1, p1, x2, p2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeState {
    cov: Matrix4<f64>,
    mean: Vector4<f64>,
}

impl TwoModeState {
    pub fn new(cov: Matrix4<f64>, mean: Vector4<f64>) -> Result<Self> {
        if cov.iter().chain(mean.iter()).any(|v| !v.is_finite()) {
            return Err(domain("covariance and mean must be finite"));
        }
        let asym = (cov - cov.transpose()).abs().max();
        if asym > PHYSICALITY_TOL * cov.abs().max().max(1.0) {
            return Err(Error::Unphysical(format!(
                "covariance asymmetric by {asym:e}"
            )));
        }
        let state = TwoModeState { cov, mean };
        let (nu_minus, _) = state.symplectic_eigenvalues();
        if nu_minus < 0.5 - PHYSICALITY_TOL * cov.abs().max().max(1.0) {
            return Err(Error::Unphysical(format!(
                "symplectic eigenvalue {nu_minus} < 1/2"
            )));
        }
        Ok(state)
    }

    pub fn product(a: &GaussianState, b: &GaussianState) -> Self {
        let mut cov = Matrix4::zeros();
        cov.fixed_view_mut::<2, 2>(0, 0).copy_from(&a.cov);
        cov.fixed_view_mut::<2, 2>(2, 2).copy_from(&b.cov);
        let mean = Vector4::new(a.mean[0], a.mean[1], b.mean[0], b.mean[1]);
        TwoModeState { cov, mean }
    }

    pub fn cov(&self) -> &Matrix4<f64> {
        &self.cov
    }

    pub fn mean(&self) -> &Vector4<f64> {
        &self.mean
    }

    /// Reduced state of mode 0 or 1.
    pub fn marginal(&self, mode: usize) -> Result<GaussianState> {
        if mode > 1 {
            return Err(domain(format!("two-mode state has no mode {mode}")));
        }
        let o = 2 * mode;
        GaussianState::new(
            self.cov.fixed_view::<2, 2>(o, o).into_owned(),
            Vector2::new(self.mean[o], self.mean[o + 1]),
        )
    }

    /// `(nu_-, nu_+)` from the invariants `Delta = det A + det B + 2 det C` and `det V`.
    pub fn symplectic_eigenvalues(&self) -> (f64, f64) {
        let a = self.cov.fixed_view::<2, 2>(0, 0).determinant();
        let b = self.cov.fixed_view::<2, 2>(2, 2).determinant();
        let c = self.cov.fixed_view::<2, 2>(0, 2).determinant();
        let delta = a + b + 2.0 * c;
        let det = self.cov.determinant();
        let disc = (delta * delta - 4.0 * det).max(0.0).sqrt();
        let minus = (0.5 * (delta - disc)).max(0.0).sqrt();
        let plus = (0.5 * (delta + disc)).max(0.0).sqrt();
        (minus, plus)
    }

    fn transformed(&self, s: &Matrix4<f64>) -> Self {
        TwoModeState {
            cov: s * self.cov * s.transpose(),
            mean: s * self.mean,
        }
    }
}

/// Symplectic matrix of `b = sqrt(k) a + sqrt(k-1) e^dag`, `c = sqrt(k-1) a^dag + sqrt(k) e`.
pub fn two_mode_squeezer_matrix(kappa: f64) -> Matrix4<f64> {
    let g = kappa.sqrt();
    let s = (kappa - 1.0).sqrt();
    #[rustfmt::skip]
    let m = Matrix4::new(
        g,  0.0, s,   0.0,
        0.0, g,  0.0, -s,
        s,  0.0, g,   0.0,
        0.0, -s, 0.0, g,
    );
    m
}

/// Symplectic matrix of a beamsplitter with transmissivity `eta`.
pub fn beamsplitter_matrix(eta: f64) -> Matrix4<f64> {
    let t = eta.sqrt();
    let r = (1.0 - eta).sqrt();
    #[rustfmt::skip]
    let m = Matrix4::new(
        t,   0.0, r,   0.0,
        0.0, t,   0.0, r,
        -r,  0.0, t,   0.0,
        0.0, -r,  0.0, t,
    );
    m
}

/// Amplifier dilation acting on signal and environment. Mode 0 of the result is
/// the amplified output, mode 1 the conjugate port.
pub fn apply_two_mode_squeezer(
    signal: &GaussianState,
    env: &GaussianState,
    kappa: f64,
) -> Result<TwoModeState> {
    if !kappa.is_finite() || kappa < 1.0 {
        return Err(domain(format!("amplifier gain must be >= 1, got {kappa}")));
    }
    let input = checked_product(signal, env)?;
    Ok(input.transformed(&two_mode_squeezer_matrix(kappa)))
}

/// Beamsplitter mixing signal and environment. Mode 0 is the transmitted output.
pub fn apply_beamsplitter(
    signal: &GaussianState,
    env: &GaussianState,
    eta: f64,
) -> Result<TwoModeState> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(domain(format!(
            "transmissivity must lie in [0, 1], got {eta}"
        )));
    }
    let input = checked_product(signal, env)?;
    Ok(input.transformed(&beamsplitter_matrix(eta)))
}

fn checked_product(a: &GaussianState, b: &GaussianState) -> Result<TwoModeState> {
    // Inputs may not have passed through `new`.
    let a = GaussianState::new(a.cov, a.mean)?;
    let b = GaussianState::new(b.cov, b.mean)?;
    Ok(TwoModeState::product(&a, &b))
}

/// Von Neumann entropy in bits: `g(nu - 1/2)` with `nu = sqrt(det cov)`.
pub fn entropy_of(state: &GaussianState) -> Result<f64> {
    let det = state.cov.determinant();
    if det < 0.25 - PHYSICALITY_TOL {
        return Err(Error::Unphysical(format!("det(cov) = {det} < 1/4")));
    }
    Ok(g_nonneg(state.thermal_occupation()))
}
