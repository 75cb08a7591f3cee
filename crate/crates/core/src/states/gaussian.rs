use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(2 pi sigma0^2)^{-1/4} exp(-(x - x0)^2 / 4 sigma0^2) e^{i k0 x}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianSpec {
    #[serde(default)]
    pub x0: f64,
    pub sigma0: f64,
    #[serde(default)]
    pub k0: f64,
    #[serde(default = "super::unit_mass")]
    pub m: f64,
}

impl GaussianSpec {
    pub fn new(x0: f64, sigma0: f64, k0: f64, m: f64) -> Result<Self> {
        let g = GaussianSpec { x0, sigma0, k0, m };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.x0.is_finite() || !self.k0.is_finite() {
            return Err(Error::InvalidSpec("gaussian x0 and k0 must be finite".into()));
        }
        if !(self.sigma0 > 0.0) || !self.sigma0.is_finite() {
            return Err(Error::InvalidSpec(format!("gaussian sigma0 must be positive, got {}", self.sigma0)));
        }
        super::check_mass(self.m)
    }

    /// Spreading time `tau0 = 2 m sigma0^2`.
    pub fn tau0(&self) -> f64 {
        2.0 * self.m * self.sigma0 * self.sigma0
    }

    /// Width `sigma(tau) = sigma0 sqrt(1 + tau^2 / tau0^2)`.
    pub fn sigma(&self, tau: f64) -> f64 {
        let r = tau / self.tau0();
        self.sigma0 * (1.0 + r * r).sqrt()
    }

    pub fn initial(&self, x: f64) -> Complex64 {
        let d = x - self.x0;
        let s2 = self.sigma0 * self.sigma0;
        let amp = (2.0 * PI * s2).powf(-0.25) * (-d * d / (4.0 * s2)).exp();
        Complex64::from_polar(amp, self.k0 * x)
    }

    /// `(2 sigma0^2 / pi)^{1/4} exp(-sigma0^2 (p - k0)^2) e^{-i (p - k0) x0}`.
    pub fn momentum(&self, p: f64) -> Complex64 {
        let s2 = self.sigma0 * self.sigma0;
        let d = p - self.k0;
        let amp = (2.0 * s2 / PI).powf(0.25) * (-s2 * d * d).exp();
        Complex64::from_polar(amp, -d * self.x0)
    }

    /// The conjugate initial state is the same packet with `-k0`.
    pub fn conj(&self) -> Self {
        GaussianSpec { k0: -self.k0, ..*self }
    }
}

/// Free evolution in complex-width form:
///
/// `psi = (2 pi sigma0^2)^{-1/4} (1 + i tau/tau0)^{-1/2}
///   exp[-(x - x0 - k0 tau/m)^2 / (4 sigma0^2 (1 + i tau/tau0)) + i k0 (x - k0 tau / 2m)]`.
pub fn gaussian_amplitude(g: &GaussianSpec, x: f64, tau: f64) -> Result<Complex64> {
    g.validate()?;
    if !(tau >= 0.0) {
        return Err(Error::Domain(format!("gaussian evolution needs tau >= 0, got {tau}")));
    }
    Ok(evolve(g, x, tau))
}

pub(crate) fn evolve(g: &GaussianSpec, x: f64, tau: f64) -> Complex64 {
    let s2 = g.sigma0 * g.sigma0;
    let w = Complex64::new(1.0, tau / g.tau0());
    let d = x - g.x0 - g.k0 * tau / g.m;
    let phase = Complex64::new(0.0, g.k0 * (x - g.k0 * tau / (2.0 * g.m)));
    (2.0 * PI * s2).powf(-0.25) / w.sqrt() * (-d * d / (4.0 * s2 * w) + phase).exp()
}

/// Backward solution `psi~(x, tau; k0) = conj(psi(x, tau; -k0))`.
pub(crate) fn evolve_backward(g: &GaussianSpec, x: f64, tau: f64) -> Complex64 {
    evolve(&g.conj(), x, tau).conj()
}
