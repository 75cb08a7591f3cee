use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::moshinsky::Side;
use super::piecewise::{branch_for, interval_evolution, PiecewisePlaneWave, PlaneWavePiece, Support};
use crate::error::{Error, Result};

/// `e^{i kappa x}` restricted to `[a, b]` (double shutter).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxSpec {
    pub a: f64,
    pub b: f64,
    pub kappa: Complex64,
    #[serde(default = "super::unit_mass")]
    pub m: f64,
}

impl BoxSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() || !self.b.is_finite() || !self.kappa.re.is_finite() || !self.kappa.im.is_finite() {
            return Err(Error::InvalidSpec("box parameters must be finite".into()));
        }
        if !(self.a < self.b) {
            return Err(Error::InvalidSpec(format!("box needs a < b, got [{}, {}]", self.a, self.b)));
        }
        super::check_mass(self.m)
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn wave(&self) -> PiecewisePlaneWave {
        PiecewisePlaneWave {
            pieces: vec![PlaneWavePiece {
                c: Complex64::new(1.0, 0.0),
                kappa: self.kappa,
                support: Support::Between(self.a, self.b),
            }],
            mass: self.m,
        }
    }

    /// Position variance of the normalized state,
    /// `(1/4) [1/k_i^2 - l^2 csch^2(k_i l)]`, or `l^2 / 12` for real `kappa`.
    pub fn variance(&self) -> f64 {
        let l = self.width();
        let ki = self.kappa.im.abs();
        // series in (k_i l)^2 where the closed form cancels
        let t = ki * l;
        if t < 1e-3 {
            return l * l * (1.0 / 12.0 - t * t / 180.0);
        }
        let csch = 1.0 / t.sinh();
        0.25 * (1.0 / (ki * ki) - l * l * csch * csch)
    }
}

/// Unnormalized free evolution of the box state, branch chosen by the sign of
/// `Im kappa` so that no Moshinsky function grows.
pub fn box_amplitude(bx: &BoxSpec, x: f64, tau: f64) -> Result<Complex64> {
    box_amplitude_branch(bx, branch_for(bx.kappa), x, tau)
}

/// Box evolution through an explicit branch: `Left` uses
/// `Psi_L(b) - Psi_L(a)`, `Right` uses `Psi_R(a) - Psi_R(b)`.
pub fn box_amplitude_branch(bx: &BoxSpec, side: Side, x: f64, tau: f64) -> Result<Complex64> {
    bx.validate()?;
    if !(tau > 0.0) {
        return Err(Error::Domain(format!("box evolution needs tau > 0, got {tau}")));
    }
    interval_evolution(side, x, tau, bx.a, bx.b, bx.kappa, bx.m)
}
