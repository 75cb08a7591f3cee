//! Analytic wavepackets and their free evolution `psi(x, tau)`.

mod boxstate;
mod gaussian;
mod moshinsky;
mod oscillator;
mod piecewise;
mod scattering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use boxstate::{box_amplitude, box_amplitude_branch, BoxSpec};
pub use gaussian::{gaussian_amplitude, GaussianSpec};
pub use moshinsky::{moshinsky, moshinsky_function, shutter_solution, ShutterSpec, Side};
pub use oscillator::{eigenfunction, ho_transformed_amplitude, OscSuperposition};
pub use piecewise::{PiecewisePlaneWave, PlaneWavePiece, Support};
pub use scattering::{
    scattering_coefficients, scattering_free_evolution, solve_scattering, PiecewisePotential, ScatteringCoefficients,
    ScatteringSolution, ScatteringSpec,
};

use crate::error::{Error, Result};

pub(crate) fn unit_mass() -> f64 {
    1.0
}

pub(crate) fn check_mass(m: f64) -> Result<()> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("mass must be positive, got {m}")))
    }
}

/// A state description as read from JSON, tagged by `"type"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum StateSpec {
    Gaussian(GaussianSpec),
    Shutter(ShutterSpec),
    Box(BoxSpec),
    Scattering(ScatteringSpec),
    Oscillator(OscSuperposition),
}

impl StateSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            StateSpec::Gaussian(g) => g.validate(),
            StateSpec::Shutter(s) => s.validate(),
            StateSpec::Box(b) => b.validate(),
            StateSpec::Scattering(s) => s.validate(),
            StateSpec::Oscillator(o) => o.validate(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: StateSpec = serde_json::from_str(text).map_err(|e| Error::InvalidSpec(format!("state JSON: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            StateSpec::Gaussian(_) => "gaussian",
            StateSpec::Shutter(_) => "shutter",
            StateSpec::Box(_) => "box",
            StateSpec::Scattering(_) => "scattering",
            StateSpec::Oscillator(_) => "oscillator",
        }
    }
}

/// How a state changes with time `t` between tomogram snapshots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dynamics {
    /// Evolves under the free Hamiltonian.
    Free,
    /// An eigenstate of its own Hamiltonian; only a global phase changes.
    Stationary,
    /// Superposition of oscillator modes with phases `e^{-i omega_n t}`.
    Oscillator,
}

/// Where the initial amplitude lives, for the quadrature oracle.
///
/// Inside `window` the amplitude is evaluated directly, split at
/// `breakpoints`. Beyond it the amplitude is either negligible or equal to
/// the plane-wave sums in `left_tail` / `right_tail`, given as `(c, kappa)`
/// for `c e^{i kappa x}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleProfile {
    pub window: (f64, f64),
    pub breakpoints: Vec<f64>,
    pub left_tail: Vec<(Complex64, Complex64)>,
    pub right_tail: Vec<(Complex64, Complex64)>,
    /// Bound on the local wave number of the amplitude.
    pub wavenumber: f64,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Gaussian(GaussianSpec),
    Piecewise(PiecewisePlaneWave),
    Oscillator(OscSuperposition),
}

/// A validated state ready for evaluation.
///
/// Shutter and box states are rescaled to unit norm when the norm is finite;
/// a real-`k` shutter and scattering states are plane waves and stay
/// unnormalized, which [`State::is_normalized`] reports.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    spec: StateSpec,
    kind: Kind,
    normalized: bool,
}

impl State {
    pub fn new(spec: StateSpec) -> Result<Self> {
        spec.validate()?;
        let (kind, normalized) = match &spec {
            StateSpec::Gaussian(g) => (Kind::Gaussian(*g), true),
            StateSpec::Oscillator(o) => (Kind::Oscillator(o.clone()), true),
            StateSpec::Shutter(s) => {
                let support = match s.side {
                    Side::Left => Support::Below(s.x0),
                    Side::Right => Support::Above(s.x0),
                };
                let piece = PlaneWavePiece { c: Complex64::new(1.0, 0.0), kappa: s.k, support };
                normalize(PiecewisePlaneWave::new(vec![piece], s.m)?)
            }
            StateSpec::Box(b) => normalize(b.wave()),
            StateSpec::Scattering(s) => (Kind::Piecewise(s.wave()?), false),
        };
        Ok(State { spec, kind, normalized })
    }

    pub fn spec(&self) -> &StateSpec {
        &self.spec
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn mass(&self) -> f64 {
        match &self.kind {
            Kind::Gaussian(g) => g.m,
            Kind::Piecewise(w) => w.mass,
            Kind::Oscillator(_) => 1.0,
        }
    }

    pub fn dynamics(&self) -> Dynamics {
        match self.spec {
            StateSpec::Scattering(_) => Dynamics::Stationary,
            StateSpec::Oscillator(_) => Dynamics::Oscillator,
            _ => Dynamics::Free,
        }
    }

    /// Energy of a stationary state, `k^2 / 2m`.
    pub fn energy(&self) -> Option<f64> {
        match &self.spec {
            StateSpec::Scattering(s) => Some(s.k * s.k / (2.0 * s.m)),
            _ => None,
        }
    }

    pub fn gaussian(&self) -> Option<&GaussianSpec> {
        match &self.kind {
            Kind::Gaussian(g) => Some(g),
            _ => None,
        }
    }

    pub fn superposition(&self) -> Option<&OscSuperposition> {
        match &self.kind {
            Kind::Oscillator(o) => Some(o),
            _ => None,
        }
    }

    pub fn piecewise(&self) -> Option<&PiecewisePlaneWave> {
        match &self.kind {
            Kind::Piecewise(w) => Some(w),
            _ => None,
        }
    }

    /// The same state with oscillator phases advanced by `t`. Other families
    /// are returned unchanged.
    pub fn oscillator_at(&self, t: f64) -> State {
        match &self.kind {
            Kind::Oscillator(o) => {
                let o = o.at_time(t);
                State { spec: StateSpec::Oscillator(o.clone()), kind: Kind::Oscillator(o), normalized: true }
            }
            _ => self.clone(),
        }
    }

    /// Initial amplitude `psi(x, 0)`; edges of truncated waves take the mean
    /// of both sides.
    pub fn initial(&self, x: f64) -> Result<Complex64> {
        match &self.kind {
            Kind::Gaussian(g) => Ok(g.initial(x)),
            Kind::Piecewise(w) => Ok(w.initial(x)),
            Kind::Oscillator(o) => o.initial(x),
        }
    }

    /// Forward free evolution `psi(x, tau)`, `tau >= 0`.
    pub fn forward(&self, x: f64, tau: f64) -> Result<Complex64> {
        if !(tau >= 0.0) {
            return Err(Error::Domain(format!("forward evolution needs tau >= 0, got {tau}")));
        }
        match &self.kind {
            Kind::Gaussian(g) => Ok(gaussian::evolve(g, x, tau)),
            Kind::Piecewise(w) => w.forward(x, tau),
            Kind::Oscillator(o) => o.forward(x, tau),
        }
    }

    /// Backward solution `psi~(x, tau) = conj(U(tau) conj(psi_0))(x)`.
    pub fn backward(&self, x: f64, tau: f64) -> Result<Complex64> {
        if !(tau >= 0.0) {
            return Err(Error::Domain(format!("backward evolution needs tau >= 0, got {tau}")));
        }
        match &self.kind {
            Kind::Gaussian(g) => Ok(gaussian::evolve_backward(g, x, tau)),
            Kind::Piecewise(w) => w.backward(x, tau),
            Kind::Oscillator(o) => o.backward(x, tau),
        }
    }

    /// Momentum amplitude `(2 pi)^{-1/2} int psi(x) e^{-ipx} dx`.
    pub fn momentum(&self, p: f64) -> Result<Complex64> {
        match &self.kind {
            Kind::Gaussian(g) => Ok(g.momentum(p)),
            Kind::Piecewise(w) => w.momentum(p),
            Kind::Oscillator(o) => o.momentum(p),
        }
    }

    /// Jumps `psi(e+) - psi(e-)` of the initial amplitude at its edges.
    pub fn edge_jumps(&self) -> Vec<(f64, Complex64)> {
        match &self.kind {
            Kind::Piecewise(w) => w.edge_jumps(),
            _ => Vec::new(),
        }
    }

    pub fn position_profile(&self) -> OracleProfile {
        match &self.kind {
            Kind::Gaussian(g) => OracleProfile {
                window: (g.x0 - 12.0 * g.sigma0, g.x0 + 12.0 * g.sigma0),
                breakpoints: vec![g.x0],
                left_tail: vec![],
                right_tail: vec![],
                wavenumber: g.k0.abs() + 6.0 / g.sigma0,
            },
            Kind::Oscillator(o) => {
                let reach = (2.0 * o.max_mode() as f64 + 1.0).sqrt();
                OracleProfile {
                    window: (-(reach + 9.0), reach + 9.0),
                    breakpoints: vec![0.0],
                    left_tail: vec![],
                    right_tail: vec![],
                    wavenumber: reach + 6.0,
                }
            }
            Kind::Piecewise(w) => {
                let bps = w.breakpoints();
                let (left_tail, right_tail) = w.tails();
                OracleProfile {
                    window: (bps[0], bps[bps.len() - 1]),
                    breakpoints: bps,
                    left_tail,
                    right_tail,
                    wavenumber: w.max_wavenumber(),
                }
            }
        }
    }

    /// Profile of the momentum amplitude; only for states whose momentum
    /// amplitude decays faster than any power.
    pub fn momentum_profile(&self) -> Result<OracleProfile> {
        match &self.kind {
            Kind::Gaussian(g) => Ok(OracleProfile {
                window: (g.k0 - 6.0 / g.sigma0, g.k0 + 6.0 / g.sigma0),
                breakpoints: vec![g.k0],
                left_tail: vec![],
                right_tail: vec![],
                wavenumber: g.x0.abs() + 12.0 * g.sigma0,
            }),
            Kind::Oscillator(_) => Ok(self.position_profile()),
            Kind::Piecewise(_) => Err(Error::Domain(format!(
                "momentum amplitude of a {} state has algebraic tails",
                self.spec.type_name()
            ))),
        }
    }
}

fn normalize(wave: PiecewisePlaneWave) -> (Kind, bool) {
    match wave.norm_sqr() {
        Some(n) if n > 0.0 && n.is_finite() => (Kind::Piecewise(wave.scaled(1.0 / n.sqrt())), true),
        _ => (Kind::Piecewise(wave), false),
    }
}
