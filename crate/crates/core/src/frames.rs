//! Reference frames `(mu, nu)` for the quadrature `X = mu q + nu p`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Frames with `|mu|` or `|nu|` below this are evaluated by the exact
/// position or momentum limit instead of the propagator.
pub const LIMIT_GUARD: f64 = 1e-8;

/// A symplectic reference frame.
///
/// Frames built by [`frame_from_angle`] satisfy `(mu/s)^2 + (nu s)^2 = 1`.
/// Frames built by [`FrameParams::new`] are unconstrained; for those `s` is
/// 1 and `theta` is the polar angle of the point `(mu, nu)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameParams {
    pub mu: f64,
    pub nu: f64,
    pub s: f64,
    pub theta: f64,
}

/// Which evaluator a frame is routed to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `nu` is (numerically) zero: the tomogram is the position density.
    Position,
    /// `mu` is (numerically) zero: the tomogram is the momentum density.
    Momentum,
    General,
}

impl FrameParams {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        if !mu.is_finite() || !nu.is_finite() {
            return Err(Error::InvalidSpec(format!("frame ({mu}, {nu}) is not finite")));
        }
        if mu == 0.0 && nu == 0.0 {
            return Err(Error::DegenerateFrame { mu, nu });
        }
        Ok(FrameParams { mu, nu, s: 1.0, theta: nu.atan2(mu) })
    }

    /// The frame `(lambda mu, lambda nu)`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        FrameParams::new(lambda * self.mu, lambda * self.nu)
    }

    pub fn regime(&self) -> Regime {
        if self.nu.abs() < LIMIT_GUARD && self.nu.abs() <= self.mu.abs() {
            Regime::Position
        } else if self.mu.abs() < LIMIT_GUARD {
            Regime::Momentum
        } else {
            Regime::General
        }
    }
}

/// `mu = s cos(theta)`, `nu = sin(theta) / s`.
pub fn frame_from_angle(theta: f64, s: f64) -> Result<FrameParams> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidSpec(format!("frame scale s must be positive, got {s}")));
    }
    if !theta.is_finite() {
        return Err(Error::InvalidSpec(format!("frame angle {theta} is not finite")));
    }
    let (sin, cos) = theta.sin_cos();
    Ok(FrameParams { mu: s * cos, nu: sin / s, s, theta })
}

/// Free-evolution time and position matching one tomogram argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeEvolutionParams {
    pub tau_over_m: f64,
    pub x: f64,
}

/// The map from a first-quadrant frame to free evolution: time
/// `tau = m nu / mu` and position `x = X / mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeEvolutionMap {
    pub tau: f64,
    pub mass: f64,
    mu: f64,
}

impl FreeEvolutionMap {
    pub fn position(&self, x_quadrature: f64) -> f64 {
        x_quadrature / self.mu
    }

    pub fn params(&self, x_quadrature: f64) -> FreeEvolutionParams {
        FreeEvolutionParams { tau_over_m: self.tau / self.mass, x: self.position(x_quadrature) }
    }
}

pub fn to_free_evolution(f: &FrameParams, m: f64) -> Result<FreeEvolutionMap> {
    if !(m > 0.0) {
        return Err(Error::InvalidSpec(format!("mass must be positive, got {m}")));
    }
    if !(f.mu > 0.0 && f.nu > 0.0) {
        return Err(Error::Domain(format!("frame ({}, {}) is outside the first quadrant", f.mu, f.nu)));
    }
    Ok(FreeEvolutionMap { tau: m * f.nu / f.mu, mass: m, mu: f.mu })
}

/// Tomogram amplitudes on the whole `(mu, nu)` plane from the forward free
/// evolution `psi(x, tau)` and the backward one `psi~(x, tau)`, both known
/// only for `tau > 0`.
///
/// With `tau = m |nu| / |mu|` and `x = X sign(mu) / |mu|` the amplitude is
/// `psi(x, tau) / sqrt|mu|` when `mu` and `nu` share a sign and
/// `psi~(x, tau) / sqrt|mu|` otherwise; the tomogram is its squared modulus.
/// The amplitude is linear in the initial state, so sums of amplitudes of
/// different states in the same frame interfere correctly.
pub struct FullPlane<F, B> {
    forward: F,
    backward: B,
    mass: f64,
}

pub fn extend_by_symmetry<F, B>(forward: F, backward: B, mass: f64) -> FullPlane<F, B>
where
    F: Fn(f64, f64) -> Result<Complex64>,
    B: Fn(f64, f64) -> Result<Complex64>,
{
    FullPlane { forward, backward, mass }
}

impl<F, B> FullPlane<F, B>
where
    F: Fn(f64, f64) -> Result<Complex64>,
    B: Fn(f64, f64) -> Result<Complex64>,
{
    pub fn amplitude(&self, f: &FrameParams, x_quadrature: f64) -> Result<Complex64> {
        if f.mu == 0.0 || f.nu == 0.0 {
            return Err(Error::Domain(format!("frame ({}, {}) lies on an axis; use the limit evaluator", f.mu, f.nu)));
        }
        let (amu, anu) = (f.mu.abs(), f.nu.abs());
        let tau = self.mass * anu / amu;
        let x = x_quadrature * f.mu.signum() / amu;
        let psi = if f.mu.signum() == f.nu.signum() { (self.forward)(x, tau)? } else { (self.backward)(x, tau)? };
        Ok(psi / amu.sqrt())
    }

    pub fn tomogram(&self, f: &FrameParams, x_quadrature: f64) -> Result<f64> {
        Ok(self.amplitude(f, x_quadrature)?.norm_sqr())
    }
}

/// Uniform angles on `[0, pi)` at fixed scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarGrid {
    pub theta_count: usize,
    pub s: f64,
}

impl PolarGrid {
    pub fn new(theta_count: usize) -> Result<Self> {
        if theta_count < 2 {
            return Err(Error::InvalidSpec(format!("theta count must be at least 2, got {theta_count}")));
        }
        Ok(PolarGrid { theta_count, s: 1.0 })
    }

    pub fn thetas(&self) -> Vec<f64> {
        (0..self.theta_count).map(|i| PI * i as f64 / self.theta_count as f64).collect()
    }

    pub fn frames(&self) -> Result<Vec<FrameParams>> {
        self.thetas().into_iter().map(|t| frame_from_angle(t, self.s)).collect()
    }
}

/// `count` equally spaced points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl LinearGrid {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidSpec(format!("grid count must be at least 2, got {count}")));
        }
        if !(min < max) || !min.is_finite() || !max.is_finite() {
            return Err(Error::InvalidSpec(format!("grid bounds need min < max, got [{min}, {max}]")));
        }
        Ok(LinearGrid { min, max, count })
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }

    pub fn points(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.count).map(|i| if i + 1 == self.count { self.max } else { self.min + h * i as f64 }).collect()
    }
}
