//! Free evolution of truncated plane waves (quantum shutter).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::faddeeva;

/// Which half-line the truncated plane wave occupies at `tau = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `theta(x0 - x) e^{ikx}`: the wave fills `x < x0`.
    Left,
    /// `theta(x - x0) e^{ikx}`: the wave fills `x > x0`.
    Right,
}

impl Side {
    pub fn mirror(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Moshinsky function `M(x, tau; k)` for a shutter at the origin:
///
/// `M_L = (1/2) e^{i m x^2 / 2 tau} w(i y)`, `M_R` with `w(-i y)`, where
/// `y = e^{-i pi/4} sqrt(m / 2 tau) (x - k tau / m)`.
pub fn moshinsky_function(side: Side, x: f64, tau: f64, k: Complex64, m: f64) -> Result<Complex64> {
    if !(tau > 0.0) {
        return Err(Error::Domain(format!("Moshinsky function needs tau > 0, got {tau}")));
    }
    let rot = Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
    let y = rot * (m / (2.0 * tau)).sqrt() * (x - k * tau / m);
    let iy = Complex64::i() * y;
    let arg = match side {
        Side::Left => iy,
        Side::Right => -iy,
    };
    let chirp = Complex64::from_polar(0.5, m * x * x / (2.0 * tau));
    Ok(chirp * faddeeva(arg)?)
}

/// Free evolution of `theta(x0 - x) e^{ikx}` (left) or `theta(x - x0) e^{ikx}`
/// (right): `e^{i k x0} M(x - x0, tau; k)`. At `tau = 0` returns the initial
/// value, with 1/2 at the edge.
pub fn shutter_solution(side: Side, x: f64, tau: f64, x0: f64, k: Complex64, m: f64) -> Result<Complex64> {
    if tau == 0.0 {
        return Ok(truncated_wave(side, x, x0, k));
    }
    let shift = (Complex64::i() * k * x0).exp();
    Ok(shift * moshinsky_function(side, x - x0, tau, k, m)?)
}

pub(crate) fn truncated_wave(side: Side, x: f64, x0: f64, k: Complex64) -> Complex64 {
    let inside = match side {
        Side::Left => x0 - x,
        Side::Right => x - x0,
    };
    let weight = if inside > 0.0 {
        1.0
    } else if inside == 0.0 {
        0.5
    } else {
        return Complex64::new(0.0, 0.0);
    };
    weight * (Complex64::i() * k * x).exp()
}

/// A truncated plane wave `e^{ikx}` on one side of `x0`.
///
/// For left incidence `k = k_r - i k_i` with `k_i >= 0`; for right incidence
/// `Im k >= 0`. The state is normalizable only when `Im k != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShutterSpec {
    pub x0: f64,
    pub k: Complex64,
    pub side: Side,
    #[serde(default = "super::unit_mass")]
    pub m: f64,
}

impl ShutterSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.x0.is_finite() || !self.k.re.is_finite() || !self.k.im.is_finite() {
            return Err(Error::InvalidSpec("shutter parameters must be finite".into()));
        }
        super::check_mass(self.m)?;
        match self.side {
            Side::Left if self.k.im > 0.0 => {
                Err(Error::InvalidSpec(format!("left shutter needs Im k <= 0, got k = {}", self.k)))
            }
            Side::Right if self.k.im < 0.0 => {
                Err(Error::InvalidSpec(format!("right shutter needs Im k >= 0, got k = {}", self.k)))
            }
            _ => Ok(()),
        }
    }

    /// `k_i = |Im k|`, the decay rate of the amplitude away from the edge.
    pub fn decay(&self) -> f64 {
        self.k.im.abs()
    }

    /// Position variance `1 / (4 k_i^2)` of the normalized state.
    pub fn variance(&self) -> Option<f64> {
        let ki = self.decay();
        (ki > 0.0).then(|| 1.0 / (4.0 * ki * ki))
    }
}

/// Unnormalized shutter solution `Psi(x, tau; x0, k)`.
pub fn moshinsky(s: &ShutterSpec, x: f64, tau: f64) -> Result<Complex64> {
    s.validate()?;
    if !(tau > 0.0) {
        return Err(Error::Domain(format!("shutter evolution needs tau > 0, got {tau}")));
    }
    shutter_solution(s.side, x, tau, s.x0, s.k, s.m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn origin_value_is_one_half() {
        let m = moshinsky_function(Side::Left, 0.0, 0.7, c(0.0, 0.0), 1.0).unwrap();
        assert!((m - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn sum_rule_example() {
        let (x, tau, k) = (1.3, 0.8, c(1.0, 0.0));
        let l = moshinsky_function(Side::Left, x, tau, k, 1.0).unwrap();
        let r = moshinsky_function(Side::Right, x, tau, k, 1.0).unwrap();
        let plane = c(0.0, x - tau / 2.0).exp();
        assert!((l + r - plane).norm() < 1e-13);
    }

    #[test]
    fn short_time_limit() {
        let k = c(1.0, 0.0);
        let inside = moshinsky_function(Side::Left, -0.5, 1e-6, k, 1.0).unwrap();
        assert!((inside - c(0.0, -0.5).exp()).norm() < 1e-3);
        let outside = moshinsky_function(Side::Left, 0.5, 1e-6, k, 1.0).unwrap();
        assert!(outside.norm() < 1e-3);
    }

    #[test]
    fn shutter_rejects_bad_input() {
        let s = ShutterSpec { x0: 0.0, k: c(1.0, 0.05), side: Side::Left, m: 1.0 };
        assert!(s.validate().is_err());
        let s = ShutterSpec { side: Side::Right, ..s };
        assert!(s.validate().is_ok());
        assert!(moshinsky(&s, 0.0, 0.0).is_err());
        assert!(moshinsky(&s, 0.0, -1.0).is_err());
    }

    #[test]
    fn shift_moves_the_edge() {
        let k = c(0.8, -0.1);
        let a = shutter_solution(Side::Left, 2.3, 0.4, 2.0, k, 1.0).unwrap();
        let b = moshinsky_function(Side::Left, 0.3, 0.4, k, 1.0).unwrap() * (Complex64::i() * k * 2.0).exp();
        assert!((a - b).norm() < 1e-15);
        assert_eq!(
            shutter_solution(Side::Right, 2.0, 0.0, 2.0, k, 1.0).unwrap(),
            0.5 * (Complex64::i() * k * 2.0).exp()
        );
    }
}
