//! Tomograms straight from their defining integrals.
//!
//! Everything reduces to the chirp integral
//! `I = int psi0(y) exp(i (alpha y^2 + beta y)) dy`. Inside the profile
//! window it is summed over panels short enough that the phase turns by at
//! most about pi per panel. Plane-wave tails are integrated along rays
//! rotated by `sign(alpha) pi/4` into the complex plane, where the quadratic
//! phase becomes a Gaussian decay; the window is first widened past every
//! stationary point so the linear part of the exponent decays as well.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frames::{FrameParams, LIMIT_GUARD};
use crate::quad::{integrate_panels, QuadConfig};
use crate::states::{OracleProfile, State};

/// Largest number of panels a single window may be split into.
const MAX_PANELS: usize = 2_000_000;

fn panel_breaks(lo: f64, hi: f64, alpha: f64, beta: f64, k: f64, fixed: &[f64]) -> Result<Vec<f64>> {
    let mut breaks = vec![lo];
    let mut y = lo;
    while y < hi {
        let rate = |v: f64| (2.0 * alpha * v + beta).abs() + k + 1.0;
        let h0 = PI / rate(y);
        let h = PI / rate(y).max(rate(y + h0));
        y = (y + h).min(hi);
        breaks.push(y);
        if breaks.len() > MAX_PANELS {
            return Err(Error::NonConvergence(format!(
                "chirp window [{lo}, {hi}] needs more than {MAX_PANELS} panels"
            )));
        }
    }
    breaks.extend(fixed.iter().copied().filter(|&b| b > lo && b < hi));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    Ok(breaks)
}

fn ray_integral(
    tail: &[(Complex64, Complex64)],
    start: f64,
    direction: Complex64,
    alpha: f64,
    beta: f64,
    cfg: &QuadConfig,
) -> Result<Complex64> {
    if tail.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let reach = (45.0 / alpha.abs()).sqrt();
    let i = Complex64::i();
    let f = |s: f64| {
        let y = start + direction * s;
        let plane: Complex64 = tail.iter().map(|&(c, kappa)| c * (i * kappa * y).exp()).sum();
        plane * (i * (alpha * y * y + beta * y)).exp()
    };
    let breaks: Vec<f64> = (0..=8).map(|j| reach * j as f64 / 8.0).collect();
    Ok(integrate_panels(f, &breaks, cfg)?.value)
}

/// `int psi0(y) exp(i (alpha y^2 + beta y)) dy` over the real line.
pub fn chirp_integral<F>(psi0: F, profile: &OracleProfile, alpha: f64, beta: f64, cfg: &QuadConfig) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::Domain(format!("chirp parameters ({alpha}, {beta}) are not finite")));
    }
    let has_tails = !profile.left_tail.is_empty() || !profile.right_tail.is_empty();
    if has_tails && alpha == 0.0 {
        return Err(Error::Domain("plane-wave tails need a nonzero chirp".into()));
    }
    let (mut lo, mut hi) = profile.window;
    if has_tails {
        let margin = 5.0 / alpha.abs().sqrt() + 1.0;
        let stationary = |kappa: Complex64| -(beta + kappa.re) / (2.0 * alpha);
        for &(_, kappa) in &profile.left_tail {
            lo = lo.min(stationary(kappa) - margin);
        }
        for &(_, kappa) in &profile.right_tail {
            hi = hi.max(stationary(kappa) + margin);
        }
    }
    let breaks = panel_breaks(lo, hi, alpha, beta, profile.wavenumber, &profile.breakpoints)?;
    let mut failure = None;
    let body = integrate_panels(
        |y| match psi0(y) {
            Ok(v) => v * Complex64::from_polar(1.0, alpha * y * y + beta * y),
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        &breaks,
        cfg,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let mut total = body?.value;
    if has_tails {
        let rot = Complex64::from_polar(1.0, alpha.signum() * FRAC_PI_4);
        // y = hi + rot s on the right and y = lo - rot s on the left; the left
        // ray runs from -inf inwards, so both pick up dy = rot ds
        total += ray_integral(&profile.right_tail, hi, rot, alpha, beta, cfg)? * rot;
        total += ray_integral(&profile.left_tail, lo, -rot, alpha, beta, cfg)? * rot;
    }
    Ok(total)
}

/// Position-representation tomogram
/// `W = |int psi(x) exp(i mu x^2 / 2 nu - i X x / nu) dx|^2 / (2 pi |nu|)`.
pub fn oracle_tomogram_position<F>(
    psi0: F,
    profile: &OracleProfile,
    f: &FrameParams,
    x: f64,
    cfg: &QuadConfig,
) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if f.nu == 0.0 {
        return Err(Error::Domain("position-representation oracle needs nu != 0".into()));
    }
    let i = chirp_integral(psi0, profile, f.mu / (2.0 * f.nu), -x / f.nu, cfg)?;
    Ok(i.norm_sqr() / (2.0 * PI * f.nu.abs()))
}

/// Momentum-representation tomogram
/// `W = |int psi(p) exp(-i nu p^2 / 2 mu + i X p / mu) dp|^2 / (2 pi |mu|)`.
pub fn oracle_tomogram_momentum<F>(
    psi_p: F,
    profile: &OracleProfile,
    f: &FrameParams,
    x: f64,
    cfg: &QuadConfig,
) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if f.mu == 0.0 {
        return Err(Error::Domain("momentum-representation oracle needs mu != 0".into()));
    }
    let i = chirp_integral(psi_p, profile, -f.nu / (2.0 * f.mu), x / f.mu, cfg)?;
    Ok(i.norm_sqr() / (2.0 * PI * f.mu.abs()))
}

/// Free evolution by quadrature against the propagator,
/// `psi(x, tau) = sqrt(m / 2 pi i tau) int exp(i m (x - y)^2 / 2 tau) psi0(y) dy`.
pub fn oracle_propagate<F>(
    psi0: F,
    profile: &OracleProfile,
    m: f64,
    x: f64,
    tau: f64,
    cfg: &QuadConfig,
) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(tau > 0.0) {
        return Err(Error::Domain(format!("propagator needs tau > 0, got {tau}")));
    }
    let a = m / (2.0 * tau);
    let i = chirp_integral(psi0, profile, a, -2.0 * a * x, cfg)?;
    let pref = (Complex64::new(0.0, m / (2.0 * PI * tau))).sqrt().conj() * Complex64::from_polar(1.0, a * x * x);
    Ok(pref * i)
}

/// Position oracle applied to a state's initial amplitude.
pub fn oracle_tomogram(state: &State, f: &FrameParams, x: f64, cfg: &QuadConfig) -> Result<f64> {
    oracle_tomogram_position(|y| state.initial(y), &state.position_profile(), f, x, cfg)
}

/// Momentum oracle applied to a state's momentum amplitude.
pub fn oracle_tomogram_from_momentum(state: &State, f: &FrameParams, x: f64, cfg: &QuadConfig) -> Result<f64> {
    oracle_tomogram_momentum(|p| state.momentum(p), &state.momentum_profile()?, f, x, cfg)
}

/// Oracle value at time `t`. Frames with `nu` in the guard band go to the
/// momentum oracle, or to the exact limit when the momentum amplitude has
/// algebraic tails.
pub fn oracle_tomogram_at(state: &State, t: f64, f: &FrameParams, x: f64, cfg: &QuadConfig) -> Result<f64> {
    let (st, frame) = super::snapshot(state, t, f)?;
    if frame.nu.abs() >= LIMIT_GUARD {
        return oracle_tomogram(&st, &frame, x, cfg);
    }
    match st.momentum_profile() {
        Ok(profile) => oracle_tomogram_momentum(|p| st.momentum(p), &profile, &frame, x, cfg),
        Err(_) => super::limit_tomogram(&st, &frame, x),
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::states::{BoxSpec, GaussianSpec, OscSuperposition, ScatteringSpec, ShutterSpec, Side, StateSpec};
    use crate::tomography::closed_form_tomogram;

    fn frame(mu: f64, nu: f64) -> FrameParams {
        FrameParams::new(mu, nu).unwrap()
    }

    fn cfg() -> QuadConfig {
        QuadConfig::with_tol(1e-11)
    }

    fn state(spec: StateSpec) -> State {
        State::new(spec).unwrap()
    }

    #[test]
    fn ground_state_diagonal() {
        let st = state(StateSpec::Oscillator(OscSuperposition::eigenstate(0)));
        let w = oracle_tomogram(&st, &frame(1.0, 1.0), 0.0, &cfg()).unwrap();
        assert!((w - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn near_axis_frames_approach_densities() {
        let st = state(StateSpec::Gaussian(GaussianSpec::new(0.0, 1.0, 0.0, 1.0).unwrap()));
        for &x in &[-1.0, 0.0, 0.5, 2.0] {
            let w = oracle_tomogram(&st, &frame(1.0, 1e-3), x, &cfg()).unwrap();
            assert!((w - (-x * x / 2.0).exp() / (2.0 * PI).sqrt()).abs() < 1e-3);
            let p = oracle_tomogram_from_momentum(&st, &frame(1e-3, 1.0), x, &cfg()).unwrap();
            assert!((p - st.momentum(x).unwrap().norm_sqr()).abs() < 1e-3);
        }
    }

    #[test]
    fn dual_representations_agree() {
        let st = state(StateSpec::Gaussian(GaussianSpec::new(0.4, 0.9, -0.7, 1.0).unwrap()));
        for &x in &[-1.5, 0.0, 0.8] {
            let a = oracle_tomogram(&st, &frame(1.0, 0.5), x, &cfg()).unwrap();
            let b = oracle_tomogram_from_momentum(&st, &frame(1.0, 0.5), x, &cfg()).unwrap();
            assert!((a - b).abs() < 1e-9);
        }
        let one = state(StateSpec::Oscillator(OscSuperposition::eigenstate(1)));
        let a = oracle_tomogram_from_momentum(&one, &frame(0.6, 0.8), 1.0, &cfg()).unwrap();
        let b = closed_form_tomogram(&one, &frame(0.6, 0.8), 1.0).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn plane_wave_tails_in_every_quadrant() {
        let specs = [
            StateSpec::Shutter(ShutterSpec { x0: 0.3, k: Complex64::new(1.2, 0.0), side: Side::Left, m: 1.0 }),
            StateSpec::Shutter(ShutterSpec { x0: -0.2, k: Complex64::new(-0.8, 0.1), side: Side::Right, m: 2.0 }),
            StateSpec::Box(BoxSpec { a: -1.0, b: 0.5, kappa: Complex64::new(2.0, -0.3), m: 1.0 }),
            StateSpec::Scattering(ScatteringSpec { a: -0.5, b: 0.5, v0: 1.5, k: 1.3, side: Side::Left, m: 1.0 }),
        ];
        for spec in specs {
            let st = state(spec);
            for &(mu, nu) in &[(0.8, 0.6), (-0.5, 1.1), (-1.0, -0.4), (0.3, -0.9)] {
                for &x in &[-1.3, 0.1, 0.9] {
                    let a = oracle_tomogram(&st, &frame(mu, nu), x, &cfg()).unwrap();
                    let b = closed_form_tomogram(&st, &frame(mu, nu), x).unwrap();
                    assert!((a - b).abs() < 1e-8, "{:?} ({mu}, {nu}) {x}: {a} {b}", st.spec());
                }
            }
        }
    }

    #[test]
    fn propagator_oracle_reproduces_evolution() {
        let st = state(StateSpec::Box(BoxSpec { a: -1.0, b: 1.0, kappa: Complex64::new(0.7, 0.0), m: 1.0 }));
        let profile = st.position_profile();
        for &(x, tau) in &[(0.0, 0.3), (1.4, 1.0), (-2.0, 2.5)] {
            let a = oracle_propagate(|y| st.initial(y), &profile, 1.0, x, tau, &cfg()).unwrap();
            let b = st.forward(x, tau).unwrap();
            assert!((a - b).norm() < 1e-9, "{a} {b}");
        }
    }

    #[test]
    fn axis_frames_are_rejected() {
        let st = state(StateSpec::Oscillator(OscSuperposition::eigenstate(0)));
        assert!(oracle_tomogram(&st, &frame(1.0, 0.0), 0.0, &cfg()).is_err());
        assert!(oracle_tomogram_from_momentum(&st, &frame(0.0, 1.0), 0.0, &cfg()).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let st = state(StateSpec::Gaussian(GaussianSpec::new(0.0, 1.0, 0.0, 1.0).unwrap()));
        let tight = QuadConfig { max_evals: 50, ..cfg() };
        assert!(matches!(oracle_tomogram(&st, &frame(1.0, 0.2), 0.3, &tight), Err(Error::NonConvergence(_))));
    }
}
