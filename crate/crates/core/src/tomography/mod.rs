//! Tomogram evaluation.
//!
//! The closed-form route reads the tomogram off the free evolution,
//! `W(X|mu, nu) = |psi(X/mu, m nu/mu)|^2 / |mu|`, extended to all four
//! quadrants with the backward solution. Frames on an axis go to the
//! position or momentum density. [`oracle`] evaluates the defining
//! integrals directly and is used to check the shortcut.

mod field;
mod normalization;
pub mod oracle;
mod series;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frames::{extend_by_symmetry, FrameParams, Regime};
use crate::states::{Dynamics, GaussianSpec, State};

pub use crate::states::ho_transformed_amplitude;
pub use field::{evaluate_field, FieldOptions, Provenance, TomogramField};
pub use normalization::{tomogram_norm, tomogram_norm_with};
pub use oracle::{
    chirp_integral, oracle_propagate, oracle_tomogram, oracle_tomogram_at, oracle_tomogram_from_momentum,
    oracle_tomogram_momentum, oracle_tomogram_position,
};
pub use series::ho_transformed_amplitude_series;

fn check_frame(f: &FrameParams) -> Result<()> {
    if !f.mu.is_finite() || !f.nu.is_finite() {
        return Err(Error::InvalidSpec(format!("frame ({}, {}) is not finite", f.mu, f.nu)));
    }
    if f.mu == 0.0 && f.nu == 0.0 {
        return Err(Error::DegenerateFrame { mu: f.mu, nu: f.nu });
    }
    Ok(())
}

/// Amplitude `a` with `W(X|mu, nu) = |a|^2`, correct up to an `X`-dependent phase.
pub fn amplitude(state: &State, f: &FrameParams, x: f64) -> Result<Complex64> {
    check_frame(f)?;
    if f.regime() != Regime::General {
        return limit_amplitude(state, f, x);
    }
    if let Some(o) = state.superposition() {
        return Ok(o.transformed(f, x)? / f.mu.abs().sqrt());
    }
    extend_by_symmetry(|x, tau| state.forward(x, tau), |x, tau| state.backward(x, tau), state.mass()).amplitude(f, x)
}

/// `psi(X/mu)/sqrt|mu|` for `nu = 0`, `psi(X/nu)/sqrt|nu|` in momentum space for `mu = 0`.
pub fn limit_amplitude(state: &State, f: &FrameParams, x: f64) -> Result<Complex64> {
    check_frame(f)?;
    match f.regime() {
        Regime::Position => Ok(state.initial(x / f.mu)? / f.mu.abs().sqrt()),
        Regime::Momentum => Ok(state.momentum(x / f.nu)? / f.nu.abs().sqrt()),
        Regime::General => Err(Error::Domain(format!(
            "frame ({}, {}) is not on an axis; the limit evaluator needs mu = 0 or nu = 0",
            f.mu, f.nu
        ))),
    }
}

pub fn closed_form_tomogram(state: &State, f: &FrameParams, x: f64) -> Result<f64> {
    Ok(amplitude(state, f, x)?.norm_sqr())
}

pub fn limit_tomogram(state: &State, f: &FrameParams, x: f64) -> Result<f64> {
    Ok(limit_amplitude(state, f, x)?.norm_sqr())
}

/// The frame `(mu, nu + mu t / m)` that turns free evolution by `t` into a
/// fixed-time tomogram.
pub fn frame_at_time(f: &FrameParams, t: f64, m: f64) -> Result<FrameParams> {
    FrameParams::new(f.mu, f.nu + f.mu * t / m)
}

/// The state and frame whose `t = 0` tomogram equals the tomogram at time
/// `t`; global phases are dropped.
pub fn snapshot(state: &State, t: f64, f: &FrameParams) -> Result<(State, FrameParams)> {
    if !t.is_finite() {
        return Err(Error::InvalidSpec(format!("time {t} is not finite")));
    }
    check_frame(f)?;
    Ok(match state.dynamics() {
        _ if t == 0.0 => (state.clone(), *f),
        Dynamics::Free => (state.clone(), frame_at_time(f, t, state.mass())?),
        Dynamics::Stationary => (state.clone(), *f),
        Dynamics::Oscillator => (state.oscillator_at(t), *f),
    })
}

/// Amplitude of the state at time `t`.
pub fn amplitude_at_time(state: &State, t: f64, f: &FrameParams, x: f64) -> Result<Complex64> {
    let (st, frame) = snapshot(state, t, f)?;
    let a = amplitude(&st, &frame, x)?;
    match (state.dynamics(), state.energy()) {
        (Dynamics::Stationary, Some(e)) => Ok(a * Complex64::from_polar(1.0, -e * t)),
        _ => Ok(a),
    }
}

pub fn time_dependent_tomogram(state: &State, t: f64, f: &FrameParams, x: f64) -> Result<f64> {
    Ok(amplitude_at_time(state, t, f, x)?.norm_sqr())
}

/// Mean and variance of `X` for a freely moving Gaussian at time `t`, from
/// its first and second moments.
pub fn gaussian_moments(g: &GaussianSpec, t: f64, f: &FrameParams) -> (f64, f64) {
    let sp2 = 1.0 / (4.0 * g.sigma0 * g.sigma0);
    let v = t / g.m;
    let mean_x = g.x0 + g.k0 * v;
    let var_x = g.sigma0 * g.sigma0 + v * v * sp2;
    let cov = v * sp2;
    let mean = f.mu * mean_x + f.nu * g.k0;
    let var = f.mu * f.mu * var_x + 2.0 * f.mu * f.nu * cov + f.nu * f.nu * sp2;
    (mean, var)
}

/// Gaussian tomogram as a normal density in `X`.
pub fn gaussian_tomogram(g: &GaussianSpec, t: f64, f: &FrameParams, x: f64) -> Result<f64> {
    check_frame(f)?;
    g.validate()?;
    let (mean, var) = gaussian_moments(g, t, f);
    let d = x - mean;
    Ok((-d * d / (2.0 * var)).exp() / (2.0 * std::f64::consts::PI * var).sqrt())
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    use super::*;
    use crate::frames::frame_from_angle;
    use crate::states::{BoxSpec, OscSuperposition, ShutterSpec, Side, StateSpec};

    fn frame(mu: f64, nu: f64) -> FrameParams {
        FrameParams::new(mu, nu).unwrap()
    }

    fn gaussian(x0: f64, sigma0: f64, k0: f64) -> State {
        State::new(StateSpec::Gaussian(GaussianSpec::new(x0, sigma0, k0, 1.0).unwrap())).unwrap()
    }

    #[test]
    fn gaussian_diagonal_frame() {
        let s = FRAC_1_SQRT_2;
        let w = closed_form_tomogram(&gaussian(0.0, 1.0, 0.0), &frame(s, s), 0.0).unwrap();
        assert!((w - 0.504_626_504_404_032).abs() < 1e-12);
    }

    #[test]
    fn propagator_route_matches_moments_in_all_quadrants() {
        let st = gaussian(0.4, 0.7, -1.1);
        let g = *st.gaussian().unwrap();
        for &(mu, nu) in &[(0.8, 0.5), (-0.8, 0.5), (-0.3, -1.2), (1.4, -0.6), (2.0, 0.0), (0.0, -1.5)] {
            for &x in &[-2.0, -0.4, 0.3, 1.7] {
                let a = closed_form_tomogram(&st, &frame(mu, nu), x).unwrap();
                let b = gaussian_tomogram(&g, 0.0, &frame(mu, nu), x).unwrap();
                assert!((a - b).abs() < 1e-12, "({mu}, {nu}) {x}: {a} {b}");
            }
        }
    }

    #[test]
    fn shutter_on_the_classical_line() {
        let spec = ShutterSpec { x0: 0.3, k: Complex64::new(1.2, 0.0), side: Side::Left, m: 1.0 };
        let st = State::new(StateSpec::Shutter(spec)).unwrap();
        assert!(!st.is_normalized());
        for &(mu, nu) in &[(1.0, 0.5), (0.6, 2.0), (2.5, 0.1)] {
            let x = mu * (0.3 + 1.2 * nu / mu);
            let w = closed_form_tomogram(&st, &frame(mu, nu), x).unwrap();
            assert!((w - 0.25 / mu).abs() < 1e-13);
        }
    }

    #[test]
    fn plane_wave_momentum_axis_is_the_regular_part() {
        let spec = ShutterSpec { x0: 0.0, k: Complex64::new(1.0, 0.0), side: Side::Right, m: 1.0 };
        let st = State::new(StateSpec::Shutter(spec)).unwrap();
        for &x in &[-1.5, 0.3, 2.0] {
            let axis = closed_form_tomogram(&st, &frame(0.0, 1.0), x).unwrap();
            assert!((axis - 1.0 / (2.0 * PI * (1.0 - x).powi(2))).abs() < 1e-14);
            // nearby frames on the side away from the filled half-line average to
            // the regular part; on the other side they grow like 1/|mu|
            let mu = if x < 1.0 { 1e-3 } else { -1e-3 };
            let near: f64 = (0..200)
                .map(|i| closed_form_tomogram(&st, &frame(mu, 1.0), x + 1e-3 * i as f64 / 200.0).unwrap())
                .sum();
            assert!((near / 200.0 - axis).abs() < 0.05 * axis, "{x}: {} {axis}", near / 200.0);
            assert!(closed_form_tomogram(&st, &frame(-mu, 1.0), x).unwrap() > 100.0);
        }
        assert!(closed_form_tomogram(&st, &frame(0.0, 1.0), 1.0).is_err());
    }

    #[test]
    fn momentum_limit_mean() {
        let st = gaussian(0.0, 1.0, 1.0);
        let f = frame(0.0, 1.0);
        let cfg = crate::quad::QuadConfig::default();
        let mean = crate::quad::integrate_real(|x| x * limit_tomogram(&st, &f, x).unwrap(), -12.0, 14.0, &[1.0], &cfg)
            .unwrap();
        assert!((mean - 1.0).abs() < 1e-10);
    }

    #[test]
    fn limits() {
        let st = gaussian(0.0, 1.0, 0.0);
        let w = limit_tomogram(&st, &frame(1.0, 0.0), 0.0).unwrap();
        assert!((w - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
        let skew = gaussian(0.5, 0.8, 0.3);
        for &x in &[-1.0, 0.2, 0.9] {
            let a = limit_tomogram(&skew, &frame(-1.3, 0.0), x).unwrap();
            let b = limit_tomogram(&skew, &frame(1.3, 0.0), -x).unwrap();
            assert_eq!(a, b);
        }
        assert!(limit_tomogram(&st, &frame(1.0, 1.0), 0.0).is_err());
        let degenerate = FrameParams { mu: 0.0, nu: 0.0, s: 1.0, theta: 0.0 };
        assert!(matches!(closed_form_tomogram(&st, &degenerate, 0.0), Err(Error::DegenerateFrame { .. })));
    }

    #[test]
    fn guard_band_is_continuous() {
        let st =
            State::new(StateSpec::Box(BoxSpec { a: -1.0, b: 1.0, kappa: Complex64::new(0.5, 0.1), m: 1.0 })).unwrap();
        for &x in &[-0.5, 0.2] {
            let on = closed_form_tomogram(&st, &frame(1.0, 0.0), x).unwrap();
            let near = closed_form_tomogram(&st, &frame(1.0, 2e-8), x).unwrap();
            assert!((on - near).abs() < 1e-3, "{on} {near}");
        }
    }

    #[test]
    fn oscillator_closed_form_matches_extension() {
        for n in 0..4 {
            let st = State::new(StateSpec::Oscillator(OscSuperposition::eigenstate(n))).unwrap();
            let plane = extend_by_symmetry(|x, t| st.forward(x, t), |x, t| st.backward(x, t), 1.0);
            for &(mu, nu) in &[(0.6, 0.8), (-0.6, 0.8), (-1.1, -0.3), (0.4, -1.7)] {
                let a = closed_form_tomogram(&st, &frame(mu, nu), 0.7).unwrap();
                let b = plane.tomogram(&frame(mu, nu), 0.7).unwrap();
                assert!((a - b).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn eigenstates_do_not_change() {
        let st = State::new(StateSpec::Oscillator(OscSuperposition::eigenstate(2))).unwrap();
        let f = frame_from_angle(0.9, 1.0).unwrap();
        for &t in &[0.3, 2.0, 11.0] {
            let a = time_dependent_tomogram(&st, t, &f, 0.4).unwrap();
            let b = closed_form_tomogram(&st, &f, 0.4).unwrap();
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn half_period_reflects_two_mode_superposition() {
        let c = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let st = State::new(StateSpec::Oscillator(OscSuperposition::new([(0, c), (1, c)]).unwrap())).unwrap();
        let f = frame(0.8, 0.6);
        for &x in &[-1.0, 0.3, 0.8] {
            let a = time_dependent_tomogram(&st, PI, &f, x).unwrap();
            let b = closed_form_tomogram(&st, &f, -x).unwrap();
            assert!((a - b).abs() < 1e-13);
        }
        // interference term changes sign
        let w0 = closed_form_tomogram(&st, &f, 0.8).unwrap();
        let wpi = time_dependent_tomogram(&st, PI, &f, 0.8).unwrap();
        assert!((w0 - wpi).abs() > 0.1);
    }

    #[test]
    fn free_gaussian_time_shift() {
        let st = gaussian(0.2, 0.9, 0.7);
        let g = *st.gaussian().unwrap();
        let f = frame(1.0, 0.2);
        for &x in &[-1.0, 0.0, 0.6, 1.5] {
            let a = time_dependent_tomogram(&st, 0.7, &f, x).unwrap();
            let b = gaussian_tomogram(&g, 0.7, &f, x).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}
