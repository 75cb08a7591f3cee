//! Wigner functions and their line integrals.
//!
//! The tomogram is the Radon transform of the Wigner function,
//! `W(X|mu, nu) = int int W(q, p) delta(X - mu q - nu p) dq dp`. With the
//! line written as `(q, p) = c + s d`, `c = X (mu, nu) / r^2`,
//! `d = (-nu, mu) / r`, `r = |(mu, nu)|`, the delta function leaves
//! `(1/r) int W(c + s d) ds`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::FrameParams;
use crate::parallel::map_indices;
use crate::quad::{integrate_panels, QuadConfig};
use crate::states::{Dynamics, OracleProfile, Side, State};

/// Wigner function sampled on a rectangular grid; `values[i][j]` belongs to
/// `q_grid[i]`, `p_grid[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerField {
    pub q_grid: Vec<f64>,
    pub p_grid: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl WignerField {
    pub fn from_fn<F>(q_grid: &[f64], p_grid: &[f64], jobs: Option<usize>, w: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Result<f64> + Sync,
    {
        for g in [q_grid, p_grid] {
            if g.len() < 2 || g.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(Error::InvalidSpec("Wigner grids need at least 2 increasing points".into()));
            }
        }
        let values = map_indices(q_grid.len(), jobs, |i| p_grid.iter().map(|&p| w(q_grid[i], p)).collect())?;
        Ok(WignerField { q_grid: q_grid.to_vec(), p_grid: p_grid.to_vec(), values })
    }

    /// Trapezoid approximation of `int int W dq dp`.
    pub fn total(&self) -> f64 {
        let weights = |g: &[f64]| -> Vec<f64> {
            (0..g.len())
                .map(|i| {
                    let left = if i > 0 { g[i] - g[i - 1] } else { 0.0 };
                    let right = if i + 1 < g.len() { g[i + 1] - g[i] } else { 0.0 };
                    0.5 * (left + right)
                })
                .collect()
        };
        let (wq, wp) = (weights(&self.q_grid), weights(&self.p_grid));
        self.values.iter().zip(&wq).map(|(row, a)| a * row.iter().zip(&wp).map(|(v, b)| v * b).sum::<f64>()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Bicubic (Catmull-Rom) interpolation; `None` outside the grid.
    pub fn interpolate(&self, q: f64, p: f64) -> Option<f64> {
        let (i, tq) = locate(&self.q_grid, q)?;
        let (j, tp) = locate(&self.p_grid, p)?;
        let (nq, np) = (self.q_grid.len() as isize, self.p_grid.len() as isize);
        let at = |a: isize, b: isize| self.values[a.clamp(0, nq - 1) as usize][b.clamp(0, np - 1) as usize];
        let mut rows = [0.0; 4];
        for (r, di) in (-1..=2).enumerate() {
            let a = i as isize + di;
            rows[r] =
                cubic([at(a, j as isize - 1), at(a, j as isize), at(a, j as isize + 1), at(a, j as isize + 2)], tp);
        }
        Some(cubic(rows, tq))
    }
}

/// Cell index and fractional offset, assuming a uniform grid.
fn locate(grid: &[f64], v: f64) -> Option<(usize, f64)> {
    let (lo, hi) = (grid[0], grid[grid.len() - 1]);
    if !(v >= lo && v <= hi) {
        return None;
    }
    let h = (hi - lo) / (grid.len() - 1) as f64;
    let i = (((v - lo) / h).floor() as usize).min(grid.len() - 2);
    Some((i, (v - grid[i]) / h))
}

fn cubic(y: [f64; 4], t: f64) -> f64 {
    let a = -0.5 * y[0] + 1.5 * y[1] - 1.5 * y[2] + 0.5 * y[3];
    let b = y[0] - 2.5 * y[1] + 2.0 * y[2] - 0.5 * y[3];
    let c = -0.5 * y[0] + 0.5 * y[2];
    ((a * t + b) * t + c) * t + y[1]
}

/// Interval outside of which the amplitude is below `e^{-40}` of its size,
/// or an error for plane waves that never decay.
pub(crate) fn support(profile: &OracleProfile) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = profile.window;
    for &(_, k) in &profile.left_tail {
        if !(k.im < 0.0) {
            return Err(Error::Domain("Wigner function of a non-decaying plane wave".into()));
        }
        lo = lo.min(profile.window.0 - 40.0 / k.im.abs());
    }
    for &(_, k) in &profile.right_tail {
        if !(k.im > 0.0) {
            return Err(Error::Domain("Wigner function of a non-decaying plane wave".into()));
        }
        hi = hi.max(profile.window.1 + 40.0 / k.im);
    }
    Ok((lo, hi))
}

/// `(1/2 pi) int psi(q - xi/2) conj(psi(q + xi/2)) e^{i p xi} dxi`.
pub fn wigner_numeric<F>(psi: F, profile: &OracleProfile, q: f64, p: f64, cfg: &QuadConfig) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let (lo, hi) = support(profile)?;
    let a = (2.0 * (lo - q)).max(2.0 * (q - hi));
    let b = (2.0 * (hi - q)).min(2.0 * (q - lo));
    if !(a < b) {
        return Ok(0.0);
    }
    let rate = p.abs() + profile.wavenumber + 1.0;
    let n = ((b - a) * rate / PI).ceil().max(1.0) as usize;
    let mut breaks: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
    for &e in &profile.breakpoints {
        breaks.extend([2.0 * (e - q), 2.0 * (q - e)].into_iter().filter(|&x| x > a && x < b));
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut failure = None;
    let v = integrate_panels(
        |xi| match (psi(q - 0.5 * xi), psi(q + 0.5 * xi)) {
            (Ok(u), Ok(w)) => u * w.conj() * Complex64::from_polar(1.0, p * xi),
            (Err(e), _) | (_, Err(e)) => {
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
    Ok(v?.value.re / (2.0 * PI))
}

/// Wigner function of a state's initial amplitude.
pub fn wigner(state: &State, q: f64, p: f64, cfg: &QuadConfig) -> Result<f64> {
    wigner_numeric(|x| state.initial(x), &state.position_profile(), q, p, cfg)
}

pub fn wigner_field(state: &State, q_grid: &[f64], p_grid: &[f64], jobs: Option<usize>) -> Result<WignerField> {
    wigner_field_at_time(state, 0.0, q_grid, p_grid, jobs, &QuadConfig::with_tol(1e-11))
}

/// Wigner function after time `t`. Free motion shears phase space,
/// `W_t(q, p) = W_0(q - p t / m, p)`; stationary states do not change and
/// oscillator superpositions are evolved mode by mode.
pub fn wigner_at_time(state: &State, t: f64, q: f64, p: f64, cfg: &QuadConfig) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::InvalidSpec(format!("time {t} is not finite")));
    }
    match state.dynamics() {
        _ if t == 0.0 => wigner(state, q, p, cfg),
        Dynamics::Free => wigner(state, q - p * t / state.mass(), p, cfg),
        Dynamics::Stationary => wigner(state, q, p, cfg),
        Dynamics::Oscillator => wigner(&state.oscillator_at(t), q, p, cfg),
    }
}

pub fn wigner_field_at_time(
    state: &State,
    t: f64,
    q_grid: &[f64],
    p_grid: &[f64],
    jobs: Option<usize>,
    cfg: &QuadConfig,
) -> Result<WignerField> {
    WignerField::from_fn(q_grid, p_grid, jobs, |q, p| wigner_at_time(state, t, q, p, cfg))
}

/// `sin(x)/x`.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Closed-form Wigner function of the normalized shutter
/// `sqrt(2 k_i) theta(+-x) e^{i(k_r +- i k_i)x}`:
/// `W = +-2 k_i theta(+-q) e^{-+2 k_i q} sin(2q(k_r - p)) / (pi (k_r - p))`.
/// `Side::Right` is the upper sign. At `p = k_r` the limit `2q` of
/// `sin(2q u)/u` is used.
pub fn wigner_shutter(k_r: f64, k_i: f64, side: Side, q: f64, p: f64) -> Result<f64> {
    if !(k_i > 0.0) || !k_i.is_finite() || !k_r.is_finite() {
        return Err(Error::InvalidSpec(format!("shutter Wigner function needs k_i > 0, got {k_i}")));
    }
    let sign = match side {
        Side::Right => 1.0,
        Side::Left => -1.0,
    };
    if sign * q <= 0.0 {
        return Ok(0.0);
    }
    let u = k_r - p;
    Ok(sign * 2.0 * k_i * (-sign * 2.0 * k_i * q).exp() * 2.0 * q * sinc(2.0 * q * u) / PI)
}

/// `int W(q, p) dp` over `p` in `centre +- half_width`, with panels of at
/// most `max_panel`. For truncated waves the Wigner function falls off only
/// like `1/p`; a symmetric window whose half-width is a half-odd multiple of
/// the oscillation period leaves an `O(1/half_width^2)` remainder.
pub fn position_marginal<F>(w: F, centre: f64, half_width: f64, max_panel: f64, cfg: &QuadConfig) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let n = (2.0 * half_width / max_panel).ceil().max(2.0) as usize;
    let breaks: Vec<f64> = (0..=n).map(|i| centre - half_width + 2.0 * half_width * i as f64 / n as f64).collect();
    let mut failure = None;
    let v = integrate_panels(
        |p| match w(p) {
            Ok(v) => Complex64::new(v, 0.0),
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
    Ok(v?.value.re)
}

/// Marginal of [`wigner_shutter`]; its exact value is `2 k_i theta(+-q) e^{-+2 k_i q}`.
pub fn shutter_position_marginal(k_r: f64, k_i: f64, side: Side, q: f64, cfg: &QuadConfig) -> Result<f64> {
    if q == 0.0 {
        return Ok(0.0);
    }
    // period of sin(2 q u) is pi/|q|; stop at a quarter period past a whole number
    let period = PI / q.abs();
    let half_width = (4000.0 / period).ceil() * period + 0.25 * period;
    position_marginal(|p| wigner_shutter(k_r, k_i, side, q, p), k_r, half_width, 0.25 * period, cfg)
}

/// Foot point, unit direction and `|(mu, nu)|` of the line `mu q + nu p = X`.
type Line = ((f64, f64), (f64, f64), f64);

fn line(f: &FrameParams, x: f64) -> Result<Line> {
    let r = f.mu.hypot(f.nu);
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::DegenerateFrame { mu: f.mu, nu: f.nu });
    }
    Ok(((x * f.mu / (r * r), x * f.nu / (r * r)), (-f.nu / r, f.mu / r), r))
}

/// `(1/r) int W(c + s d) ds` over `s` in `range`, split into `panels` pieces.
pub fn radon_line_integral<F>(
    w: F,
    f: &FrameParams,
    x: f64,
    range: (f64, f64),
    panels: usize,
    cfg: &QuadConfig,
) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let ((cq, cp), (dq, dp), r) = line(f, x)?;
    let n = panels.max(1);
    let breaks: Vec<f64> = (0..=n).map(|i| range.0 + (range.1 - range.0) * i as f64 / n as f64).collect();
    let mut failure = None;
    let integral = integrate_panels(
        |s| match w(cq + s * dq, cp + s * dp) {
            Ok(v) => Complex64::new(v, 0.0),
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
    Ok(integral?.value.re / r)
}

/// Line integral of a sampled Wigner function along `X = mu q + nu p`,
/// with bicubic interpolation and composite Simpson steps of half a grid
/// cell. Fails when the line leaves the grid where the field is not small.
pub fn radon_tomogram_check(field: &WignerField, f: &FrameParams, x: f64) -> Result<f64> {
    let ((cq, cp), (dq, dp), r) = line(f, x)?;
    let (q0, q1) = (field.q_grid[0], field.q_grid[field.q_grid.len() - 1]);
    let (p0, p1) = (field.p_grid[0], field.p_grid[field.p_grid.len() - 1]);
    // clip s to the rectangle
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (c, d, a, b) in [(cq, dq, q0, q1), (cp, dp, p0, p1)] {
        if d.abs() < 1e-15 {
            if c < a || c > b {
                return Err(Error::Domain(format!("line X = {x} misses the Wigner grid")));
            }
        } else {
            let (s1, s2) = ((a - c) / d, (b - c) / d);
            lo = lo.max(s1.min(s2));
            hi = hi.min(s1.max(s2));
        }
    }
    if !(lo < hi) {
        return Err(Error::Domain(format!("line X = {x} misses the Wigner grid")));
    }
    // stay a hair inside so both ends interpolate
    let shrink = 1e-12 * (hi - lo);
    let (lo, hi) = (lo + shrink, hi - shrink);
    let at = |s: f64| field.interpolate(cq + s * dq, cp + s * dp).unwrap_or(0.0);
    let edge = at(lo).abs().max(at(hi).abs());
    let scale = field.max_abs();
    if edge > 1e-4 * scale {
        return Err(Error::Domain(format!("line X = {x} leaves the grid where |W| = {edge:.3e} (max {scale:.3e})")));
    }
    let cell = (field.q_grid[1] - field.q_grid[0]).min(field.p_grid[1] - field.p_grid[0]);
    let n = (((hi - lo) / (0.5 * cell)).ceil() as usize).max(2).next_multiple_of(2);
    let h = (hi - lo) / n as f64;
    let mut sum = at(lo) + at(hi);
    for k in 1..n {
        sum += if k % 2 == 1 { 4.0 } else { 2.0 } * at(lo + h * k as f64);
    }
    Ok(sum * h / 3.0 / r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::LinearGrid;
    use crate::states::{GaussianSpec, OscSuperposition, ShutterSpec, StateSpec};
    use crate::tomography::closed_form_tomogram;

    fn cfg() -> QuadConfig {
        QuadConfig::with_tol(1e-11)
    }

    fn gaussian() -> State {
        State::new(StateSpec::Gaussian(GaussianSpec::new(0.0, 1.0, 0.0, 1.0).unwrap())).unwrap()
    }

    #[test]
    fn gaussian_peak_and_marginal() {
        let st = gaussian();
        assert!((wigner(&st, 0.0, 0.0, &cfg()).unwrap() - 1.0 / PI).abs() < 1e-12);
        let m = position_marginal(|p| wigner(&st, 0.5, p, &cfg()), 0.0, 9.0, 1.0, &cfg()).unwrap();
        assert!((m - st.initial(0.5).unwrap().norm_sqr()).abs() < 1e-10);
    }

    #[test]
    fn evolved_wigner_projects_to_evolved_tomogram() {
        use crate::frames::frame_from_angle;
        use crate::tomography::time_dependent_tomogram;
        let moving = State::new(StateSpec::Gaussian(GaussianSpec::new(0.4, 0.8, 1.1, 1.3).unwrap())).unwrap();
        let c = num_complex::Complex64::new(0.6, 0.0);
        let osc = OscSuperposition::new([(0, c), (2, num_complex::Complex64::new(0.0, 0.8))]).unwrap();
        let osc = State::new(StateSpec::Oscillator(osc)).unwrap();
        let f = frame_from_angle(0.9, 1.0).unwrap();
        for (st, t) in [(&moving, 0.7), (&osc, 1.3)] {
            for x in [-0.5, 0.8] {
                let radon =
                    radon_line_integral(|q, p| wigner_at_time(st, t, q, p, &cfg()), &f, x, (-10.0, 10.0), 40, &cfg())
                        .unwrap();
                let w = time_dependent_tomogram(st, t, &f, x).unwrap();
                assert!((radon - w).abs() < 1e-8, "t={t} X={x}: {radon} {w}");
            }
        }
    }

    #[test]
    fn first_excited_state_is_negative_at_origin() {
        let st = State::new(StateSpec::Oscillator(OscSuperposition::eigenstate(1))).unwrap();
        assert!((wigner(&st, 0.0, 0.0, &cfg()).unwrap() + 1.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn shutter_formula() {
        assert_eq!(wigner_shutter(1.0, 0.05, Side::Right, -0.3, 0.2).unwrap(), 0.0);
        let v = wigner_shutter(1.0, 0.05, Side::Right, 1.0, 1.0).unwrap();
        assert!((v - 0.1 * (-0.1f64).exp() * 2.0 / PI).abs() < 1e-15);
        assert!((v - 0.057_60).abs() < 1e-5);
        let near = wigner_shutter(1.0, 0.05, Side::Right, 1.0, 1.0 + 1e-9).unwrap();
        assert!((near - v).abs() < 1e-12);
        assert!(wigner_shutter(1.0, 0.0, Side::Right, 1.0, 1.0).is_err());
    }

    #[test]
    fn shutter_formula_matches_quadrature() {
        // the upper sign is a right shutter with Im k > 0, the lower a left one with Im k < 0
        for (side, k) in [(Side::Right, Complex64::new(1.0, 0.05)), (Side::Left, Complex64::new(1.0, -0.05))] {
            let st = State::new(StateSpec::Shutter(ShutterSpec { x0: 0.0, k, side, m: 1.0 })).unwrap();
            for &(q, p) in &[(0.7, 0.2), (-0.7, 0.2), (2.5, 1.3), (-4.0, 0.9), (-1.0, -2.0)] {
                let a = wigner(&st, q, p, &cfg()).unwrap();
                let b = wigner_shutter(1.0, 0.05, side, q, p).unwrap();
                assert!((a - b).abs() < 1e-10, "{side:?} ({q}, {p}): {a} {b}");
            }
        }
    }

    #[test]
    fn shutter_marginal() {
        let m = shutter_position_marginal(1.0, 0.05, Side::Right, 0.3, &cfg()).unwrap();
        assert!((m - 0.1 * (-0.03f64).exp()).abs() < 1e-5, "{m}");
        assert_eq!(shutter_position_marginal(1.0, 0.05, Side::Right, -0.3, &cfg()).unwrap(), 0.0);
    }

    #[test]
    fn radon_of_gaussian_field() {
        let st = gaussian();
        let g = LinearGrid::new(-8.0, 8.0, 161).unwrap().points();
        let field = wigner_field(&st, &g, &g, None).unwrap();
        assert!((field.total() - 1.0).abs() < 1e-6);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let f = FrameParams::new(s, s).unwrap();
        assert!((radon_tomogram_check(&field, &f, 0.0).unwrap() - 0.504_63).abs() < 1e-3);
        let f = FrameParams::new(1.0, 0.0).unwrap();
        let v = radon_tomogram_check(&field, &f, 0.0).unwrap();
        assert!((v - st.initial(0.0).unwrap().norm_sqr()).abs() < 1e-4);
        let wide = FrameParams::new(3.0, 1.0).unwrap();
        assert!(radon_tomogram_check(&field, &wide, 40.0).is_err());
    }

    #[test]
    fn radon_of_shutter_formula() {
        // left shutter k = 1 - 0.05i: support q < 0, decay e^{0.1 q}
        let spec = ShutterSpec { x0: 0.0, k: Complex64::new(1.0, -0.05), side: Side::Left, m: 1.0 };
        let st = State::new(StateSpec::Shutter(spec)).unwrap();
        let f = FrameParams::new(1.0, 0.5).unwrap();
        let w = |q, p| wigner_shutter(1.0, 0.05, Side::Left, q, p);
        // along the line q = 0.8 - 0.447 s, so the support is s > 1.79 and
        // e^{0.1 q} is below 1e-8 by s = 450
        let v = radon_line_integral(w, &f, 1.0, (1.0, 450.0), 150_000, &QuadConfig::with_tol(1e-8)).unwrap();
        let exact = closed_form_tomogram(&st, &f, 1.0).unwrap();
        assert!((v - exact).abs() < 5e-3, "{v} {exact}");
    }
}
