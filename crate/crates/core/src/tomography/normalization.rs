//! `int W(X|mu, nu) dX` over the whole line.
//!
//! Decaying states are integrated on a mapped infinite interval. Truncated
//! waves have tomograms with `1/X^2` tails: each jump `J_e` of the initial
//! amplitude gives `|psi(p)|^2 ~ |J_e|^2 / (2 pi p^2)` at large momentum, so
//! beyond `|X| = L` the tomogram carries `|nu| sum|J_e|^2 / (pi L)`. The
//! integral is taken over `[-L, L]` and that tail is added.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{closed_form_tomogram, snapshot};
use crate::error::{Error, Result};
use crate::frames::FrameParams;
use crate::quad::{integrate_line, integrate_panels, QuadConfig};
use crate::states::State;

pub fn tomogram_norm(state: &State, t: f64, f: &FrameParams) -> Result<f64> {
    tomogram_norm_with(state, t, f, &QuadConfig::with_tol(1e-9))
}

pub fn tomogram_norm_with(state: &State, t: f64, f: &FrameParams, cfg: &QuadConfig) -> Result<f64> {
    let (st, frame) = snapshot(state, t, f)?;
    if !st.is_normalized() {
        return Err(Error::Domain(format!(
            "the {} state is a plane wave; its tomogram has no finite integral",
            st.spec().type_name()
        )));
    }
    let mut failure = None;
    let mut w = |x: f64| match closed_form_tomogram(&st, &frame, x) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    let (mu, nu) = (frame.mu, frame.nu);
    let value = if let Some(g) = st.gaussian() {
        let (mean, var) = super::gaussian_moments(g, 0.0, &frame);
        integrate_line(&mut w, mean, var.sqrt(), &[], cfg)
    } else if let Some(o) = st.superposition() {
        let reach = (mu.hypot(nu)) * (2.0 * o.max_mode() as f64 + 1.0).sqrt();
        integrate_line(&mut w, 0.0, reach, &[], cfg)
    } else {
        truncated_wave_norm(&st, &frame, &mut w, cfg)
    };
    if let Some(e) = failure {
        return Err(e);
    }
    value
}

fn truncated_wave_norm(st: &State, f: &FrameParams, w: &mut dyn FnMut(f64) -> f64, cfg: &QuadConfig) -> Result<f64> {
    let wave = st.piecewise().ok_or_else(|| Error::Domain("expected a truncated wave".into()))?;
    let (mu, nu) = (f.mu.abs(), f.nu.abs());
    let jumps = wave.edge_jumps();
    let edges: Vec<f64> = jumps.iter().map(|&(e, _)| e).collect();
    let extent = edges.iter().fold(0.0f64, |a, e| a.max(e.abs()));
    let span = edges.last().unwrap_or(&0.0) - edges.first().unwrap_or(&0.0);
    let (left, right) = wave.tails();
    // exponential tails of complex-k half-lines
    let decay = left.iter().chain(&right).map(|(_, k)| 20.0 / k.im.abs()).fold(0.0, f64::max);
    let kmax = wave.max_wavenumber();
    let l = 800.0 * (nu * (1.0 + kmax) + mu * (1.0 + extent)) + mu * decay;

    let h = if span > 0.0 { PI * nu / span } else { f64::INFINITY }.clamp(l / 20_000.0, l / 100.0);
    let count = (2.0 * l / h).ceil() as usize;
    let mut breaks: Vec<f64> = (0..=count).map(|i| -l + 2.0 * l * i as f64 / count as f64).collect();
    for p in &wave.pieces {
        for &e in &edges {
            breaks.push(f.mu * e);
            breaks.push(f.mu * e + f.nu * p.kappa.re);
        }
    }
    breaks.retain(|b| b.abs() < l);
    breaks.extend([-l, l]);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let body = integrate_panels(|x| Complex64::new(w(x), 0.0), &breaks, cfg)?.value.re;
    let tail = nu * jumps.iter().map(|(_, j)| j.norm_sqr()).sum::<f64>() / (PI * l);
    Ok(body + tail)
}
