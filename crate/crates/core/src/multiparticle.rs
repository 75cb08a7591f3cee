//! Tomograms of several distinguishable particles, each seen in its own frame.
//!
//! For `|Psi> = sum_l a_l |psi_l^(1)> ... |psi_l^(N)>` the joint tomogram is
//! `|sum_l a_l prod_s A_l^(s)(X_s)|^2`, with `A` the single-particle
//! transformed amplitude (which already carries `1/sqrt|mu_s|`).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::FrameParams;
use crate::infotheory::BipartiteSpec;
use crate::phasespace::support;
use crate::quad::{integrate_panels, QuadConfig};
use crate::states::{State, StateSpec};
use crate::tomography::{amplitude_at_time, time_dependent_tomogram};

/// Largest accepted `| <Psi|Psi> - 1 |` when overlaps come from quadrature.
pub const NORM_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductTerm {
    pub amplitude: Complex64,
    pub factors: Vec<StateSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NParticleSpec {
    pub terms: Vec<ProductTerm>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NParticleState {
    terms: Vec<(Complex64, Vec<State>)>,
}

/// `<a|b>`. Exact for two oscillator superpositions, by quadrature otherwise.
pub fn overlap(a: &State, b: &State) -> Result<Complex64> {
    if !a.is_normalized() || !b.is_normalized() {
        return Err(Error::Domain("overlap of a plane-wave state".into()));
    }
    if let (Some(x), Some(y)) = (a.superposition(), b.superposition()) {
        return Ok(x.coeffs.iter().filter_map(|(n, c)| y.coeffs.get(n).map(|d| c.conj() * d)).sum());
    }
    let (pa, pb) = (a.position_profile(), b.position_profile());
    let (la, ha) = support(&pa)?;
    let (lb, hb) = support(&pb)?;
    let (lo, hi) = (la.max(lb), ha.min(hb));
    if !(lo < hi) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let n = ((hi - lo) * (pa.wavenumber + pb.wavenumber + 1.0) / PI).ceil().max(1.0) as usize;
    let mut breaks: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    breaks.extend(pa.breakpoints.iter().chain(&pb.breakpoints).filter(|&&x| lo < x && x < hi));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut failure = None;
    let value = integrate_panels(
        |x| match (a.initial(x), b.initial(x)) {
            (Ok(u), Ok(v)) => u.conj() * v,
            (Err(e), _) | (_, Err(e)) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        &breaks,
        &QuadConfig::with_tol(1e-13),
    )?
    .value;
    match failure {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

impl NParticleState {
    pub fn new(spec: NParticleSpec) -> Result<Self> {
        let mut terms = Vec::with_capacity(spec.terms.len());
        for t in spec.terms {
            terms.push((t.amplitude, t.factors.into_iter().map(State::new).collect::<Result<Vec<_>>>()?));
        }
        let s = NParticleState { terms };
        s.validate()?;
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: NParticleSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(format!("n-particle spec: {e}")))?;
        Self::new(spec)
    }

    /// The single product `psi_1 ... psi_N`.
    pub fn product(factors: Vec<State>) -> Result<Self> {
        let s = NParticleState { terms: vec![(Complex64::new(1.0, 0.0), factors)] };
        s.validate()?;
        Ok(s)
    }

    /// `a|j k> + b|l m>` from a bipartite spec that names all four states.
    pub fn from_bipartite(bp: &BipartiteSpec) -> Result<Self> {
        let f = bp.factors.as_ref().ok_or_else(|| Error::InvalidSpec("bipartite spec has no factors".into()))?;
        let (k, m) = match (&f.k, &f.m) {
            (Some(k), Some(m)) => (k, m),
            _ => return Err(Error::InvalidSpec("the two-particle state needs factors k and m".into())),
        };
        let st = |s: &StateSpec| State::new(s.clone());
        let s = NParticleState { terms: vec![(bp.a, vec![st(&f.j)?, st(k)?]), (bp.b, vec![st(&f.l)?, st(m)?])] };
        s.validate()?;
        Ok(s)
    }

    pub fn particles(&self) -> usize {
        self.terms[0].1.len()
    }

    pub fn terms(&self) -> &[(Complex64, Vec<State>)] {
        &self.terms
    }

    /// `sum_{l l'} a_l* a_l' prod_s <psi_l^(s)|psi_l'^(s)>`.
    pub fn norm_sqr(&self) -> Result<f64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (a, fa) in &self.terms {
            for (b, fb) in &self.terms {
                let mut prod = a.conj() * b;
                for (x, y) in fa.iter().zip(fb) {
                    prod *= overlap(x, y)?;
                }
                total += prod;
            }
        }
        Ok(total.re)
    }

    fn validate(&self) -> Result<()> {
        let n = match self.terms.first() {
            Some((_, f)) if !f.is_empty() => f.len(),
            _ => return Err(Error::InvalidSpec("state needs at least one term with one particle".into())),
        };
        if self.terms.iter().any(|(_, f)| f.len() != n) {
            return Err(Error::InvalidSpec("every term must have the same number of particles".into()));
        }
        if self.terms.iter().any(|(a, _)| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidSpec("term amplitudes must be finite".into()));
        }
        if let Some(st) = self.terms.iter().flat_map(|(_, f)| f).find(|s| !s.is_normalized()) {
            return Err(Error::InvalidSpec(format!("factor {} is not normalizable", st.spec().type_name())));
        }
        let norm = self.norm_sqr()?;
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidSpec(format!("state has <Psi|Psi> = {norm}, not 1")));
        }
        Ok(())
    }
}

fn check_lengths(n: usize, frames: &[FrameParams], xs: &[f64]) -> Result<()> {
    if frames.len() != n || xs.len() != n {
        return Err(Error::InvalidSpec(format!(
            "{n} particles need {n} frames and {n} X values, got {} and {}",
            frames.len(),
            xs.len()
        )));
    }
    Ok(())
}

/// `|sum_l a_l prod_s A_l^(s)(X_s | mu_s, nu_s)|^2` at time `t`. Factors on an
/// axis are evaluated through their limits.
pub fn nparticle_tomogram(state: &NParticleState, t: f64, frames: &[FrameParams], xs: &[f64]) -> Result<f64> {
    check_lengths(state.particles(), frames, xs)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for (a, factors) in &state.terms {
        let mut prod = *a;
        for ((st, f), &x) in factors.iter().zip(frames).zip(xs) {
            prod *= amplitude_at_time(st, t, f, x)?;
        }
        sum += prod;
    }
    Ok(sum.norm_sqr())
}

/// `prod_s W^(s)(X_s)` for a single product term.
pub fn product_tomogram(state: &NParticleState, t: f64, frames: &[FrameParams], xs: &[f64]) -> Result<f64> {
    let [(a, factors)] = state.terms.as_slice() else {
        return Err(Error::InvalidSpec(format!("product tomogram needs one term, got {}", state.terms.len())));
    };
    check_lengths(factors.len(), frames, xs)?;
    let mut w = a.norm_sqr();
    for ((st, f), &x) in factors.iter().zip(frames).zip(xs) {
        w *= time_dependent_tomogram(st, t, f, x)?;
    }
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exchange {
    Symmetric,
    Antisymmetric,
}

impl Exchange {
    pub fn sign(self) -> f64 {
        match self {
            Exchange::Symmetric => 1.0,
            Exchange::Antisymmetric => -1.0,
        }
    }
}

/// Tomogram of `(|j k> +- |k j>) / sqrt(2 (1 +- |<j|k>|^2))`:
/// `[W_j^(1) W_k^(2) + W_k^(1) W_j^(2) +- 2 Re(A_j^(1) A_k^(2) (A_k^(1) A_j^(2))*)] / (2 (1 +- |<j|k>|^2))`.
pub fn symmetrized_tomogram(
    j: &State,
    k: &State,
    exchange: Exchange,
    t: f64,
    frames: [FrameParams; 2],
    xs: [f64; 2],
) -> Result<f64> {
    let sign = exchange.sign();
    let norm = 2.0 * (1.0 + sign * overlap(j, k)?.norm_sqr());
    if norm < 1e-12 {
        return Err(Error::InvalidSpec("antisymmetrizing a state with itself gives the null vector".into()));
    }
    let amp = |s: &State, i: usize| amplitude_at_time(s, t, &frames[i], xs[i]);
    let (j1, k2, k1, j2) = (amp(j, 0)?, amp(k, 1)?, amp(k, 0)?, amp(j, 1)?);
    let direct = j1.norm_sqr() * k2.norm_sqr() + k1.norm_sqr() * j2.norm_sqr();
    let interference = 2.0 * (j1 * k2 * (k1 * j2).conj()).re;
    Ok((direct + sign * interference) / norm)
}

/// Tomogram of particle 1 after tracing out particle 2:
/// `|a|^2 W_j + |b|^2 W_l + 2 Re(a b* <m|k> A_j A_l*)`.
pub fn reduced_tomogram(bp: &BipartiteSpec, t: f64, f: &FrameParams, x: f64) -> Result<f64> {
    bp.validate()?;
    let factors = bp.factors.as_ref().ok_or_else(|| {
        Error::InvalidSpec("the reduced tomogram needs the single-particle states j and l in `factors`".into())
    })?;
    let aj = amplitude_at_time(&State::new(factors.j.clone())?, t, f, x)?;
    let al = amplitude_at_time(&State::new(factors.l.clone())?, t, f, x)?;
    let cross = bp.a * bp.b.conj() * bp.c_km.conj() * aj * al.conj();
    Ok(bp.a.norm_sqr() * aj.norm_sqr() + bp.b.norm_sqr() * al.norm_sqr() + 2.0 * cross.re)
}
