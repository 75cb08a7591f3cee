//! States built from plane waves truncated to intervals.
//!
//! Each piece is `c e^{i kappa x}` on a half-line or a finite interval. Its free
//! evolution is a difference of shifted Moshinsky functions, so any sum of
//! pieces evolves in closed form.

use num_complex::Complex64;

use super::moshinsky::{shutter_solution, Side};
use crate::error::{Error, Result};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    /// `(-inf, b]`
    Below(f64),
    /// `[a, b]`
    Between(f64, f64),
    /// `[a, inf)`
    Above(f64),
}

impl Support {
    fn bounds(&self) -> (f64, f64) {
        match *self {
            Support::Below(b) => (f64::NEG_INFINITY, b),
            Support::Between(a, b) => (a, b),
            Support::Above(a) => (a, f64::INFINITY),
        }
    }

    /// 1 inside, 1/2 on an edge, 0 outside.
    fn weight(&self, x: f64) -> f64 {
        let (a, b) = self.bounds();
        if x > a && x < b {
            1.0
        } else if (x == a || x == b) && a < b {
            0.5
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWavePiece {
    pub c: Complex64,
    pub kappa: Complex64,
    pub support: Support,
}

impl PlaneWavePiece {
    fn conj(&self) -> Self {
        PlaneWavePiece { c: self.c.conj(), kappa: -self.kappa.conj(), support: self.support }
    }

    fn evolve(&self, x: f64, tau: f64, m: f64) -> Result<Complex64> {
        let k = self.kappa;
        let v = match self.support {
            Support::Below(b) => shutter_solution(Side::Left, x, tau, b, k, m)?,
            Support::Above(a) => shutter_solution(Side::Right, x, tau, a, k, m)?,
            Support::Between(a, b) => interval_evolution(branch_for(k), x, tau, a, b, k, m)?,
        };
        Ok(self.c * v)
    }
}

/// Shutter type whose Moshinsky functions stay bounded for `kappa`.
pub(crate) fn branch_for(kappa: Complex64) -> Side {
    if kappa.im <= 0.0 {
        Side::Left
    } else {
        Side::Right
    }
}

/// Free evolution of `e^{i kappa x}` on `[a, b]`, written as
/// `Psi_L(b) - Psi_L(a)` or `Psi_R(a) - Psi_R(b)`.
pub(crate) fn interval_evolution(
    side: Side,
    x: f64,
    tau: f64,
    a: f64,
    b: f64,
    kappa: Complex64,
    m: f64,
) -> Result<Complex64> {
    Ok(match side {
        Side::Left => {
            shutter_solution(Side::Left, x, tau, b, kappa, m)? - shutter_solution(Side::Left, x, tau, a, kappa, m)?
        }
        Side::Right => {
            shutter_solution(Side::Right, x, tau, a, kappa, m)? - shutter_solution(Side::Right, x, tau, b, kappa, m)?
        }
    })
}

/// `int_a^b e^{i beta x} dx` for `a` or `b` possibly infinite. `None` when
/// the integral diverges.
fn exp_integral(beta: Complex64, a: f64, b: f64) -> Option<Complex64> {
    if a >= b {
        return Some(Complex64::new(0.0, 0.0));
    }
    let ib = Complex64::i() * beta;
    if beta.norm() < 1e-300 {
        return (a.is_finite() && b.is_finite()).then(|| Complex64::new(b - a, 0.0));
    }
    // |e^{i beta x}| = e^{-Im(beta) x}
    let upper = if b.is_finite() {
        (ib * b).exp()
    } else if beta.im > 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        return None;
    };
    let lower = if a.is_finite() {
        (ib * a).exp()
    } else if beta.im < 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        return None;
    };
    Some((upper - lower) / ib)
}

/// Amplitude and wave number `(c, kappa)` of an unbounded piece.
pub type Tail = (Complex64, Complex64);

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePlaneWave {
    pub pieces: Vec<PlaneWavePiece>,
    pub mass: f64,
}

impl PiecewisePlaneWave {
    pub fn new(pieces: Vec<PlaneWavePiece>, mass: f64) -> Result<Self> {
        for p in &pieces {
            match p.support {
                Support::Below(_) if p.kappa.im > 0.0 => {
                    return Err(Error::InvalidSpec(format!("plane wave e^(i{}x) grows towards -inf", p.kappa)))
                }
                Support::Above(_) if p.kappa.im < 0.0 => {
                    return Err(Error::InvalidSpec(format!("plane wave e^(i{}x) grows towards +inf", p.kappa)))
                }
                Support::Between(a, b) if !(a < b) => {
                    return Err(Error::InvalidSpec(format!("interval [{a}, {b}] is empty")))
                }
                _ => {}
            }
        }
        Ok(PiecewisePlaneWave { pieces, mass })
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        for p in &mut self.pieces {
            p.c *= factor;
        }
        self
    }

    pub fn initial(&self, x: f64) -> Complex64 {
        self.pieces.iter().map(|p| p.c * p.support.weight(x) * (Complex64::i() * p.kappa * x).exp()).sum()
    }

    pub fn forward(&self, x: f64, tau: f64) -> Result<Complex64> {
        if tau == 0.0 {
            return Ok(self.initial(x));
        }
        if !(tau > 0.0) {
            return Err(Error::Domain(format!("free evolution needs tau >= 0, got {tau}")));
        }
        self.pieces.iter().map(|p| p.evolve(x, tau, self.mass)).sum()
    }

    /// The complex conjugate of the initial state.
    pub fn conj(&self) -> Self {
        PiecewisePlaneWave { pieces: self.pieces.iter().map(PlaneWavePiece::conj).collect(), mass: self.mass }
    }

    pub fn backward(&self, x: f64, tau: f64) -> Result<Complex64> {
        Ok(self.conj().forward(x, tau)?.conj())
    }

    /// `(2 pi)^{-1/2} int psi(x) e^{-ipx} dx`. For plane waves that do not
    /// decay this is the regular part of the transform, defined for `p` away
    /// from the real wave numbers.
    pub fn momentum(&self, p: f64) -> Result<Complex64> {
        let mut sum = Complex64::new(0.0, 0.0);
        for piece in &self.pieces {
            let (a, b) = piece.support.bounds();
            let beta = piece.kappa - p;
            let v = match exp_integral(beta, a, b) {
                Some(v) => v,
                // oscillating half-line: the Abel limit drops the boundary term at infinity
                None if beta.im == 0.0 && beta.re != 0.0 => {
                    let ib = Complex64::i() * beta;
                    let end = |x: f64| if x.is_finite() { (ib * x).exp() } else { Complex64::new(0.0, 0.0) };
                    (end(b) - end(a)) / ib
                }
                None => {
                    return Err(Error::Domain(format!(
                        "momentum amplitude of a plane wave has a delta peak at p = {p}"
                    )))
                }
            };
            sum += piece.c * v;
        }
        Ok(sum * FRAC_1_SQRT_2PI)
    }

    /// `int |psi|^2 dx` in closed form, `None` if infinite.
    pub fn norm_sqr(&self) -> Option<f64> {
        let mut total = Complex64::new(0.0, 0.0);
        for p in &self.pieces {
            let (a1, b1) = p.support.bounds();
            for q in &self.pieces {
                let (a2, b2) = q.support.bounds();
                let v = exp_integral(p.kappa - q.kappa.conj(), a1.max(a2), b1.min(b2))?;
                total += p.c * q.c.conj() * v;
            }
        }
        Some(total.re)
    }

    /// Every edge of every piece.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .pieces
            .iter()
            .flat_map(|p| match p.support {
                Support::Below(b) => vec![b],
                Support::Above(a) => vec![a],
                Support::Between(a, b) => vec![a, b],
            })
            .collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// `psi(e+) - psi(e-)` at every edge `e`.
    pub fn edge_jumps(&self) -> Vec<(f64, Complex64)> {
        self.breakpoints()
            .into_iter()
            .map(|e| {
                let mut jump = Complex64::new(0.0, 0.0);
                for p in &self.pieces {
                    let (a, b) = p.support.bounds();
                    let v = p.c * (Complex64::i() * p.kappa * e).exp();
                    if a == e {
                        jump += v;
                    }
                    if b == e {
                        jump -= v;
                    }
                }
                (e, jump)
            })
            .collect()
    }

    /// `(c, kappa)` of the pieces reaching `-inf` and `+inf`.
    pub fn tails(&self) -> (Vec<Tail>, Vec<Tail>) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for p in &self.pieces {
            match p.support {
                Support::Below(_) => left.push((p.c, p.kappa)),
                Support::Above(_) => right.push((p.c, p.kappa)),
                Support::Between(..) => {}
            }
        }
        (left, right)
    }

    /// Largest `|Re kappa|`, the fastest spatial oscillation.
    pub fn max_wavenumber(&self) -> f64 {
        self.pieces.iter().map(|p| p.kappa.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn interval_branches_agree_for_real_kappa() {
        let k = c(1.0, 0.0);
        let l = interval_evolution(Side::Left, 0.4, 0.6, -1.0, 1.0, k, 1.0).unwrap();
        let r = interval_evolution(Side::Right, 0.4, 0.6, -1.0, 1.0, k, 1.0).unwrap();
        assert!((l - r).norm() < 1e-12);
    }

    #[test]
    fn analytic_norm() {
        let box_ = PiecewisePlaneWave::new(
            vec![PlaneWavePiece { c: c(1.0, 0.0), kappa: c(2.0, 0.3), support: Support::Between(-1.0, 1.0) }],
            1.0,
        )
        .unwrap();
        let exact = ((0.6f64).exp() - (-0.6f64).exp()) / 0.6;
        assert!((box_.norm_sqr().unwrap() - exact).abs() < 1e-14);
        let plane = PiecewisePlaneWave::new(
            vec![PlaneWavePiece { c: c(1.0, 0.0), kappa: c(1.0, 0.0), support: Support::Below(0.0) }],
            1.0,
        )
        .unwrap();
        assert!(plane.norm_sqr().is_none());
        assert!(plane.momentum(1.0).is_err());
        let regular = plane.momentum(0.3).unwrap();
        assert!((regular - FRAC_1_SQRT_2PI / Complex64::new(0.0, 0.7)).norm() < 1e-15);
    }

    #[test]
    fn jumps_at_box_edges() {
        let w = PiecewisePlaneWave::new(
            vec![PlaneWavePiece { c: c(2.0, 0.0), kappa: c(0.0, 0.0), support: Support::Between(-1.0, 1.0) }],
            1.0,
        )
        .unwrap();
        assert_eq!(w.edge_jumps(), vec![(-1.0, c(2.0, 0.0)), (1.0, c(-2.0, 0.0))]);
    }

    #[test]
    fn growing_tails_rejected() {
        let bad = PlaneWavePiece { c: c(1.0, 0.0), kappa: c(1.0, 0.1), support: Support::Below(0.0) };
        assert!(PiecewisePlaneWave::new(vec![bad], 1.0).is_err());
    }

    #[test]
    fn momentum_of_shutter_is_lorentzian() {
        // theta(-x) e^{ikx}, k = 1 - 0.05i: |psi(p)|^2 = 1 / (2 pi ((p - 1)^2 + 0.0025))
        let s = PiecewisePlaneWave::new(
            vec![PlaneWavePiece { c: c(1.0, 0.0), kappa: c(1.0, -0.05), support: Support::Below(0.0) }],
            1.0,
        )
        .unwrap();
        for &p in &[0.0, 0.9, 1.0, 1.7] {
            let expected = 1.0 / (2.0 * std::f64::consts::PI * ((p - 1.0) * (p - 1.0) + 0.0025));
            assert!((s.momentum(p).unwrap().norm_sqr() - expected).abs() < 1e-12 * expected);
        }
    }
}
