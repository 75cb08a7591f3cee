//! Stationary scattering states of piecewise-constant potentials.
//!
//! In region `j` the state is `A_j e^{i q_j x} + B_j e^{-i q_j x}` with
//! `q_j = sqrt(k^2 - 2 m V_j)` (principal root, so evanescent regions get
//! `q_j = i |q_j|`). Continuity of the state and its derivative at each edge
//! gives a 2x2 transfer matrix; chaining them links the outer regions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::moshinsky::Side;
use super::piecewise::{PiecewisePlaneWave, PlaneWavePiece, Support};
use crate::error::{Error, Result};

type Mat2 = [[Complex64; 2]; 2];

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn apply(m: &Mat2, v: [Complex64; 2]) -> [Complex64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

/// Potential equal to `heights[j]` on `[edges[j], edges[j+1]]` and zero
/// outside `[edges[0], edges[last]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePotential {
    pub edges: Vec<f64>,
    pub heights: Vec<f64>,
}

impl PiecewisePotential {
    pub fn new(edges: Vec<f64>, heights: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 || heights.len() + 1 != edges.len() {
            return Err(Error::InvalidSpec(format!("{} edges cannot bound {} regions", edges.len(), heights.len())));
        }
        if edges.iter().chain(&heights).any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpec("potential parameters must be finite".into()));
        }
        if edges.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidSpec("potential edges must increase strictly".into()));
        }
        Ok(PiecewisePotential { edges, heights })
    }

    fn region_heights(&self) -> impl Iterator<Item = f64> + '_ {
        std::iter::once(0.0).chain(self.heights.iter().copied()).chain(std::iter::once(0.0))
    }
}

/// Wave numbers and coefficients of a scattering state in every region,
/// outer regions included.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringSolution {
    pub k: f64,
    pub side: Side,
    pub q: Vec<Complex64>,
    pub coeffs: Vec<[Complex64; 2]>,
    pub r: Complex64,
    pub t: Complex64,
}

fn edge_transfer(x: f64, q1: Complex64, q2: Complex64) -> Result<Mat2> {
    if q2.norm() == 0.0 {
        return Err(Error::Singular(format!("zero wave number at edge x = {x}")));
    }
    let rho = q1 / q2;
    let i = Complex64::i();
    let e1p = (i * q1 * x).exp();
    let e1m = (-i * q1 * x).exp();
    let e2p = (-i * q2 * x).exp();
    let e2m = (i * q2 * x).exp();
    let plus = 0.5 * (1.0 + rho);
    let minus = 0.5 * (1.0 - rho);
    Ok([[e2p * plus * e1p, e2p * minus * e1m], [e2m * minus * e1p, e2m * plus * e1m]])
}

pub fn solve_scattering(pot: &PiecewisePotential, k: f64, m: f64, side: Side) -> Result<ScatteringSolution> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidSpec(format!("incident wave number must be positive, got {k}")));
    }
    let q: Vec<Complex64> = pot.region_heights().map(|v| Complex64::new(k * k - 2.0 * m * v, 0.0).sqrt()).collect();
    let mut steps = Vec::with_capacity(pot.edges.len());
    let mut total: Mat2 =
        [[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]];
    for (j, &x) in pot.edges.iter().enumerate() {
        let step = edge_transfer(x, q[j], q[j + 1])?;
        total = mul(&step, &total);
        steps.push(step);
    }
    let (first, r, t) = match side {
        Side::Left => {
            if total[1][1].norm() == 0.0 {
                return Err(Error::Singular(format!("no left scattering solution at k = {k}")));
            }
            let r = -total[1][0] / total[1][1];
            let t = total[0][0] + total[0][1] * r;
            ([Complex64::new(1.0, 0.0), r], r, t)
        }
        Side::Right => {
            if total[1][1].norm() == 0.0 {
                return Err(Error::Singular(format!("no right scattering solution at k = {k}")));
            }
            let t = 1.0 / total[1][1];
            let r = total[0][1] * t;
            ([Complex64::new(0.0, 0.0), t], r, t)
        }
    };
    let mut coeffs = vec![first];
    for step in &steps {
        let next = apply(step, *coeffs.last().expect("at least one region"));
        coeffs.push(next);
    }
    if coeffs.iter().flatten().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Overflow(format!("scattering coefficients overflow at k = {k}")));
    }
    Ok(ScatteringSolution { k, side, q, coeffs, r, t })
}

impl ScatteringSolution {
    /// The initial state as truncated plane waves, skipping zero terms.
    pub fn wave(&self, pot: &PiecewisePotential, m: f64) -> PiecewisePlaneWave {
        let n = self.q.len();
        let mut pieces = Vec::new();
        for (j, (&q, c)) in self.q.iter().zip(&self.coeffs).enumerate() {
            let support = if j == 0 {
                Support::Below(pot.edges[0])
            } else if j + 1 == n {
                Support::Above(pot.edges[n - 2])
            } else {
                Support::Between(pot.edges[j - 1], pot.edges[j])
            };
            for (amp, kappa) in [(c[0], q), (c[1], -q)] {
                if amp.norm() != 0.0 {
                    pieces.push(PlaneWavePiece { c: amp, kappa, support });
                }
            }
        }
        PiecewisePlaneWave { pieces, mass: m }
    }
}

/// Scattering by a single barrier (`v0 > 0`) or well (`v0 < 0`) on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatteringSpec {
    pub a: f64,
    pub b: f64,
    pub v0: f64,
    pub k: f64,
    pub side: Side,
    #[serde(default = "super::unit_mass")]
    pub m: f64,
}

/// Outer amplitudes `r`, `t`, inner amplitudes `a`, `b` of `e^{+iqx}` and
/// `e^{-iqx}`, and the inner wave number `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringCoefficients {
    pub r: Complex64,
    pub t: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub q: Complex64,
}

impl ScatteringSpec {
    pub fn validate(&self) -> Result<()> {
        super::check_mass(self.m)?;
        if !(self.k > 0.0) || !self.k.is_finite() {
            return Err(Error::InvalidSpec(format!("incident wave number must be positive, got {}", self.k)));
        }
        self.potential().map(|_| ())
    }

    pub fn potential(&self) -> Result<PiecewisePotential> {
        PiecewisePotential::new(vec![self.a, self.b], vec![self.v0])
    }

    pub fn solve(&self) -> Result<ScatteringSolution> {
        self.validate()?;
        solve_scattering(&self.potential()?, self.k, self.m, self.side)
    }

    pub fn wave(&self) -> Result<PiecewisePlaneWave> {
        Ok(self.solve()?.wave(&self.potential()?, self.m))
    }
}

pub fn scattering_coefficients(sc: &ScatteringSpec) -> Result<ScatteringCoefficients> {
    let sol = sc.solve()?;
    Ok(ScatteringCoefficients { r: sol.r, t: sol.t, a: sol.coeffs[1][0], b: sol.coeffs[1][1], q: sol.q[1] })
}

/// Free evolution of the scattering state's initial profile.
pub fn scattering_free_evolution(sc: &ScatteringSpec, x: f64, tau: f64) -> Result<Complex64> {
    if !(tau > 0.0) {
        return Err(Error::Domain(format!("scattering evolution needs tau > 0, got {tau}")));
    }
    sc.wave()?.forward(x, tau)
}
