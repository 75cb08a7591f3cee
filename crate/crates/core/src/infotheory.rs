//! Entanglement of `a|j k> + b|l m>` and entropies of tomograms.
//!
//! Tracing out the second particle leaves
//! `rho = |a|^2 |j><j| + |b|^2 |l><l| + a b* c_km* |j><l| + a* b c_km |l><j|`
//! on the span of `|j>, |l>`. With coefficients `R` and Gram matrix
//! `G = [[1, c_jl], [c_lj, 1]]` the operator acts as the matrix `R G`, so
//! `Tr rho^n = tr((R G)^n)` and the nonzero eigenvalues of `rho` are those of `R G`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{State, StateSpec};

/// Largest accepted `| <Psi|Psi> - 1 |`.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Single-particle states behind the labels; `j`, `l` belong to particle 1,
/// `k`, `m` to particle 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BipartiteFactors {
    pub j: StateSpec,
    pub l: StateSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<StateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<StateSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BipartiteSpec {
    pub a: Complex64,
    pub b: Complex64,
    /// `<k|m>`
    pub c_km: Complex64,
    /// `<l|j>`
    pub c_lj: Complex64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<BipartiteFactors>,
}

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

impl BipartiteSpec {
    pub fn new(a: Complex64, b: Complex64, c_km: Complex64, c_lj: Complex64) -> Result<Self> {
        let s = BipartiteSpec { a, b, c_km, c_lj, factors: None };
        s.validate()?;
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: BipartiteSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(format!("bipartite spec: {e}")))?;
        s.validate()?;
        Ok(s)
    }

    /// `|a|^2 + |b|^2 + 2 Re(a* b c_jl c_km)`.
    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + 2.0 * (self.a.conj() * self.b * self.c_lj.conj() * self.c_km).re
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.a, self.b, self.c_km, self.c_lj].into_iter().all(finite) {
            return Err(Error::InvalidSpec("bipartite amplitudes and overlaps must be finite".into()));
        }
        for (name, c) in [("c_km", self.c_km), ("c_lj", self.c_lj)] {
            if c.norm() > 1.0 + 1e-12 {
                return Err(Error::InvalidSpec(format!("overlap {name} = {c} has modulus above 1")));
            }
        }
        let n = self.norm_sqr();
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidSpec(format!("bipartite state has <Psi|Psi> = {n}, not 1")));
        }
        if let Some(f) = &self.factors {
            for spec in [Some(&f.j), Some(&f.l), f.k.as_ref(), f.m.as_ref()].into_iter().flatten() {
                if !State::new(spec.clone())?.is_normalized() {
                    return Err(Error::InvalidSpec(format!("factor {} is not normalizable", spec.type_name())));
                }
            }
        }
        Ok(())
    }

    /// Coefficients of `rho` in `|r><s|`, `r, s` in `(j, l)`.
    pub fn reduced_coefficients(&self) -> [[Complex64; 2]; 2] {
        let (a, b) = (self.a, self.b);
        [
            [Complex64::new(a.norm_sqr(), 0.0), a * b.conj() * self.c_km.conj()],
            [a.conj() * b * self.c_km, Complex64::new(b.norm_sqr(), 0.0)],
        ]
    }

    /// `<r|s>` for `r, s` in `(j, l)`.
    pub fn gram(&self) -> [[Complex64; 2]; 2] {
        let one = Complex64::new(1.0, 0.0);
        [[one, self.c_lj.conj()], [self.c_lj, one]]
    }
}

fn matmul(x: &[[Complex64; 2]; 2], y: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut z = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    z
}

/// `S_L = 2 |a|^2 |b|^2 (1 - |c_km|^2)(1 - |c_lj|^2)`.
pub fn linear_entropy(bp: &BipartiteSpec) -> Result<f64> {
    bp.validate()?;
    Ok(2.0 * bp.a.norm_sqr() * bp.b.norm_sqr() * (1.0 - bp.c_km.norm_sqr()) * (1.0 - bp.c_lj.norm_sqr()))
}

/// `1 - tr((R G)^2)`, the linear entropy from the reduced density itself.
pub fn linear_entropy_gram(bp: &BipartiteSpec) -> Result<f64> {
    bp.validate()?;
    let m = matmul(&bp.reduced_coefficients(), &bp.gram());
    let sq = matmul(&m, &m);
    Ok(1.0 - (sq[0][0] + sq[1][1]).re)
}

/// Eigenvalues of the reduced density, largest first.
pub fn reduced_eigenvalues(bp: &BipartiteSpec) -> Result<[f64; 2]> {
    bp.validate()?;
    let g = bp.gram();
    let det_g = (g[0][0] * g[1][1] - g[0][1] * g[1][0]).re;
    if det_g < -1e-12 {
        return Err(Error::Domain(format!("Gram matrix has determinant {det_g}; the overlaps are inconsistent")));
    }
    let r = bp.reduced_coefficients();
    let det_r = (r[0][0] * r[1][1] - r[0][1] * r[1][0]).re;
    let m = matmul(&r, &g);
    let trace = (m[0][0] + m[1][1]).re;
    let det = (det_r * det_g).max(0.0);
    let disc = (0.25 * trace * trace - det).max(0.0).sqrt();
    Ok([0.5 * trace + disc, (0.5 * trace - disc).max(0.0)])
}

/// `-sum lambda ln lambda` over the eigenvalues of the reduced density.
pub fn von_neumann_reduced(bp: &BipartiteSpec) -> Result<f64> {
    Ok(reduced_eigenvalues(bp)?.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.ln()).sum())
}

/// `-int W ln W dX` by the trapezoid rule, `0 ln 0 = 0`. The row must
/// integrate to `1 +- 1e-4`.
pub fn shannon_entropy(values: &[f64], x_grid: &[f64]) -> Result<f64> {
    if values.len() != x_grid.len() || values.len() < 2 {
        return Err(Error::InvalidSpec(format!(
            "entropy needs matching rows of at least 2 points, got {} values on {} points",
            values.len(),
            x_grid.len()
        )));
    }
    if let Some(v) = values.iter().find(|&&v| v < -1e-12 || !v.is_finite()) {
        return Err(Error::Domain(format!("tomogram value {v} is not a probability density")));
    }
    let trapezoid = |g: &dyn Fn(f64) -> f64| -> f64 {
        values.windows(2).zip(x_grid.windows(2)).map(|(w, x)| 0.5 * (g(w[0]) + g(w[1])) * (x[1] - x[0])).sum()
    };
    let total = trapezoid(&|w| w);
    if (total - 1.0).abs() > 1e-4 {
        return Err(Error::Domain(format!("tomogram row integrates to {total}, not 1")));
    }
    Ok(trapezoid(&|w| if w > 0.0 { -w * w.ln() } else { 0.0 }))
}
