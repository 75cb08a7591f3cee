//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The integrator keeps every panel in a max-heap keyed on its error estimate
//! and bisects the worst one until the summed error meets the tolerance or
//! the evaluation budget is spent. Callers that know where an integrand
//! oscillates or jumps seed the heap with their own panel boundaries.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Environment variable capping the number of integrand evaluations per
/// integral.
pub const MAX_EVALS_ENV: &str = "TOMOKIT_MAX_QUAD_EVALS";

const DEFAULT_MAX_EVALS: usize = 4_000_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { abs_tol: 1e-11, rel_tol: 1e-11, max_evals: max_evals_from_env() }
    }
}

impl QuadConfig {
    pub fn with_tol(tol: f64) -> Self {
        QuadConfig { abs_tol: tol, rel_tol: tol, ..QuadConfig::default() }
    }
}

/// Evaluation cap from [`MAX_EVALS_ENV`], or the built-in default.
pub fn max_evals_from_env() -> usize {
    std::env::var(MAX_EVALS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(DEFAULT_MAX_EVALS)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub evals: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> Result<Panel> {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).norm();
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::NonConvergence(format!("non-finite integrand on [{a}, {b}]")));
    }
    Ok(Panel { a, b, value, error })
}

/// Integrate a complex integrand over consecutive panels `breaks[i]..breaks[i+1]`.
pub fn integrate_panels<F>(mut f: F, breaks: &[f64], cfg: &QuadConfig) -> Result<Integral>
where
    F: FnMut(f64) -> Complex64,
{
    if breaks.len() < 2 {
        return Ok(Integral { value: Complex64::new(0.0, 0.0), error: 0.0, evals: 0 });
    }
    let panels = breaks.windows(2).filter(|w| w[1] > w[0]).count();
    if 15 * panels > cfg.max_evals {
        return Err(Error::NonConvergence(format!(
            "{panels} panels exceed the budget of {} evaluations",
            cfg.max_evals
        )));
    }
    let mut heap = BinaryHeap::with_capacity(panels * 2);
    let mut evals = 0;
    let (mut value, mut error) = (Complex64::new(0.0, 0.0), 0.0);
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let p = kronrod(&mut f, w[0], w[1])?;
            value += p.value;
            error += p.error;
            heap.push(p);
            evals += 15;
        }
    }
    loop {
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.norm()) {
            // running sums drift; confirm with a fresh one
            let (v, e) = heap.iter().fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), p| (v + p.value, e + p.error));
            if e <= cfg.abs_tol.max(cfg.rel_tol * v.norm()) {
                return Ok(Integral { value: v, error: e, evals });
            }
            (value, error) = (v, e);
            continue;
        }
        if evals + 30 > cfg.max_evals {
            return Err(Error::NonConvergence(format!("quadrature error {error:.3e} after {evals} evaluations")));
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            return Err(Error::NonConvergence(format!("panel [{}, {}] cannot be bisected further", worst.a, worst.b)));
        }
        let left = kronrod(&mut f, worst.a, mid)?;
        let right = kronrod(&mut f, mid, worst.b)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        evals += 30;
    }
}

/// Integrate a complex integrand on `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Integral>
where
    F: FnMut(f64) -> Complex64,
{
    integrate_panels(f, &[a, b], cfg)
}

/// Integrate a real integrand on `[a, b]`, splitting at `interior` points.
pub fn integrate_real<F>(mut f: F, a: f64, b: f64, interior: &[f64], cfg: &QuadConfig) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut breaks = vec![a];
    breaks.extend(interior.iter().copied().filter(|&x| x > a && x < b));
    breaks.push(b);
    breaks.sort_by(f64::total_cmp);
    Ok(integrate_panels(|x| Complex64::new(f(x), 0.0), &breaks, cfg)?.value.re)
}

/// Integrate a real integrand over the whole line through
/// `x = centre + scale * t / (1 - t^2)`, `t` in (-1, 1). `interior` lists
/// points (in x) where the integrand has kinks or jumps.
pub fn integrate_line<F>(mut f: F, centre: f64, scale: f64, interior: &[f64], cfg: &QuadConfig) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let to_t = |x: f64| {
        let u = (x - centre) / scale;
        if u == 0.0 {
            0.0
        } else {
            (-1.0 + (1.0 + 4.0 * u * u).sqrt()) / (2.0 * u)
        }
    };
    let mut breaks = vec![-1.0, -0.5, 0.0, 0.5, 1.0];
    breaks.extend(interior.iter().map(|&x| to_t(x)));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let g = |t: f64| {
        let d = 1.0 - t * t;
        let x = centre + scale * t / d;
        let jac = scale * (1.0 + t * t) / (d * d);
        let v = f(x) * jac;
        Complex64::new(if v.is_finite() { v } else { 0.0 }, 0.0)
    };
    Ok(integrate_panels(g, &breaks, cfg)?.value.re)
}
