use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A number of the form `k/2` with integer `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfInteger(i32);

impl HalfInteger {
    /// The value `twice / 2`.
    pub const fn from_twice(twice: i32) -> Self {
        HalfInteger(twice)
    }

    pub const fn from_int(n: i32) -> Self {
        HalfInteger(2 * n)
    }

    /// Round-trips exact half-integers; anything else is rejected.
    pub fn from_f64(v: f64) -> Result<Self> {
        let twice = 2.0 * v;
        if twice.fract() != 0.0 || twice.abs() > i32::MAX as f64 {
            return Err(Error::Domain(format!("{v} is not a half-integer")));
        }
        Ok(HalfInteger(twice as i32))
    }

    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn is_nonpositive_integer(self) -> bool {
        self.0 <= 0 && self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Gamma function at a positive half-integer, built up from
/// `Gamma(1/2) = sqrt(pi)` and `Gamma(1) = 1`.
pub fn gamma_half(h: HalfInteger) -> Result<f64> {
    if h.0 <= 0 {
        return Err(Error::Domain(format!("gamma_half needs a positive argument, got {h}")));
    }
    let (mut value, mut arg) = if h.0 % 2 == 0 { (1.0, 1.0) } else { (std::f64::consts::PI.sqrt(), 0.5) };
    while arg < h.value() {
        value *= arg;
        arg += 1.0;
    }
    Ok(value)
}

/// Budget and acceptance limits for the confluent hypergeometric series.
#[derive(Debug, Clone, Copy)]
pub struct KummerConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Largest accepted `|z|`; cancellation grows like `exp(2|z|)`.
    pub max_abs_z: f64,
}

impl Default for KummerConfig {
    fn default() -> Self {
        KummerConfig { rel_tol: 1e-15, max_terms: 1000, max_abs_z: 40.0 }
    }
}

/// `1F1(a; b; z)` by direct power series, at the default configuration.
pub fn kummer_1f1(a: HalfInteger, b: HalfInteger, z: Complex64) -> Result<Complex64> {
    kummer_1f1_with(a, b, z, &KummerConfig::default())
}

pub fn kummer_1f1_with(a: HalfInteger, b: HalfInteger, z: Complex64, cfg: &KummerConfig) -> Result<Complex64> {
    if b.is_nonpositive_integer() {
        return Err(Error::Domain(format!("1F1 lower parameter {b} is a nonpositive integer")));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("1F1 argument {z} is not finite")));
    }
    if z.norm() > cfg.max_abs_z {
        return Err(Error::Domain(format!("1F1 argument |z| = {} beyond series cutoff {}", z.norm(), cfg.max_abs_z)));
    }
    let (a, b) = (a.value(), b.value());
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..cfg.max_terms {
        let kf = k as f64;
        term *= z * ((a + kf) / ((b + kf) * (kf + 1.0)));
        sum += term;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        // terms decrease monotonically once k exceeds |z| and |a|
        if kf > z.norm() && kf > a.abs() && term.norm() <= cfg.rel_tol * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(format!("1F1({a}; {b}; {z}) exceeded {} terms", cfg.max_terms)))
}
