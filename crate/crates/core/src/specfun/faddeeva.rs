//! The Faddeeva function w(z) = exp(-z^2) erfc(-iz).
//!
//! The upper half plane is split into three regions:
//!
//! * `|z| < 1.5`: the Maclaurin series `sum (iz)^n / Gamma(n/2 + 1)`, whose
//!   cancellation stays below a few hundred ulps there.
//! * `Im z >= 3` or `|z| >= 7`: the Laplace continued fraction
//!   `w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...))))`.
//! * everything else: the continued fraction at `Re z + 3i`, followed by Taylor
//!   steps straight down to `z`. The Taylor coefficients come from
//!   `w' = -2 z w + 2i/sqrt(pi)`. Moving towards the real axis the
//!   homogeneous solution `exp(-z^2)` shrinks, so the step errors decay.
//!
//! The lower half plane uses `w(z) = 2 exp(-z^2) - w(-z)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

const SERIES_RADIUS: f64 = 1.5;
const CF_FLOOR: f64 = 3.0;
const CF_RADIUS: f64 = 7.0;
const MARCH_STEP: f64 = 0.5;
const MAX_TERMS: usize = 400;

/// Default relative tolerance used by [`faddeeva`].
pub const DEFAULT_TOLERANCE: f64 = 1e-16;

/// Evaluate w(z) at the default tolerance.
pub fn faddeeva(z: Complex64) -> Result<Complex64> {
    faddeeva_with(z, DEFAULT_TOLERANCE)
}

/// Evaluate w(z), truncating series once terms fall below `tol` relative to
/// the running sum.
///
/// Fails with [`Error::Overflow`] when `exp(-z^2)` is not representable, which
/// happens for `Im z` large and negative.
pub fn faddeeva_with(z: Complex64, tol: f64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("faddeeva argument {z} is not finite")));
    }
    let tol = tol.max(f64::EPSILON * 0.25);
    if z.im >= 0.0 {
        return upper_half(z, tol);
    }
    // Re(-z^2) = y^2 - x^2, written to avoid overflow in the square.
    let log_modulus = (z.im - z.re) * (z.im + z.re);
    if log_modulus > 709.0 {
        return Err(Error::Overflow(format!("exp(-z^2) overflows at z = {z} (log modulus {log_modulus:.1})")));
    }
    let gauss = (-z * z).exp();
    let w = 2.0 * gauss - upper_half(-z, tol)?;
    if w.re.is_finite() && w.im.is_finite() {
        Ok(w)
    } else {
        Err(Error::Overflow(format!("w(z) not representable at z = {z}")))
    }
}

fn upper_half(z: Complex64, tol: f64) -> Result<Complex64> {
    let r = z.norm();
    if r < SERIES_RADIUS {
        maclaurin(z, tol)
    } else if z.im >= CF_FLOOR || r >= CF_RADIUS {
        Ok(continued_fraction(z))
    } else {
        march_down(z, tol)
    }
}

fn maclaurin(z: Complex64, tol: f64) -> Result<Complex64> {
    let iz = Complex64::i() * z;
    let iz2 = iz * iz;
    // even and odd terms: (iz)^n / Gamma(n/2 + 1), Gamma(3/2) = sqrt(pi)/2
    let mut even = Complex64::new(1.0, 0.0);
    let mut odd = iz * (2.0 * FRAC_1_SQRT_PI);
    let mut sum = even + odd;
    let mut n = 0.0;
    for _ in 0..MAX_TERMS {
        even *= iz2 / (n / 2.0 + 1.0);
        odd *= iz2 / ((n + 1.0) / 2.0 + 1.0);
        n += 2.0;
        sum += even + odd;
        if even.norm() + odd.norm() <= tol * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(format!("faddeeva series at z = {z}")))
}

fn continued_fraction(z: Complex64) -> Complex64 {
    let r2 = z.norm_sqr();
    let terms = 10 + (300.0 / r2).ceil().min(MAX_TERMS as f64) as usize;
    let mut tail = z;
    for k in (1..=terms).rev() {
        tail = z - (0.5 * k as f64) / tail;
    }
    Complex64::new(0.0, FRAC_1_SQRT_PI) / tail
}

fn march_down(z: Complex64, tol: f64) -> Result<Complex64> {
    let mut centre = Complex64::new(z.re, CF_FLOOR);
    let mut w = continued_fraction(centre);
    let depth = CF_FLOOR - z.im;
    let steps = (depth / MARCH_STEP).ceil().max(1.0) as usize;
    let h = Complex64::new(0.0, -depth / steps as f64);
    for _ in 0..steps {
        w = taylor_step(centre, w, h, tol)?;
        centre += h;
    }
    Ok(w)
}

/// Taylor expansion of w about `centre` where w(centre) = `w0`, evaluated at
/// `centre + h`. Coefficients satisfy
/// `(n+1) d_{n+1} = -2 centre d_n - 2 d_{n-1}`.
fn taylor_step(centre: Complex64, w0: Complex64, h: Complex64, tol: f64) -> Result<Complex64> {
    let mut d_prev = w0;
    let mut d = -2.0 * centre * w0 + Complex64::new(0.0, 2.0 * FRAC_1_SQRT_PI);
    let mut hp = h;
    let mut sum = w0 + d * h;
    let mut quiet = 0;
    for n in 1..MAX_TERMS {
        let next = (-2.0 * centre * d - 2.0 * d_prev) / (n as f64 + 1.0);
        d_prev = d;
        d = next;
        hp *= h;
        let term = d * hp;
        sum += term;
        // two consecutive small terms: odd/even coefficients can vanish alone
        if term.norm() <= tol * sum.norm() {
            quiet += 1;
            if quiet >= 2 && n > 6 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence(format!("faddeeva Taylor step at {centre}")))
}
