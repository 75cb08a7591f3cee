//! `phi_n` as a sum of propagated monomials `y^j e^{-y^2/2}`, each a Kummer
//! function. Independent of the Hermite closed form and kept as its check.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frames::FrameParams;
use crate::specfun::{gamma_half, hermite_coefficients, kummer_1f1, HalfInteger};

/// Propagated monomial `int y^j e^{-y^2/2} G(X/mu - y) dy` with the free kernel
/// `G` at `tau = nu/mu`.
fn propagated_monomial(j: usize, mu: f64, nu: f64, x: f64) -> Result<Complex64> {
    let i = Complex64::i();
    let z = -0.5 * i * x * x / Complex64::new(mu * nu, nu * nu);
    let twice = j as i32;
    let g = if j.is_multiple_of(2) {
        gamma_half(HalfInteger::from_twice(twice + 1))?
            * (nu / (2.0 * Complex64::new(nu, -mu))).sqrt()
            * kummer_1f1(HalfInteger::from_twice(twice + 1), HalfInteger::from_twice(1), z)?
    } else {
        gamma_half(HalfInteger::from_twice(twice + 2))? * x / Complex64::new(mu, nu)
            * kummer_1f1(HalfInteger::from_twice(twice + 2), HalfInteger::from_twice(3), z)?
    };
    // root of each factor separately; the root of the product jumps branch for large j
    let root = (nu / Complex64::new(nu, -mu)).sqrt().powu(j as u32) * (mu / (i * nu)).sqrt();
    let phase = Complex64::from_polar(1.0, x * x / (2.0 * mu * nu));
    Ok((2f64.powi(j as i32 + 1) / PI).sqrt() * root * g * phase)
}

/// Series form of [`crate::states::ho_transformed_amplitude`] for frames in
/// the open first quadrant.
pub fn ho_transformed_amplitude_series(n: usize, f: &FrameParams, x: f64) -> Result<Complex64> {
    if !(f.mu > 0.0 && f.nu > 0.0) {
        return Err(Error::Domain(format!("series form needs mu, nu > 0, got ({}, {})", f.mu, f.nu)));
    }
    let coeffs = hermite_coefficients(n)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for (j, &c) in coeffs.iter().enumerate() {
        if c != 0.0 {
            sum += c * propagated_monomial(j, f.mu, f.nu, x)?;
        }
    }
    let log_norm = 0.5 * (n as f64 * 2f64.ln() + (1..=n).map(|k| (k as f64).ln()).sum::<f64>());
    Ok(sum * (-log_norm).exp() * PI.powf(-0.25))
}
