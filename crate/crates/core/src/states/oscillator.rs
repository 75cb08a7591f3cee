//! Harmonic-oscillator eigenstates (`m = omega = 1`) and their superpositions.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::FrameParams;
use crate::specfun::{hermite_normalized, MAX_HERMITE_ORDER};

/// `psi_n(x) = pi^{-1/4} H_n(x) e^{-x^2/2} / sqrt(2^n n!)`.
pub fn eigenfunction(n: usize, x: f64) -> Result<f64> {
    Ok(PI.powf(-0.25) * hermite_normalized(n, x)? * (-0.5 * x * x).exp())
}

/// Transformed amplitude `phi_n(X | mu, nu)`:
///
/// `phi_0 = pi^{-1/4} sqrt(mu / (mu + i nu)) exp(-X^2 / (2 (mu^2 + i mu nu)))`,
/// `phi_n = (r / (mu + i nu))^n H_n(X / r) phi_0 / sqrt(2^n n!)` with
/// `r = sqrt(mu^2 + nu^2)`. The factor `(r / (mu + i nu))^n` is the
/// branch-free spelling of `((mu - i nu) / (mu + i nu))^{n/2}`.
///
/// The tomogram of `psi_n` is `|phi_n|^2 / |mu|`. At `mu = 0` the amplitude
/// vanishes (its modulus is `O(sqrt|mu|)`) and the momentum limit must be used.
pub fn ho_transformed_amplitude(n: usize, f: &FrameParams, x: f64) -> Result<Complex64> {
    let (mu, nu) = (f.mu, f.nu);
    if mu == 0.0 && nu == 0.0 {
        return Err(Error::DegenerateFrame { mu, nu });
    }
    if mu == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let z = Complex64::new(mu, nu);
    let r = z.norm();
    let phi0 = PI.powf(-0.25) * (mu / z).sqrt() * (-x * x / (2.0 * mu * z)).exp();
    if n == 0 {
        return Ok(phi0);
    }
    let rotation = (r / z).powu(n as u32);
    Ok(rotation * hermite_normalized(n, x / r)? * phi0)
}

/// `sum_n c_n psi_n` with per-mode frequencies (default `n + 1/2`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscSuperposition {
    #[serde(with = "mode_keys")]
    pub coeffs: BTreeMap<usize, Complex64>,
    #[serde(default, alias = "omega_n", with = "mode_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub omega: BTreeMap<usize, f64>,
}

// JSON object keys are strings; a tagged enum hands them over unparsed.
mod mode_keys {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<T: Serialize, S: Serializer>(map: &BTreeMap<usize, T>, ser: S) -> Result<S::Ok, S::Error> {
        let keyed: BTreeMap<String, &T> = map.iter().map(|(k, v)| (k.to_string(), v)).collect();
        keyed.serialize(ser)
    }

    pub fn deserialize<'de, T: Deserialize<'de>, D: Deserializer<'de>>(de: D) -> Result<BTreeMap<usize, T>, D::Error> {
        BTreeMap::<String, T>::deserialize(de)?
            .into_iter()
            .map(|(k, v)| {
                k.trim()
                    .parse()
                    .map(|n| (n, v))
                    .map_err(|_| D::Error::custom(format!("mode index {k:?} is not a nonnegative integer")))
            })
            .collect()
    }
}

impl OscSuperposition {
    pub fn eigenstate(n: usize) -> Self {
        OscSuperposition { coeffs: BTreeMap::from([(n, Complex64::new(1.0, 0.0))]), omega: BTreeMap::new() }
    }

    pub fn new(coeffs: impl IntoIterator<Item = (usize, Complex64)>) -> Result<Self> {
        let s = OscSuperposition { coeffs: coeffs.into_iter().collect(), omega: BTreeMap::new() };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.coeffs.is_empty() {
            return Err(Error::InvalidSpec("oscillator superposition has no modes".into()));
        }
        if let Some(&n) = self.coeffs.keys().find(|&&n| n > MAX_HERMITE_ORDER) {
            return Err(Error::InvalidSpec(format!("oscillator mode {n} exceeds {MAX_HERMITE_ORDER}")));
        }
        if self.coeffs.values().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidSpec("oscillator coefficients must be finite".into()));
        }
        if self.omega.values().any(|w| !w.is_finite()) {
            return Err(Error::InvalidSpec("oscillator frequencies must be finite".into()));
        }
        let norm: f64 = self.coeffs.values().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidSpec(format!("oscillator coefficients have sum |c_n|^2 = {norm}, not 1")));
        }
        Ok(())
    }

    pub fn omega(&self, n: usize) -> f64 {
        self.omega.get(&n).copied().unwrap_or(n as f64 + 0.5)
    }

    pub fn max_mode(&self) -> usize {
        self.coeffs.keys().copied().max().unwrap_or(0)
    }

    /// Coefficients after time `t`: `c_n e^{-i omega_n t}`.
    pub fn at_time(&self, t: f64) -> Self {
        let coeffs =
            self.coeffs.iter().map(|(&n, &c)| (n, c * Complex64::from_polar(1.0, -self.omega(n) * t))).collect();
        OscSuperposition { coeffs, omega: self.omega.clone() }
    }

    pub fn initial(&self, x: f64) -> Result<Complex64> {
        self.coeffs.iter().map(|(&n, &c)| Ok(c * eigenfunction(n, x)?)).sum()
    }

    /// Amplitude in frame `f`, `sum_n c_n phi_n(X | mu, nu)`.
    pub fn transformed(&self, f: &FrameParams, x: f64) -> Result<Complex64> {
        self.coeffs.iter().map(|(&n, &c)| Ok(c * ho_transformed_amplitude(n, f, x)?)).sum()
    }

    /// Free evolution: `psi_n(x, tau) = phi_n(x | 1, tau)`.
    pub fn forward(&self, x: f64, tau: f64) -> Result<Complex64> {
        let f = FrameParams { mu: 1.0, nu: tau, s: 1.0, theta: tau.atan() };
        self.transformed(&f, x)
    }

    /// Backward solution; the eigenfunctions are real, so only they are conjugated.
    pub fn backward(&self, x: f64, tau: f64) -> Result<Complex64> {
        let f = FrameParams { mu: 1.0, nu: tau, s: 1.0, theta: tau.atan() };
        self.coeffs.iter().map(|(&n, &c)| Ok(c * ho_transformed_amplitude(n, &f, x)?.conj())).sum()
    }

    /// Momentum amplitude: `psi_n(p) (-i)^n`.
    pub fn momentum(&self, p: f64) -> Result<Complex64> {
        self.coeffs.iter().map(|(&n, &c)| Ok(c * Complex64::i().powu(3 * (n % 4) as u32) * eigenfunction(n, p)?)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(mu: f64, nu: f64) -> FrameParams {
        FrameParams::new(mu, nu).unwrap()
    }

    #[test]
    fn identity_frame_returns_eigenfunction() {
        for &x in &[-1.2, 0.0, 0.8] {
            let v = ho_transformed_amplitude(0, &frame(1.0, 0.0), x).unwrap();
            assert!((v.re - PI.powf(-0.25) * (-x * x / 2.0).exp()).abs() < 1e-15 && v.im == 0.0);
        }
        let v = ho_transformed_amplitude(1, &frame(1.0, 0.0), 1.0).unwrap();
        assert!((v.re - 0.644_288_365_113_475_2).abs() < 1e-12);
    }

    #[test]
    fn low_orders_match_explicit_polynomials() {
        let (mu, nu, x) = (0.6, -1.3, 0.9);
        let f = frame(mu, nu);
        let z = Complex64::new(mu, nu);
        let r2 = mu * mu + nu * nu;
        let p0 = ho_transformed_amplitude(0, &f, x).unwrap();
        let explicit = [
            p0,
            2f64.sqrt() * x / z * p0,
            (2.0 * x * x - r2) / (2f64.sqrt() * z * z) * p0,
            (2.0 * x.powi(3) - 3.0 * x * r2) / (3f64.sqrt() * z * z * z) * p0,
        ];
        for (n, e) in explicit.iter().enumerate() {
            let v = ho_transformed_amplitude(n, &f, x).unwrap();
            assert!((v - e).norm() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn homogeneity_of_amplitude() {
        // phi_n(X | mu, nu) = phi_n(X/mu | 1, nu/mu) for any sign of mu
        for &(mu, nu) in &[(0.7, 0.4), (-0.7, 0.4), (-1.1, -2.0), (2.0, -0.3)] {
            for n in 0..5 {
                let a = ho_transformed_amplitude(n, &frame(mu, nu), 1.3).unwrap();
                let b = ho_transformed_amplitude(n, &frame(1.0, nu / mu), 1.3 / mu).unwrap();
                assert!((a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn superposition_validation() {
        assert!(OscSuperposition::new([(0, Complex64::new(1.0, 0.0)), (1, Complex64::new(0.5, 0.0))]).is_err());
        assert!(OscSuperposition::new([(201, Complex64::new(1.0, 0.0))]).is_err());
        let s = OscSuperposition::new([(0, Complex64::new(0.6, 0.0)), (3, Complex64::new(0.0, 0.8))]).unwrap();
        assert_eq!(s.max_mode(), 3);
        assert_eq!(s.omega(3), 3.5);
    }

    #[test]
    fn time_phases() {
        let s = OscSuperposition::new([(0, Complex64::new(0.6, 0.0)), (1, Complex64::new(0.8, 0.0))]).unwrap();
        let t = s.at_time(PI);
        assert!((t.coeffs[&0] - Complex64::new(0.0, -0.6)).norm() < 1e-15);
        assert!((t.coeffs[&1] - Complex64::new(0.0, 0.8)).norm() < 1e-15);
    }
}
