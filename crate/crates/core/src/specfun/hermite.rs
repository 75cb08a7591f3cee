use crate::error::{Error, Result};

/// Largest supported Hermite order.
pub const MAX_ORDER: usize = 200;

/// Physicists' Hermite polynomial `H_n(x)` by the three-term recurrence
/// `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite(n: usize, x: f64) -> Result<f64> {
    if n > MAX_ORDER {
        return Err(Error::Domain(format!("Hermite order {n} exceeds {MAX_ORDER}")));
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    if cur.is_finite() {
        Ok(cur)
    } else {
        Err(Error::Overflow(format!("H_{n}({x}) exceeds f64 range")))
    }
}

/// `H_n(x) / sqrt(2^n n!)` by the normalized recurrence
/// `h_n = sqrt(2/n) x h_{n-1} - sqrt((n-1)/n) h_{n-2}`, which stays in range
/// where `H_n` itself would overflow.
pub fn hermite_normalized(n: usize, x: f64) -> Result<f64> {
    if n > MAX_ORDER {
        return Err(Error::Domain(format!("Hermite order {n} exceeds {MAX_ORDER}")));
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = std::f64::consts::SQRT_2 * x;
    for k in 2..=n {
        let kf = k as f64;
        let next = (2.0 / kf).sqrt() * x * cur - ((kf - 1.0) / kf).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    if cur.is_finite() {
        Ok(cur)
    } else {
        Err(Error::Overflow(format!("normalized H_{n}({x}) exceeds f64 range")))
    }
}

/// Monomial coefficients of `H_n`: entry `j` multiplies `y^j`.
pub fn hermite_coefficients(n: usize) -> Result<Vec<f64>> {
    if n > MAX_ORDER {
        return Err(Error::Domain(format!("Hermite order {n} exceeds {MAX_ORDER}")));
    }
    let mut prev = vec![1.0];
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = vec![0.0, 2.0];
    for k in 1..n {
        let mut next = vec![0.0; k + 2];
        for (j, c) in cur.iter().enumerate() {
            next[j + 1] += 2.0 * c;
        }
        for (j, c) in prev.iter().enumerate() {
            next[j] -= 2.0 * k as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        assert_eq!(hermite(0, 3.7).unwrap(), 1.0);
        assert_eq!(hermite(3, 1.0).unwrap(), -4.0);
        assert_eq!(hermite(2, 0.0).unwrap(), -2.0);
    }

    #[test]
    fn coefficients_match_recurrence() {
        assert_eq!(hermite_coefficients(3).unwrap(), vec![0.0, -12.0, 0.0, 8.0]);
        for n in 0..12 {
            let coeffs = hermite_coefficients(n).unwrap();
            let x: f64 = 0.37;
            let poly: f64 = coeffs.iter().enumerate().map(|(j, c)| c * x.powi(j as i32)).sum();
            let direct = hermite(n, x).unwrap();
            assert!((poly - direct).abs() <= 1e-10 * (1.0 + direct.abs()));
        }
    }

    #[test]
    fn normalized_matches_scaled_polynomial() {
        let mut scale = 1.0f64;
        for n in 0..30 {
            if n > 0 {
                scale *= (2.0 * n as f64).sqrt();
            }
            for &x in &[-2.5, 0.3, 1.0, 4.0] {
                let a = hermite_normalized(n, x).unwrap();
                let b = hermite(n, x).unwrap() / scale;
                assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn order_limit() {
        assert!(hermite(201, 0.1).is_err());
        assert!(hermite(200, 0.1).is_ok());
    }
}
