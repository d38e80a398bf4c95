use std::f64::consts::{PI, SQRT_2};

use statrs::function::erf::erfc_inv;

use super::gamma::gamma_pq;

use crate::error::{Error, Result};

/// Gaussian tail probability Q(x) = P(Z > x).
///
/// erfc(z) is the regularized upper incomplete gamma Q(1/2, z²), which keeps
/// full relative accuracy in both tails.
pub fn gaussian_q(x: f64) -> f64 {
    let (p, q) = gamma_pq(0.5, 0.5 * x * x);
    if x >= 0.0 {
        0.5 * q
    } else {
        0.5 + 0.5 * p
    }
}

/// Inverse of [`gaussian_q`] on (0, 1).
pub fn gaussian_q_inv(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::arg(format!("gaussian_q_inv needs p in (0,1), got {p}")));
    }
    if p > 0.5 {
        // 1 - p is exact here
        return Ok(-gaussian_q_inv(1.0 - p)?);
    }
    let mut x = SQRT_2 * erfc_inv(2.0 * p);
    // Newton polishing; dQ/dx = -phi(x)
    for _ in 0..4 {
        let phi = (-0.5 * x * x).exp() / (2.0 * PI).sqrt();
        if phi == 0.0 {
            break;
        }
        let step = (gaussian_q(x) - p) / phi;
        x += step;
        if step.abs() <= 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    Ok(x)
}
