use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;

/// ln Γ(x) for x > 0 without argument checks.
#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// ln Γ(x), rejecting x ≤ 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::arg(format!("log_gamma needs x > 0, got {x}")));
    }
    Ok(ln_gamma(x))
}

/// Regularized incomplete gamma pair (P(s,x), Q(s,x)).
///
/// Whichever of the two is smaller is computed directly, so both tails keep
/// full relative accuracy.
pub fn gamma_pq(s: f64, x: f64) -> (f64, f64) {
    debug_assert!(s > 0.0);
    if x <= 0.0 {
        return (0.0, 1.0);
    }
    if x.is_infinite() {
        return (1.0, 0.0);
    }
    let ln_pre = s * x.ln() - x - ln_gamma(s);
    if x < s + 1.0 {
        let mut ap = s;
        let mut del = 1.0 / s;
        let mut sum = del;
        let cap = 100_000 + (10.0 * s.sqrt()) as usize;
        for _ in 0..cap {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        let p = (sum.ln() + ln_pre).exp().min(1.0);
        (p, 1.0 - p)
    } else {
        // modified Lentz on the continued fraction for Q
        let mut b = x + 1.0 - s;
        let mut c = 1.0 / FPMIN;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..100_000 {
            let an = -(i as f64) * (i as f64 - s);
            b += 2.0;
            d = an * d + b;
            if d.abs() < FPMIN {
                d = FPMIN;
            }
            c = b + an / c;
            if c.abs() < FPMIN {
                c = FPMIN;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < EPS {
                break;
            }
        }
        let q = (h.ln() + ln_pre).exp().min(1.0);
        (1.0 - q, q)
    }
}
