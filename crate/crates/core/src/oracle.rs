//! Slow brute-force references.
//!
//! Each function here reaches its value by a route that shares no code with
//! the production path in [`crate::specfun`]: plain power series, periodic
//! trapezoid sums of integral representations, or bisection. They exist so
//! the test suites and `risage validate` have something independent to
//! compare against, and they are far too slow for production use.

use std::f64::consts::PI;

/// ln Γ(x) by upward shift to x ≥ 20 and the Stirling series.
pub fn ln_gamma(x: f64) -> f64 {
    let mut shift = 0.0;
    let mut z = x;
    while z < 20.0 {
        shift += z.ln();
        z += 1.0;
    }
    // Bernoulli terms B_2k / (2k(2k-1) z^(2k-1))
    const B: [f64; 8] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
    ];
    let mut s = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln();
    let mut zp = z;
    for (k, b) in B.iter().enumerate() {
        let k2 = 2.0 * (k + 1) as f64;
        s += b / (k2 * (k2 - 1.0) * zp);
        zp *= z * z;
    }
    s - shift
}

/// (1/π)∫_0^π cos(x sin t) dt by the periodic trapezoid rule.
pub fn j0(x: f64) -> f64 {
    let n = 64 + 2 * x.abs().ceil() as usize;
    let h = PI / n as f64;
    let mut s = 0.5 * (1.0 + (x * PI.sin()).cos());
    for k in 1..n {
        s += (x * (k as f64 * h).sin()).cos();
    }
    s / n as f64
}

/// I_ν(z) by its forward power series.
pub fn bessel_i(nu: f64, z: f64) -> f64 {
    if z == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let y = 0.25 * z * z;
    let mut t = (nu * (0.5 * z).ln() - ln_gamma(nu + 1.0)).exp();
    let mut s = t;
    let mut j = 0.0;
    loop {
        t *= y / ((j + 1.0) * (j + nu + 1.0));
        s += t;
        j += 1.0;
        if t < 1e-17 * s && j > y.sqrt() {
            break;
        }
    }
    s
}

/// e^{−z} I_n(z) for integer n: (1/π)∫_0^π e^{z(cos t − 1)} cos(n t) dt.
pub fn bessel_in_scaled(n: i64, z: f64) -> f64 {
    let m = 80 + 2 * (z.ceil() as usize) + 2 * n.unsigned_abs() as usize;
    let h = PI / m as f64;
    let f = |t: f64| (z * (t.cos() - 1.0)).exp() * (n as f64 * t).cos();
    let mut s = 0.5 * (f(0.0) + f(PI));
    for k in 1..m {
        s += f(k as f64 * h);
    }
    s / m as f64
}

/// e^x K_ν(x) = ∫_0^∞ e^{−x(cosh t − 1)} cosh(ν t) dt, trapezoid on the
/// doubly exponentially decaying integrand.
pub fn bessel_k_scaled(nu: f64, x: f64) -> f64 {
    let h = 0.01;
    let f = |t: f64| (-x * (t.cosh() - 1.0) + nu.abs() * t).exp() * 0.5 * (1.0 + (-2.0 * nu.abs() * t).exp());
    let mut s = 0.5 * f(0.0);
    let mut k = 1;
    loop {
        let v = f(k as f64 * h);
        s += v;
        if v < 1e-18 * s && k as f64 * h > 1.0 {
            break;
        }
        k += 1;
    }
    s * h
}

/// Marcum Q_m(a, b) for integer m ≥ 1 via the Bessel series.
///
/// Returns (value, complement_flag): when a > b the function returns
/// 1 − Q, the tail that the series yields with positive terms.
pub fn marcum_q_int(m: i64, a: f64, b: f64) -> (f64, bool) {
    let z = a * b;
    let pre = (-0.5 * (a - b) * (a - b)).exp();
    let sum_from = |start: i64, ratio: f64| {
        let mut s = 0.0;
        let mut k = start;
        loop {
            let t = ratio.powi(k as i32) * bessel_i(k.unsigned_abs() as f64, z) * (-z).exp();
            s += t;
            if k > start + 5 && t.abs() < 1e-18 * s.abs() {
                break;
            }
            if k > start + 2000 {
                break;
            }
            k += 1;
        }
        s
    };
    if b >= a {
        (pre * sum_from(1 - m, a / b), false)
    } else {
        (pre * sum_from(m, b / a), true)
    }
}

/// L_{1/2}(x), x ≤ 0, from e^x ₁F₁(3/2; 1; −x) whose terms are all positive.
pub fn laguerre_half(x: f64) -> f64 {
    let u = -x;
    let mut t = 1.0;
    let mut s = 1.0;
    let mut n = 0.0;
    loop {
        t *= (1.5 + n) * u / ((n + 1.0) * (n + 1.0));
        s += t;
        n += 1.0;
        if t < 1e-18 * s && n > u {
            break;
        }
    }
    x.exp() * s
}

/// Gaussian Q(x). Positive-term erf series near the origin, Craig's
/// integral by the periodic trapezoid rule in the tails.
pub fn gaussian_q(x: f64) -> f64 {
    let ax = x.abs();
    let upper = if ax <= 2.0 {
        let z = ax / 2f64.sqrt();
        // erf z = (2/√π) e^{-z²} Σ 2^n z^{2n+1} / (2n+1)!!
        let mut t = z;
        let mut s = z;
        let mut n = 0.0;
        loop {
            t *= 2.0 * z * z / (2.0 * n + 3.0);
            s += t;
            n += 1.0;
            if t <= 1e-18 * s {
                break;
            }
        }
        let erf = 2.0 / PI.sqrt() * (-z * z).exp() * s;
        0.5 * (1.0 - erf)
    } else {
        let n = 400;
        let h = PI / n as f64;
        let mut s = 0.0;
        for k in 1..n {
            let st = (k as f64 * h).sin();
            s += (-ax * ax / (2.0 * st * st)).exp();
        }
        s * h / (2.0 * PI)
    };
    if x >= 0.0 {
        upper
    } else {
        1.0 - upper
    }
}

/// Inverse Gaussian Q by bisection on [`gaussian_q`].
pub fn gaussian_q_inv(p: f64) -> f64 {
    let (mut lo, mut hi) = (-40.0f64, 40.0f64);
    while hi - lo > 1e-15 * lo.abs().max(hi.abs()).max(1e-3) {
        let mid = 0.5 * (lo + hi);
        if gaussian_q(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
