use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

const EPS: f64 = 1e-17;

/// Miller's backward recurrence is used up to this argument, the Hankel
/// expansion beyond it.
const J0_ASYMPTOTIC_FROM: f64 = 25.0;

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x < 1e-3 {
        let y = 0.25 * x * x;
        return 1.0 - y + 0.25 * y * y - y * y * y / 36.0;
    }
    if x <= J0_ASYMPTOTIC_FROM {
        j0_miller(x)
    } else {
        j0_hankel(x)
    }
}

fn j0_miller(x: f64) -> f64 {
    let m = 2 * (((1.5 * x + 40.0) / 2.0).ceil() as usize);
    let mut j_next = 0.0;
    let mut j_cur = 1e-30;
    let mut even_sum = if m % 2 == 0 { j_cur } else { 0.0 };
    for n in (1..=m).rev() {
        let j_prev = 2.0 * n as f64 / x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        let k = n - 1;
        if k >= 2 && k % 2 == 0 {
            even_sum += j_cur;
        }
        if j_cur.abs() > 1e200 {
            j_cur *= 1e-200;
            j_next *= 1e-200;
            even_sum *= 1e-200;
        }
    }
    j_cur / (j_cur + 2.0 * even_sum)
}

fn j0_hankel(x: f64) -> f64 {
    // P and Q series of the Hankel expansion for nu = 0
    let mut p = 1.0;
    let mut q = 0.0;
    let mut u = 1.0_f64;
    for k in 1..200 {
        let kf = k as f64;
        let next = u * (-(2.0 * kf - 1.0).powi(2)) / (8.0 * kf * x);
        if next.abs() >= u.abs() {
            break;
        }
        u = next;
        match k % 4 {
            0 => p += u,
            1 => q += u,
            2 => p -= u,
            _ => q -= u,
        }
        if u.abs() < EPS {
            break;
        }
    }
    // cos(x - pi/4) and sin(x - pi/4) without forming the shifted argument
    let (s, c) = x.sin_cos();
    let cos_w = FRAC_1_SQRT_2 * (c + s);
    let sin_w = FRAC_1_SQRT_2 * (s - c);
    (2.0 / (PI * x)).sqrt() * (p * cos_w - q * sin_w)
}

fn use_i_asymptotic(nu: f64, z: f64) -> bool {
    z >= 25.0 && z >= nu * nu
}

/// ln of the regularized Bessel I: ln[I_ν(z) / (z/2)^ν].
///
/// Valid for ν > −1 and z ≥ 0; at z = 0 it equals −ln Γ(ν+1). This is the
/// form the SNR densities need, because it stays finite as the Bessel
/// argument goes to zero.
pub fn ln_bessel_i_reg(nu: f64, z: f64) -> f64 {
    debug_assert!(nu > -1.0 && z >= 0.0);
    if z == 0.0 {
        return -ln_gamma(nu + 1.0);
    }
    if use_i_asymptotic(nu, z) {
        return ln_i_hankel(nu, z) - nu * (0.5 * z).ln();
    }
    // sum_j y^j / (j! Γ(j+ν+1)), y = z²/4, from the peak term outward
    let y = 0.25 * z * z;
    let root = 0.5 * (-nu + (nu * nu + 4.0 * y).sqrt()) - 1.0;
    let j0 = root.round().max(0.0);
    let ln_peak = j0 * y.ln() - ln_gamma(j0 + 1.0) - ln_gamma(j0 + nu + 1.0);
    let mut acc = 1.0;
    let mut r = 1.0;
    let mut j = j0;
    loop {
        r *= y / ((j + 1.0) * (j + nu + 1.0));
        acc += r;
        j += 1.0;
        if r < EPS * acc {
            break;
        }
    }
    r = 1.0;
    j = j0;
    while j >= 1.0 {
        r *= j * (j + nu) / y;
        acc += r;
        j -= 1.0;
        if r < EPS * acc {
            break;
        }
    }
    ln_peak + acc.ln()
}

fn ln_i_hankel(nu: f64, z: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut sum = 1.0;
    let mut t = 1.0_f64;
    for k in 1..300 {
        let kf = k as f64;
        let next = -t * (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * z);
        if next.abs() >= t.abs() && k > 1 {
            break;
        }
        t = next;
        sum += t;
        if t.abs() < EPS * sum.abs() {
            break;
        }
    }
    z - 0.5 * (2.0 * PI * z).ln() + sum.ln()
}

fn check_i_args(nu: f64, x: f64) -> Result<()> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::arg(format!("bessel_i order must be >= 0, got {nu}")));
    }
    if !(x >= 0.0) {
        return Err(Error::arg(format!("bessel_i needs x >= 0, got {x}")));
    }
    Ok(())
}

/// ln I_ν(x); −∞ at x = 0 for ν > 0.
pub fn ln_bessel_i(nu: f64, x: f64) -> Result<f64> {
    check_i_args(nu, x)?;
    if x == 0.0 {
        return Ok(if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    Ok(ln_bessel_i_reg(nu, x) + nu * (0.5 * x).ln())
}

/// Modified Bessel function I_ν(x). Returns +∞ once the value overflows;
/// use [`bessel_i_scaled`] for large arguments.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    Ok(ln_bessel_i(nu, x)?.exp())
}

/// e^{−x} I_ν(x), finite for every admissible argument.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    Ok((ln_bessel_i(nu, x)? - x).exp())
}

// Taylor coefficients of 1/Γ(z) around 0 (Abramowitz & Stegun 6.1.34).
const RGAM: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

/// (gam1, gam2, 1/Γ(1+μ), 1/Γ(1−μ)) for Temme's series, |μ| ≤ 1/2.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mut gam2 = 0.0;
    let mut pw = 1.0;
    for k in (1..=RGAM.len()).step_by(2) {
        gam2 += RGAM[k - 1] * pw;
        pw *= mu * mu;
    }
    // the even-k sum is written so that no division by mu is needed
    let mut gam1 = 0.0;
    let mut pw = 1.0;
    for k in (2..=RGAM.len()).step_by(2) {
        gam1 -= RGAM[k - 1] * pw;
        pw *= mu * mu;
    }
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    (gam1, gam2, gampl, gammi)
}

/// Scaled e^x K_μ(x) and e^x K_{μ+1}(x) for |μ| ≤ 1/2, x > 0.
fn k_pair_scaled(mu: f64, x: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < 1e-15 { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < 1e-15 { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        for i in 1..10_000 {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu2);
            c *= dd / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * 1e-17 {
                break;
            }
        }
        let s = x.exp();
        (sum * s, sum1 * (2.0 / x) * s)
    } else {
        // Steed's CF2 with Temme's normalization
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..100_000 {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < 1e-17 {
                break;
            }
        }
        h *= a1;
        let kmu = (PI / (2.0 * x)).sqrt() / s;
        let k1 = kmu * (mu + x + 0.5 - h) / x;
        (kmu, k1)
    }
}

/// ln K_{μ+i}(x) for i = 0..=n, with |μ| ≤ 1/2.
fn ln_k_sequence(mu: f64, x: f64, n: usize) -> Vec<f64> {
    let (kmu, k1) = k_pair_scaled(mu, x);
    let mut out = Vec::with_capacity(n + 1);
    let mut lnk = kmu.ln() - x;
    out.push(lnk);
    let mut r = k1 / kmu;
    for i in 1..=n {
        lnk += r.ln();
        out.push(lnk);
        r = 2.0 * (mu + i as f64) / x + 1.0 / r;
    }
    out
}

fn check_k_args(nu: f64, x: f64) -> Result<()> {
    if !nu.is_finite() {
        return Err(Error::arg("bessel_k order must be finite"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::arg(format!("bessel_k needs finite x > 0, got {x}")));
    }
    Ok(())
}

/// ln K_ν(x) for any real ν and x > 0.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    check_k_args(nu, x)?;
    let nu = nu.abs();
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    Ok(*ln_k_sequence(mu, x, nl as usize).last().unwrap())
}

/// Modified Bessel function K_ν(x).
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    Ok(ln_bessel_k(nu, x)?.exp())
}

/// e^x K_ν(x).
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    Ok((ln_bessel_k(nu, x)? + x).exp())
}

/// ln K_{base+i}(x) for i = 0..count, base ∈ [0, 1).
///
/// One recurrence serves the whole ladder, which is what the product-form
/// series needs: all its orders share a single fractional part.
pub fn ln_bessel_k_ladder(base: f64, x: f64, count: usize) -> Result<Vec<f64>> {
    check_k_args(base, x)?;
    if !(0.0..1.0).contains(&base) {
        return Err(Error::arg(format!("ladder base must lie in [0,1), got {base}")));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    if base <= 0.5 {
        Ok(ln_k_sequence(base, x, count - 1))
    } else {
        let mut v = ln_k_sequence(base - 1.0, x, count);
        v.remove(0);
        Ok(v)
    }
}

/// Laguerre function L_{1/2}(x).
///
/// Uses L_{1/2}(x) = e^{x/2}[(1−x) I_0(−x/2) − x I_1(−x/2)], evaluated with
/// scaled Bessel functions so that large negative x stays finite.
pub fn laguerre_half(x: f64) -> f64 {
    let y = 0.5 * x.abs();
    let i0 = (ln_bessel_i_reg(0.0, y) - y).exp();
    let i1 = (ln_bessel_i_reg(1.0, y) + (0.5 * y).ln() - y).exp();
    let i1 = if y == 0.0 { 0.0 } else { i1 };
    if x <= 0.0 {
        (1.0 - x) * i0 - x * i1
    } else {
        // I_1 is odd, and e^{x/2} = e^{2y} e^{-y}
        (2.0 * y).exp() * ((1.0 - x) * i0 + x * i1)
    }
}
