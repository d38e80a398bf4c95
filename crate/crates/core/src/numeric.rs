//! Quadrature, numerical Laplace inversion and tabulated CDFs.

use num_complex::Complex64;

use crate::error::{Error, Result};

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
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
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7K15 panel: (Kronrod estimate, |Kronrod − Gauss|).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

/// Adaptive Gauss-Kronrod integration of f over [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> QuadResult {
    // bisect the panel with the largest error until the budget is met
    let (v, e) = gk15(&f, a, b);
    let mut panels = vec![(a, b, v, e)];
    let mut total = v;
    let mut err = e;
    let mut iters = 0;
    while err > abs_tol.max(rel_tol * total.abs()) && iters < 2000 {
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (pa, pb, pv, pe) = panels.swap_remove(idx);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            panels.push((pa, pb, pv, 0.0));
            err -= pe;
            continue;
        }
        let (v1, e1) = gk15(&f, pa, mid);
        let (v2, e2) = gk15(&f, mid, pb);
        total += v1 + v2 - pv;
        err += e1 + e2 - pe;
        panels.push((pa, mid, v1, e1));
        panels.push((mid, pb, v2, e2));
        iters += 1;
    }
    // recompute sums to shed accumulated rounding
    let value = panels.iter().map(|p| p.2).sum();
    let error = panels.iter().map(|p| p.3).sum();
    QuadResult { value, error }
}

/// ∫_a^∞ f, through the map x = a + t/(1−t).
pub fn integrate_to_inf<F: Fn(f64) -> f64>(f: F, a: f64, abs_tol: f64, rel_tol: f64) -> QuadResult {
    let g = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let u = 1.0 - t;
        let v = f(a + t / u) / (u * u);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(g, 0.0, 1.0, abs_tol, rel_tol)
}

/// Default node count for [`talbot_inverse`].
pub const TALBOT_NODES: usize = 24;

/// Fixed-Talbot inversion of a Laplace transform at t > 0.
///
/// Abate–Valkó contour s(θ) = rθ(cot θ + i), r = 2M/(5t), with M nodes.
/// About 24 nodes give 1e-10-level accuracy on smooth densities in double
/// precision; more nodes lose accuracy to cancellation.
pub fn talbot_inverse<F: Fn(Complex64) -> Complex64>(lt: F, t: f64, nodes: usize) -> f64 {
    let m = nodes as f64;
    let r = 2.0 * m / (5.0 * t);
    let mut acc = 0.5 * (lt(Complex64::new(r, 0.0)) * (r * t).exp()).re;
    for k in 1..nodes {
        let theta = k as f64 * std::f64::consts::PI / m;
        let cot = theta.cos() / theta.sin();
        let s = Complex64::new(r * theta * cot, r * theta);
        let sigma = theta + (theta * cot - 1.0) * cot;
        let w = Complex64::new(1.0, sigma);
        acc += (lt(s) * (s * t).exp() * w).re;
    }
    acc * r / m
}

/// CDF tabulated from a density, interpolated by cubic Hermite splines that
/// reuse the density values as slopes.
#[derive(Debug, Clone)]
pub struct CdfTable {
    x: Vec<f64>,
    cdf: Vec<f64>,
    pdf: Vec<f64>,
}

impl CdfTable {
    /// Integrates `pdf` panel by panel over a geometric grid spanning
    /// [lo, hi] plus an adaptive head panel on [0, lo].
    pub fn from_pdf<F: Fn(f64) -> f64>(pdf: F, lo: f64, hi: f64, nodes: usize) -> Result<Self> {
        if !(lo > 0.0 && hi > lo) || nodes < 2 {
            return Err(Error::arg("CdfTable needs 0 < lo < hi and at least two nodes"));
        }
        let ratio = (hi / lo).powf(1.0 / (nodes - 1) as f64);
        let mut x = Vec::with_capacity(nodes + 1);
        x.push(0.0);
        let mut xi = lo;
        for _ in 0..nodes {
            x.push(xi);
            xi *= ratio;
        }
        *x.last_mut().unwrap() = hi;
        let safe = |t: f64| {
            let v = pdf(t);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        let mut cdf = Vec::with_capacity(x.len());
        cdf.push(0.0);
        let head = integrate(&safe, 0.0, lo, 1e-15, 1e-10).value;
        cdf.push(head);
        for w in x[1..].windows(2) {
            let (v, _) = gk15(&safe, w[0], w[1]);
            let last = *cdf.last().unwrap();
            cdf.push(last + v);
        }
        let pdf_vals = x.iter().map(|&t| if t == 0.0 { 0.0 } else { safe(t) }).collect();
        Ok(Self {
            x,
            cdf,
            pdf: pdf_vals,
        })
    }

    /// Total mass captured on [0, hi].
    pub fn mass(&self) -> f64 {
        *self.cdf.last().unwrap()
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let n = self.x.len();
        if t >= self.x[n - 1] {
            return self.mass().min(1.0);
        }
        let i = self.x.partition_point(|&v| v <= t) - 1;
        if i == 0 {
            // head panel: linear in mass
            return self.cdf[1] * t / self.x[1];
        }
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let h = x1 - x0;
        let s = (t - x0) / h;
        let h00 = 2.0 * s * s * s - 3.0 * s * s + 1.0;
        let h10 = s * s * s - 2.0 * s * s + s;
        let h01 = -2.0 * s * s * s + 3.0 * s * s;
        let h11 = s * s * s - s * s;
        let v = h00 * self.cdf[i] + h10 * h * self.pdf[i] + h01 * self.cdf[i + 1] + h11 * h * self.pdf[i + 1];
        v.clamp(0.0, 1.0)
    }
}

/// ln Σ exp(v_i), robust to −∞ entries.
pub fn log_sum_exp(vals: &[f64]) -> f64 {
    let m = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + vals.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
}
