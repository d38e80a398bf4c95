use serde::Serialize;

use super::SampleBatch;
use crate::error::{Error, Result};

/// Right-continuous step CDF of a sample.
#[derive(Debug, Clone)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

fn sorted_copy(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::arg("empty sample"));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::arg("sample contains NaN"));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

impl EmpiricalCdf {
    pub fn new(values: &[f64]) -> Result<Self> {
        Ok(Self {
            sorted: sorted_copy(values)?,
        })
    }

    pub fn from_batch(b: &SampleBatch) -> Result<Self> {
        Self::new(&b.values)
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of the sample ≤ x.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }

    pub fn quantile(&self, p: f64) -> f64 {
        let n = self.sorted.len();
        let i = ((p.clamp(0.0, 1.0) * n as f64).ceil() as usize).clamp(1, n) - 1;
        self.sorted[i]
    }
}

/// One-sample KS distance sup|F_n − F|.
pub fn ks_statistic(values: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    let v = sorted_copy(values)?;
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < v.len() {
        // ties form one jump
        let mut j = i;
        while j + 1 < v.len() && v[j + 1] == v[i] {
            j += 1;
        }
        let f = cdf(v[i]);
        d = d.max((f - i as f64 / n).abs()).max((f - (j + 1) as f64 / n).abs());
        i = j + 1;
    }
    Ok(d)
}

/// Two-sample KS distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    let (a, b) = (sorted_copy(a)?, sorted_copy(b)?);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Wilson score interval for k successes in n trials at normal quantile z.
pub fn wilson_interval(k: usize, n: usize, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = k as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// 95% two-sided normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutageEstimate {
    pub probability: f64,
    pub outages: usize,
    pub draws: usize,
    /// 95% Wilson interval.
    pub ci_low: f64,
    pub ci_high: f64,
}

impl OutageEstimate {
    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci_high - self.ci_low)
    }
}

/// Fraction of paired draws with min(γ_G2A, γ_A2G) < γ_th.
pub fn estimate_outage(g2a: &SampleBatch, a2g: &SampleBatch, threshold: f64) -> Result<OutageEstimate> {
    if g2a.len() != a2g.len() {
        return Err(Error::arg(format!("batch lengths differ: {} vs {}", g2a.len(), a2g.len())));
    }
    if g2a.is_empty() {
        return Err(Error::arg("empty batches"));
    }
    let outages = g2a
        .values
        .iter()
        .zip(&a2g.values)
        .filter(|(a, b)| a.min(**b) < threshold)
        .count();
    let n = g2a.len();
    let (lo, hi) = wilson_interval(outages, n, Z95);
    Ok(OutageEstimate {
        probability: outages as f64 / n as f64,
        outages,
        draws: n,
        ci_low: lo,
        ci_high: hi,
    })
}

/// Freedman–Diaconis bin width 2·IQR·n^{−1/3}.
pub fn freedman_diaconis_width(values: &[f64]) -> Result<f64> {
    let e = EmpiricalCdf::new(values)?;
    let iqr = e.quantile(0.75) - e.quantile(0.25);
    let w = 2.0 * iqr / (values.len() as f64).cbrt();
    if w > 0.0 {
        Ok(w)
    } else {
        Err(Error::arg("sample has zero spread"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramBin {
    pub centre: f64,
    pub density: f64,
    /// 95% Wilson interval of the bin probability, scaled to density.
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Density estimates on bins of `width` centred at each grid point.
///
/// For non-negative samples, bins are cut at zero so the first bins are not
/// diluted by the empty negative half-line.
pub fn histogram(values: &[f64], centres: &[f64], width: f64) -> Result<Vec<HistogramBin>> {
    if !(width > 0.0) {
        return Err(Error::arg("bin width must be positive"));
    }
    let e = EmpiricalCdf::new(values)?;
    let n = e.len();
    let s = e.sorted();
    let floor = if s[0] >= 0.0 { 0.0 } else { f64::NEG_INFINITY };
    Ok(centres
        .iter()
        .map(|&c| {
            let left = (c - 0.5 * width).max(floor);
            let right = c + 0.5 * width;
            let lo = s.partition_point(|&v| v < left);
            let hi = s.partition_point(|&v| v < right);
            let k = hi - lo;
            let (pl, ph) = wilson_interval(k, n, Z95);
            let scale = if right > left { 1.0 / (right - left) } else { 0.0 };
            HistogramBin {
                centre: c,
                density: k as f64 / n as f64 * scale,
                ci_low: pl * scale,
                ci_high: ph * scale,
            }
        })
        .collect())
}
