use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use super::channel::{cn, rician_magnitude};
use super::{Hop, PartitionPlan, RngStream, SampleBatch};
use crate::dists::A2gParams;
use crate::error::{Error, Result};
use crate::scenario::Scenario;

/// LOS-state handling per draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LosMode {
    /// Bernoulli(p_LOS) per draw, giving the mixture law.
    #[default]
    Random,
    /// Every draw in the given state, for checking one mixture component.
    Pinned(bool),
}

impl LosMode {
    fn draw<R: Rng + ?Sized>(&self, p_los: f64, rng: &mut R) -> bool {
        match self {
            LosMode::Random => rng.gen::<f64>() < p_los,
            LosMode::Pinned(s) => *s,
        }
    }
}

/// BS → UAV MRT link with an aged estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct G2aSampler {
    pub antennas: u32,
    /// K-factor in the LOS state; NLOS is Rayleigh.
    pub k_factor: f64,
    pub correlation: f64,
    pub mean_snr_los: f64,
    pub mean_snr_nlos: f64,
    pub p_los: f64,
    pub los_mode: LosMode,
}

impl G2aSampler {
    pub fn from_scenario(s: &Scenario) -> Self {
        Self {
            antennas: s.antennas(),
            k_factor: s.g2a.k_factor_linear,
            correlation: s.g2a.correlation,
            mean_snr_los: s.g2a.mean_snr_los_linear,
            mean_snr_nlos: s.g2a.mean_snr_nlos_linear,
            p_los: s.g2a.p_los,
            los_mode: LosMode::Random,
        }
    }

    /// One draw: (SNR, LOS state).
    ///
    /// ĥ is Rician with flat steering, h = ρĥ + ρ̄z, and MRT along ĥ gives
    /// γ̄|hᴴĥ|²/‖ĥ‖².
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, bool) {
        let los = self.los_mode.draw(self.p_los, rng);
        let k = if los { self.k_factor } else { 0.0 };
        let a = (k / (k + 1.0)).sqrt();
        let s = (1.0 / (k + 1.0)).sqrt();
        let rho = self.correlation;
        let rb = (1.0 - rho * rho).max(0.0).sqrt();
        let mut inner = Complex64::new(0.0, 0.0);
        let mut norm = 0.0;
        for _ in 0..self.antennas {
            let hh = Complex64::new(a, 0.0) + cn(rng) * s;
            let h = hh * rho + cn(rng) * rb;
            inner += h.conj() * hh;
            norm += hh.norm_sqr();
        }
        let g = if los { self.mean_snr_los } else { self.mean_snr_nlos };
        (g * inner.norm_sqr() / norm, los)
    }
}

/// How the A2G SNR is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum A2gPath {
    /// Per-element channels, RIS phases and the coherent sum.
    #[default]
    Signal,
    /// γ_R = ρ Σ g_n ĝ_n + ρ̄‖g‖w with w ~ CN(0, 1), the exact reduction for
    /// continuous phases. Needs one complex draw per sample instead of N.
    Reduced,
}

/// UAV → RIS → user link with an aged U–R estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct A2gSampler {
    pub ris_elements: u32,
    /// U–R K-factor in the LOS state; NLOS is Rayleigh.
    pub k_factor_ur: f64,
    pub k_factor_rd: f64,
    pub correlation: f64,
    pub mean_snr_los: f64,
    pub mean_snr_nlos: f64,
    pub p_los: f64,
    pub los_mode: LosMode,
    pub phase_bits: Option<u32>,
    pub path: A2gPath,
}

impl A2gSampler {
    pub fn from_scenario(s: &Scenario) -> Self {
        Self {
            ris_elements: s.ris_elements(),
            k_factor_ur: s.a2g.k_factor_linear,
            k_factor_rd: s.k_factor_rd(),
            correlation: s.a2g.correlation,
            mean_snr_los: s.a2g.mean_snr_los_linear,
            mean_snr_nlos: s.a2g.mean_snr_nlos_linear,
            p_los: s.a2g.p_los,
            los_mode: LosMode::Random,
            phase_bits: s.config.ris.phase_bits,
            path: A2gPath::Signal,
        }
    }

    /// Sampler for a single LOS state described by analytical parameters.
    pub fn from_params(a: &A2gParams, los: bool) -> Self {
        Self {
            ris_elements: a.ris_elements,
            k_factor_ur: a.k_factor_ur,
            k_factor_rd: a.k_factor_rd,
            correlation: a.correlation,
            mean_snr_los: a.mean_snr,
            mean_snr_nlos: a.mean_snr,
            p_los: if los { 1.0 } else { 0.0 },
            los_mode: LosMode::Pinned(los),
            phase_bits: None,
            path: A2gPath::Signal,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.phase_bits == Some(0) {
            return Err(Error::arg("phase_bits must be >= 1"));
        }
        if self.phase_bits.is_some() && self.path == A2gPath::Reduced {
            return Err(Error::arg("the reduced path assumes continuous phases"));
        }
        Ok(())
    }

    /// One draw: (SNR, LOS state).
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, bool) {
        let los = self.los_mode.draw(self.p_los, rng);
        let k_ur = if los { self.k_factor_ur } else { 0.0 };
        let rho = self.correlation;
        let rb = (1.0 - rho * rho).max(0.0).sqrt();
        let gain = match self.path {
            A2gPath::Signal => {
                let step = self.phase_bits.map(|b| 2.0 * PI / f64::from(1u32 << b.min(30)));
                let (a_rd, s_rd) = ((self.k_factor_rd / (self.k_factor_rd + 1.0)).sqrt(), (1.0 / (self.k_factor_rd + 1.0)).sqrt());
                let (a_ur, s_ur) = ((k_ur / (k_ur + 1.0)).sqrt(), (1.0 / (k_ur + 1.0)).sqrt());
                let mut acc = Complex64::new(0.0, 0.0);
                for _ in 0..self.ris_elements {
                    let h_rd = Complex64::new(a_rd, 0.0) + cn(rng) * s_rd;
                    let h_hat = Complex64::new(a_ur, 0.0) + cn(rng) * s_ur;
                    let h_ur = h_hat * rho + cn(rng) * rb;
                    // co-phase the cascade against the estimate
                    let mut theta = -h_rd.arg() - h_hat.arg();
                    if let Some(q) = step {
                        theta = (theta / q).round() * q;
                    }
                    acc += h_rd * Complex64::from_polar(1.0, theta) * h_ur;
                }
                acc.norm_sqr()
            }
            A2gPath::Reduced => {
                let (mut dot, mut gg) = (0.0, 0.0);
                for _ in 0..self.ris_elements {
                    let g = rician_magnitude(self.k_factor_rd, rng);
                    dot += g * rician_magnitude(k_ur, rng);
                    gg += g * g;
                }
                (Complex64::new(rho * dot, 0.0) + cn(rng) * (rb * gg.sqrt())).norm_sqr()
            }
        };
        let g = if los { self.mean_snr_los } else { self.mean_snr_nlos };
        (g * gain, los)
    }
}

fn collect(hop: Hop, stream: &RngStream, plan: PartitionPlan, pairs: Vec<(f64, bool)>) -> SampleBatch {
    let (values, los) = pairs.into_iter().unzip();
    SampleBatch {
        hop,
        values,
        los,
        stream: *stream,
        plan,
    }
}

pub fn sample_g2a_snr(s: &G2aSampler, stream: &RngStream, n: usize, plan: PartitionPlan) -> Result<SampleBatch> {
    if n == 0 {
        return Err(Error::arg("need at least one draw"));
    }
    let pairs = plan.run(stream, n, |rng, len| (0..len).map(|_| s.draw(rng)).collect());
    Ok(collect(Hop::G2a, stream, plan, pairs))
}

pub fn sample_a2g_snr(s: &A2gSampler, stream: &RngStream, n: usize, plan: PartitionPlan) -> Result<SampleBatch> {
    if n == 0 {
        return Err(Error::arg("need at least one draw"));
    }
    s.validate()?;
    let pairs = plan.run(stream, n, |rng, len| (0..len).map(|_| s.draw(rng)).collect());
    Ok(collect(Hop::A2g, stream, plan, pairs))
}

/// MC estimates of (μ_χ, σ²_χ).
///
/// χ = (ρ/ρ̄)gᵀĝ/‖g‖ + w with w ~ CN(0, 1) independent of the first term,
/// so μ_χ is the sample mean of the first term and σ²_χ is one plus its
/// sample variance. Leaving w out of the simulation removes its noise.
pub fn estimate_chi_moments(a: &A2gParams, stream: &RngStream, n: usize, plan: PartitionPlan) -> Result<(f64, f64)> {
    let rb2 = a.rho_bar2();
    if !(rb2 > 0.0) {
        return Err(Error::Singular("chi moments need |rho| < 1".into()));
    }
    if n < 2 {
        return Err(Error::arg("need at least two draws"));
    }
    let r = a.correlation / rb2.sqrt();
    let vals = plan.run(stream, n, |rng, len| {
        (0..len)
            .map(|_| {
                let (mut dot, mut gg) = (0.0, 0.0);
                for _ in 0..a.ris_elements {
                    let g = rician_magnitude(a.k_factor_rd, rng);
                    dot += g * rician_magnitude(a.k_factor_ur, rng);
                    gg += g * g;
                }
                r * dot / gg.sqrt()
            })
            .collect()
    });
    let nf = n as f64;
    let mean = vals.iter().sum::<f64>() / nf;
    let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (nf - 1.0);
    Ok((mean, 1.0 + var))
}
