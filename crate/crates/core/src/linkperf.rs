//! End-to-end outage, outage-targeted thresholds, maximum target spectral
//! efficiency and the channel-hardening index.
//!
//! The relay decodes and forwards, so the end-to-end SNR is the minimum of
//! the two hops and OP(γ_th) = 1 − (1 − F_G2A(γ_th))(1 − F_A2G(γ_th)).

use serde::Serialize;

use crate::dists::{
    a2g_cdf_upper, a2g_large_n, g2a_cdf_mixture, g2a_cdf_upper, g2a_pdf_asymptotic, A2gParams, G2aParams,
    MixtureWeights,
};
use crate::error::{Error, Result};
use crate::scenario::Scenario;
use crate::specfun::gaussian_q_inv;

fn check_prob(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::arg(format!("{name} must lie in [0,1], got {p}")))
    }
}

fn check_level(l: f64) -> Result<()> {
    if l > 0.0 && l < 1.0 {
        Ok(())
    } else {
        Err(Error::arg(format!("outage level must lie in (0,1), got {l}")))
    }
}

/// Target SE or SNR threshold together with the desired outage level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutageQuery {
    target_se: f64,
    threshold: f64,
    level: f64,
}

/// γ_th = 2^{2R} − 1; the ½ accounts for the two relay time slots.
pub fn threshold_from_se(r: f64) -> f64 {
    (2.0 * r).exp2() - 1.0
}

pub fn se_from_threshold(gamma: f64) -> f64 {
    0.5 * (1.0 + gamma).log2()
}

impl OutageQuery {
    /// Either or both of `target_se` and `threshold`; when both are given
    /// they must agree to 1e-9 relative.
    pub fn new(target_se: Option<f64>, threshold: Option<f64>, level: f64) -> Result<Self> {
        check_level(level)?;
        let (r, g) = match (target_se, threshold) {
            (None, None) => return Err(Error::arg("need a target SE or a threshold")),
            (Some(r), None) => (r, threshold_from_se(r)),
            (None, Some(g)) => (se_from_threshold(g), g),
            (Some(r), Some(g)) => {
                let want = threshold_from_se(r);
                if (want - g).abs() > 1e-9 * want.abs().max(1.0) {
                    return Err(Error::arg(format!("threshold {g} does not match 2^(2R)-1 = {want}")));
                }
                (r, g)
            }
        };
        if !(r >= 0.0 && g >= 0.0 && g.is_finite()) {
            return Err(Error::arg("target SE and threshold must be finite and >= 0"));
        }
        Ok(Self {
            target_se: r,
            threshold: g,
            level,
        })
    }

    pub fn target_se(&self) -> f64 {
        self.target_se
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn level(&self) -> f64 {
        self.level
    }
}

/// 1 − (1 − a)(1 − b).
pub fn e2e_outage(a: f64, b: f64) -> Result<f64> {
    check_prob("G2A CDF value", a)?;
    check_prob("A2G CDF value", b)?;
    Ok(1.0 - (1.0 - a) * (1.0 - b))
}

/// Per-state analytical parameters of both hops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopLaws {
    pub g2a_los: G2aParams,
    pub g2a_nlos: G2aParams,
    pub g2a_weights: MixtureWeights,
    pub a2g_los: A2gParams,
    pub a2g_nlos: A2gParams,
    pub a2g_weights: MixtureWeights,
}

impl HopLaws {
    pub fn from_scenario(s: &Scenario) -> Result<Self> {
        Ok(Self {
            g2a_los: G2aParams::from_scenario(s, true)?,
            g2a_nlos: G2aParams::from_scenario(s, false)?,
            g2a_weights: MixtureWeights::from_los(s.g2a.p_los)?,
            a2g_los: A2gParams::from_scenario(s, true)?,
            a2g_nlos: A2gParams::from_scenario(s, false)?,
            a2g_weights: MixtureWeights::from_los(s.a2g.p_los)?,
        })
    }

    /// Exact G2A mixture CDF and the large-N A2G mixture CDF.
    pub fn cdfs(&self, x: f64) -> Result<(f64, f64)> {
        let g = g2a_cdf_mixture(&self.g2a_los, &self.g2a_nlos, &self.g2a_weights, x.max(0.0))?;
        let w = &self.a2g_weights;
        let mut a = 0.0;
        if w.p_los > 0.0 {
            a += w.p_los * a2g_large_n(&self.a2g_los).law.cdf(x);
        }
        if w.p_nlos > 0.0 {
            a += w.p_nlos * a2g_large_n(&self.a2g_nlos).law.cdf(x);
        }
        Ok((g, a.clamp(0.0, 1.0)))
    }

    pub fn cdfs_upper(&self, x: f64) -> (f64, f64) {
        (
            g2a_cdf_upper(&self.g2a_los, &self.g2a_nlos, &self.g2a_weights, x),
            a2g_cdf_upper(&self.a2g_los, &self.a2g_nlos, &self.a2g_weights, x),
        )
    }
}

/// OP from the exact G2A CDF and the large-N A2G law.
pub fn e2e_outage_analytical(s: &Scenario, gamma_th: f64) -> Result<f64> {
    if !(gamma_th >= 0.0) {
        return Err(Error::arg(format!("threshold must be >= 0, got {gamma_th}")));
    }
    let (a, b) = HopLaws::from_scenario(s)?.cdfs(gamma_th)?;
    e2e_outage(a, b)
}

/// OP from the two asymptotic CDF expressions. Tight at high transmit
/// power; at low power it is loose and no direction is guaranteed.
pub fn e2e_outage_asymptotic(s: &Scenario, gamma_th: f64) -> Result<f64> {
    if !(gamma_th >= 0.0) {
        return Err(Error::arg(format!("threshold must be >= 0, got {gamma_th}")));
    }
    let (a, b) = HopLaws::from_scenario(s)?.cdfs_upper(gamma_th);
    e2e_outage(a, b)
}

/// How the G2A branch of the threshold is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum G2aThresholdRule {
    /// L / Σ p_s f_s, the exact inverse of the linear mixture bound.
    #[default]
    ExactInverse,
    /// L · Σ p_s / f_s, one inverse per state summed with the state weights.
    PerStateSum,
}

/// How the A2G branch of the threshold is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum A2gThresholdRule {
    /// Normal approximation of the Rice envelope: N γ̄ ρ̄² (a_L + α√b_N)².
    #[default]
    Gaussian,
    /// Bisection on the large-N mixture CDF (noncentral χ² through Marcum Q).
    MarcumExact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ThresholdOptions {
    pub g2a_rule: G2aThresholdRule,
    pub a2g_rule: A2gThresholdRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ThresholdFlags {
    /// a_L + α√b_N < 0 in the LOS term, which was clamped to zero.
    pub a2g_los_clamped: bool,
    pub a2g_nlos_clamped: bool,
    /// The linear G2A bound has zero slope (|ρ| = 1 with M > 1), so the
    /// G2A branch is unbounded and the A2G branch decides.
    pub g2a_unbounded: bool,
}

impl ThresholdFlags {
    pub fn any(&self) -> bool {
        self.a2g_los_clamped || self.a2g_nlos_clamped || self.g2a_unbounded
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdBreakdown {
    pub gamma_th_g2a: f64,
    pub gamma_th_a2g: f64,
    /// min of the two branches.
    pub gamma_hat_th: f64,
    pub a_l: f64,
    /// Nρ²/ρ̄²; infinite at |ρ| = 1.
    pub b_n: f64,
    pub flags: ThresholdFlags,
}

/// Q⁻¹(1 − L)/√2.
pub fn a_l(level: f64) -> Result<f64> {
    check_level(level)?;
    Ok(gaussian_q_inv(1.0 - level)? / std::f64::consts::SQRT_2)
}

fn g2a_branch(h: &HopLaws, level: f64, rule: G2aThresholdRule) -> f64 {
    let w = &h.g2a_weights;
    let terms = [
        (w.p_los, g2a_pdf_asymptotic(&h.g2a_los, true)),
        (w.p_nlos, g2a_pdf_asymptotic(&h.g2a_nlos, false)),
    ];
    match rule {
        G2aThresholdRule::ExactInverse => {
            let slope: f64 = terms.iter().map(|(p, f)| p * f).sum();
            if slope > 0.0 {
                level / slope
            } else {
                f64::INFINITY
            }
        }
        G2aThresholdRule::PerStateSum => terms
            .iter()
            .filter(|(p, _)| *p > 0.0)
            .map(|(p, f)| if *f > 0.0 { level * p / f } else { f64::INFINITY })
            .sum(),
    }
}

/// N γ̄ (ρ̄ a_L + α√N|ρ|)², which equals N γ̄ ρ̄² (a_L + α√b_N)² and stays
/// finite at |ρ| = 1. Returns the value and whether the base was clamped.
fn a2g_state_term(a: &A2gParams, alpha: f64, al: f64) -> (f64, bool) {
    let nf = f64::from(a.ris_elements);
    let base = a.rho_bar2().sqrt() * al + alpha * (nf * a.rho2()).sqrt();
    if base < 0.0 {
        (0.0, true)
    } else {
        (nf * a.mean_snr * base * base, false)
    }
}

fn a2g_branch_marcum(h: &HopLaws, level: f64) -> f64 {
    let f = |x: f64| a2g_cdf_upper(&h.a2g_los, &h.a2g_nlos, &h.a2g_weights, x);
    let mut hi = [&h.a2g_los, &h.a2g_nlos]
        .iter()
        .map(|a| a.mean_snr * f64::from(a.ris_elements) * f64::from(a.ris_elements).max(1.0))
        .fold(1e-300, f64::max);
    while f(hi) < level {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < level {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Thresholds at which each hop's asymptotic CDF equals L, and their min.
pub fn target_threshold(s: &Scenario, level: f64, opts: ThresholdOptions) -> Result<ThresholdBreakdown> {
    let al = a_l(level)?;
    let h = HopLaws::from_scenario(s)?;
    let mut flags = ThresholdFlags::default();

    let g2a = g2a_branch(&h, level, opts.g2a_rule);
    flags.g2a_unbounded = g2a.is_infinite();

    let w = &h.a2g_weights;
    let (t_los, c_los) = a2g_state_term(&h.a2g_los, h.a2g_los.alpha_chi(), al);
    let (t_nlos, c_nlos) = a2g_state_term(&h.a2g_nlos, 1.0, al);
    flags.a2g_los_clamped = w.p_los > 0.0 && c_los;
    flags.a2g_nlos_clamped = w.p_nlos > 0.0 && c_nlos;
    let a2g = match opts.a2g_rule {
        A2gThresholdRule::Gaussian => w.p_los * t_los + w.p_nlos * t_nlos,
        A2gThresholdRule::MarcumExact => a2g_branch_marcum(&h, level),
    };

    let rho2 = h.a2g_los.rho2();
    let rb2 = h.a2g_los.rho_bar2();
    let b_n = if rb2 > 0.0 {
        f64::from(h.a2g_los.ris_elements) * rho2 / rb2
    } else {
        f64::INFINITY
    };
    Ok(ThresholdBreakdown {
        gamma_th_g2a: g2a,
        gamma_th_a2g: a2g,
        gamma_hat_th: g2a.min(a2g),
        a_l: al,
        b_n,
        flags,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeReport {
    /// ½ log2(1 + γ̂_th).
    pub se_max: f64,
    /// ½ log2(1 + γ_th,G2A), the ceiling set by the first hop alone.
    pub se_ref_g2a: f64,
    pub threshold: ThresholdBreakdown,
}

/// Largest target SE that keeps the end-to-end OP at or below L.
pub fn max_target_se(s: &Scenario, level: f64, opts: ThresholdOptions) -> Result<SeReport> {
    let t = target_threshold(s, level, opts)?;
    Ok(SeReport {
        se_max: se_from_threshold(t.gamma_hat_th),
        se_ref_g2a: se_from_threshold(t.gamma_th_g2a),
        threshold: t,
    })
}

/// Var/E² of the A2G gain:
/// (ρ̄² + 2ρ̄²Nρ²α²)/(ρ̄² + Nρ²α²)², exactly 0 at |ρ| = 1.
pub fn hardening_index(n: u32, rho: f64, alpha: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::arg("need at least one RIS element"));
    }
    if !(rho.abs() <= 1.0) {
        return Err(Error::arg(format!("correlation must lie in [-1,1], got {rho}")));
    }
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::arg(format!("alpha must be finite and >= 0, got {alpha}")));
    }
    let rb2 = 1.0 - rho * rho;
    if rb2 <= 0.0 {
        return Ok(0.0);
    }
    let x = f64::from(n) * rho * rho * alpha * alpha;
    Ok((rb2 + 2.0 * rb2 * x) / ((rb2 + x) * (rb2 + x)))
}

/// Smallest N ≤ `max_n` with η(N) < `limit`. η is decreasing in N, so every
/// larger N also satisfies the bound.
pub fn hardening_threshold_n(rho: f64, alpha: f64, limit: f64, max_n: u32) -> Result<Option<u32>> {
    for n in 1..=max_n {
        if hardening_index(n, rho, alpha)? < limit {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
