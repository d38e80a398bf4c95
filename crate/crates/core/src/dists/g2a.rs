use num_complex::Complex64;

use super::snccs::{check_nonneg, SnccsParams};
use super::MixtureWeights;
use crate::error::{Error, Result};
use crate::numeric::log_sum_exp;
use crate::scenario::Scenario;
use crate::specfun::{ln_bessel_i_reg, ln_gamma};

/// BS → UAV hop in one LOS state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct G2aParams {
    pub antennas: u32,
    pub k_factor: f64,
    pub correlation: f64,
    pub mean_snr: f64,
}

fn ln_binom(n: u32, k: u32) -> f64 {
    ln_gamma(f64::from(n) + 1.0) - ln_gamma(f64::from(k) + 1.0) - ln_gamma(f64::from(n - k) + 1.0)
}

impl G2aParams {
    pub fn new(antennas: u32, k_factor: f64, correlation: f64, mean_snr: f64) -> Result<Self> {
        if antennas == 0 {
            return Err(Error::arg("need at least one antenna"));
        }
        if !(k_factor >= 0.0 && k_factor.is_finite()) {
            return Err(Error::arg(format!("K-factor must be finite and >= 0, got {k_factor}")));
        }
        if !(correlation.abs() <= 1.0) {
            return Err(Error::arg(format!("correlation must lie in [-1,1], got {correlation}")));
        }
        if !(mean_snr > 0.0 && mean_snr.is_finite()) {
            return Err(Error::arg(format!("mean SNR must be positive, got {mean_snr}")));
        }
        Ok(Self {
            antennas,
            k_factor,
            correlation,
            mean_snr,
        })
    }

    /// LOS (κ from the scenario) or NLOS (κ = 0) parameters of a scenario.
    pub fn from_scenario(s: &Scenario, los: bool) -> Result<Self> {
        let l = &s.g2a;
        if los {
            Self::new(s.antennas(), l.k_factor_linear, l.correlation, l.mean_snr_los_linear)
        } else {
            Self::new(s.antennas(), 0.0, l.correlation, l.mean_snr_nlos_linear)
        }
    }

    pub fn rho2(&self) -> f64 {
        self.correlation * self.correlation
    }

    /// ρ̄² = 1 − ρ².
    pub fn rho_bar2(&self) -> f64 {
        (1.0 - self.rho2()).max(0.0)
    }

    pub fn delta1(&self) -> f64 {
        self.mean_snr * self.rho_bar2()
    }

    pub fn delta2(&self) -> f64 {
        self.mean_snr * (self.k_factor * self.rho_bar2() + 1.0) / (self.k_factor + 1.0)
    }

    /// Δ1Δ2/(Δ2 − Δ1); infinite when the two coincide.
    pub fn delta3(&self) -> f64 {
        let (d1, d2) = (self.delta1(), self.delta2());
        d1 * d2 / (d2 - d1)
    }

    pub fn xi_u(&self) -> f64 {
        let m = f64::from(self.antennas);
        m * self.k_factor * self.rho2() * (self.k_factor + 1.0) / self.mean_snr
    }

    /// The law as a binomial mixture: weights over ν = 0..M−1 and the SNCCS
    /// component with k = ν + 1.
    ///
    /// Expanding the finite sum term by term gives
    /// Bin(ν; M−1, ρ²/c)·SNCCS(Δ2, ν+1, Mκρ²/c) with c = κρ̄² + 1.
    pub fn mixture_components(&self) -> Vec<(f64, SnccsParams)> {
        let m = self.antennas;
        let c = self.k_factor * self.rho_bar2() + 1.0;
        let p = self.rho2() / c;
        let lam = f64::from(m) * self.k_factor * self.rho2() / c;
        let omega = self.delta2();
        (0..m)
            .filter_map(|nu| {
                let lw = ln_binom(m - 1, nu) + xlogy(f64::from(nu), p) + xlogy(f64::from(m - 1 - nu), 1.0 - p);
                let w = lw.exp();
                (w > 0.0).then(|| (w, SnccsParams { omega, k: f64::from(nu) + 1.0, lambda: lam }))
            })
            .collect()
    }
}

// x ln y with 0 ln 0 = 0
fn xlogy(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

/// Exact LOS density, summed term by term in log space.
pub fn g2a_pdf_los(g: &G2aParams, x: f64) -> Result<f64> {
    check_nonneg(x)?;
    Ok(ln_pdf_los(g, x).exp())
}

fn ln_pdf_los(g: &G2aParams, x: f64) -> f64 {
    let m_ant = g.antennas;
    let mf = f64::from(m_ant);
    let kap = g.k_factor;
    let (r2, rb2) = (g.rho2(), g.rho_bar2());
    let c = kap * rb2 + 1.0;
    let gb = g.mean_snr;
    let z = 2.0 * (g.xi_u() * x).sqrt() / c;
    let head = -mf * kap * r2 / c - (kap + 1.0) * x / (gb * c) + mf * ((kap + 1.0) / c).ln() - mf * gb.ln();
    // (x/Ξ)^{ν/2} I_ν(z) = (x/c)^ν · I_ν(z)/(z/2)^ν, finite as Ξ → 0
    let terms: Vec<f64> = (0..m_ant)
        .map(|m| {
            let nu = m_ant - m - 1;
            let nuf = f64::from(nu);
            if (nu > 0 && r2 == 0.0) || (m > 0 && rb2 == 0.0) {
                return f64::NEG_INFINITY;
            }
            if x == 0.0 && nu > 0 {
                return f64::NEG_INFINITY;
            }
            ln_binom(m_ant - 1, m)
                + xlogy(f64::from(m), gb * rb2)
                + xlogy(nuf, r2)
                + xlogy(nuf, x / c)
                + ln_bessel_i_reg(nuf, z)
        })
        .collect();
    head + log_sum_exp(&terms)
}

/// NLOS density: the finite Erlang-type sum with κ = 0.
pub fn g2a_pdf_nlos(g: &G2aParams, x: f64) -> Result<f64> {
    check_nonneg(x)?;
    let m_ant = g.antennas;
    let gb = g.mean_snr;
    let (r2, rb2) = (g.rho2(), g.rho_bar2());
    let terms: Vec<f64> = (0..m_ant)
        .map(|m| {
            let nu = f64::from(m_ant - m - 1);
            if (nu > 0.0 && r2 == 0.0) || (m > 0 && rb2 == 0.0) || (x == 0.0 && nu > 0.0) {
                return f64::NEG_INFINITY;
            }
            ln_binom(m_ant - 1, m) + xlogy(nu, r2) - ln_gamma(nu + 1.0) + xlogy(f64::from(m), gb * rb2) + xlogy(nu, x)
        })
        .collect();
    Ok((log_sum_exp(&terms) - x / gb - f64::from(m_ant) * gb.ln()).exp())
}

/// p_LOS f^LOS + p_NLOS f^NLOS with one parameter set per state.
pub fn g2a_pdf_mixture(g_los: &G2aParams, g_nlos: &G2aParams, w: &MixtureWeights, x: f64) -> Result<f64> {
    let a = if w.p_los > 0.0 { g2a_pdf_los(g_los, x)? } else { 0.0 };
    let b = if w.p_nlos > 0.0 { g2a_pdf_nlos(g_nlos, x)? } else { 0.0 };
    Ok(w.p_los * a + w.p_nlos * b)
}

/// High-SNR density plateau, constant in x.
pub fn g2a_pdf_asymptotic(g: &G2aParams, los: bool) -> f64 {
    let mf = f64::from(g.antennas);
    let rb2 = g.rho_bar2();
    let nlos = rb2.powi(g.antennas as i32 - 1) / g.mean_snr;
    if !los {
        return nlos;
    }
    let kap = g.k_factor;
    let c = kap * rb2 + 1.0;
    (-mf * kap * g.rho2() / c).exp() * ((kap + 1.0) / c).powf(mf) * nlos
}

/// Asymptotic CDF expression p_LOS f^LOS_∞ x + p_NLOS f^NLOS_∞ x, clamped to [0, 1].
pub fn g2a_cdf_upper(g_los: &G2aParams, g_nlos: &G2aParams, w: &MixtureWeights, x: f64) -> f64 {
    if !(x > 0.0) {
        return 0.0;
    }
    let v = w.p_los * g2a_pdf_asymptotic(g_los, true) * x + w.p_nlos * g2a_pdf_asymptotic(g_nlos, false) * x;
    v.clamp(0.0, 1.0)
}

/// Exact LOS CDF through the binomial-mixture form of the density.
pub fn g2a_cdf_los(g: &G2aParams, x: f64) -> Result<f64> {
    check_nonneg(x)?;
    Ok(g.mixture_components().iter().map(|(w, p)| w * p.cdf(x)).sum::<f64>().clamp(0.0, 1.0))
}

/// Exact NLOS CDF (κ = 0 in the mixture form).
pub fn g2a_cdf_nlos(g: &G2aParams, x: f64) -> Result<f64> {
    let g0 = G2aParams { k_factor: 0.0, ..*g };
    g2a_cdf_los(&g0, x)
}

pub fn g2a_cdf_mixture(g_los: &G2aParams, g_nlos: &G2aParams, w: &MixtureWeights, x: f64) -> Result<f64> {
    let a = if w.p_los > 0.0 { g2a_cdf_los(g_los, x)? } else { 0.0 };
    let b = if w.p_nlos > 0.0 { g2a_cdf_nlos(g_nlos, x)? } else { 0.0 };
    Ok(w.p_los * a + w.p_nlos * b)
}

/// Laplace transform of the LOS law at real s ≥ 0.
pub fn g2a_laplace_los(g: &G2aParams, s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::arg(format!("Laplace argument must be >= 0, got {s}")));
    }
    Ok(g2a_laplace_los_complex(g, Complex64::new(s, 0.0)).re)
}

/// The same transform continued to complex s, for contour inversion.
pub fn g2a_laplace_los_complex(g: &G2aParams, s: Complex64) -> Complex64 {
    let mk = f64::from(g.antennas) * g.k_factor;
    let a = 1.0 + s * g.delta1();
    let b = 1.0 + s * g.delta2();
    let m = g.antennas as i32;
    (mk * (a / b - 1.0)).exp() * a.powi(m - 1) / b.powi(m)
}
