use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::snccs::{check_nonneg, SnccsParams};
use super::MixtureWeights;
use crate::error::{Error, Result};
use crate::numeric::CdfTable;
use crate::scenario::{AlphaPrefactor, Scenario};
use crate::specfun::{gamma_pq, laguerre_half, ln_bessel_k_ladder, ln_gamma};

/// Truncation length of the product-form series used in the reference study.
pub const A2G_SERIES_TERMS: usize = 135;
pub const A2G_TAIL_TOL: f64 = 1e-10;

/// UAV → RIS → user hop in one LOS state of the U–R link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct A2gParams {
    pub ris_elements: u32,
    pub k_factor_ur: f64,
    pub k_factor_ur_est: f64,
    pub k_factor_rd: f64,
    pub correlation: f64,
    pub mean_snr: f64,
    pub alpha_prefactor: AlphaPrefactor,
}

impl A2gParams {
    pub fn new(
        ris_elements: u32,
        k_factor_ur: f64,
        k_factor_ur_est: f64,
        k_factor_rd: f64,
        correlation: f64,
        mean_snr: f64,
    ) -> Result<Self> {
        if ris_elements == 0 {
            return Err(Error::arg("need at least one RIS element"));
        }
        for (name, k) in [("k_factor_ur", k_factor_ur), ("k_factor_ur_est", k_factor_ur_est), ("k_factor_rd", k_factor_rd)] {
            if !(k >= 0.0 && k.is_finite()) {
                return Err(Error::arg(format!("{name} must be finite and >= 0, got {k}")));
            }
        }
        if !(correlation.abs() <= 1.0) {
            return Err(Error::arg(format!("correlation must lie in [-1,1], got {correlation}")));
        }
        if !(mean_snr > 0.0 && mean_snr.is_finite()) {
            return Err(Error::arg(format!("mean SNR must be positive, got {mean_snr}")));
        }
        Ok(Self {
            ris_elements,
            k_factor_ur,
            k_factor_ur_est,
            k_factor_rd,
            correlation,
            mean_snr,
            alpha_prefactor: AlphaPrefactor::QuarterPi,
        })
    }

    /// LOS or NLOS (U–R K-factors zero) parameters of a scenario.
    pub fn from_scenario(s: &Scenario, los: bool) -> Result<Self> {
        let l = &s.a2g;
        let (k, k_est, g) = if los {
            (l.k_factor_linear, s.k_factor_ur_est(), l.mean_snr_los_linear)
        } else {
            (0.0, 0.0, l.mean_snr_nlos_linear)
        };
        let mut a = Self::new(s.ris_elements(), k, k_est, s.k_factor_rd(), l.correlation, g)?;
        a.alpha_prefactor = s.config.env.alpha_prefactor;
        Ok(a)
    }

    pub fn rho2(&self) -> f64 {
        self.correlation * self.correlation
    }

    pub fn rho_bar2(&self) -> f64 {
        (1.0 - self.rho2()).max(0.0)
    }

    pub fn alpha_chi(&self) -> f64 {
        alpha_chi(self.k_factor_ur_est, self.k_factor_rd, self.alpha_prefactor)
    }

    pub fn beta_chi(&self) -> f64 {
        beta_chi(self.alpha_chi())
    }

    /// Jensen working values (μ_χ, σ²_χ).
    pub fn jensen_moments(&self) -> Result<(f64, f64)> {
        chi_moment_bounds(self.correlation, self.ris_elements, self.alpha_chi())
    }
}

/// Normalised mean-envelope product
/// c·L½(−κ̂)/√(κ̂+1)·L½(−κ_RD)/√(κ_RD+1), c = π/4 or π/2.
pub fn alpha_chi(k_ur_est: f64, k_rd: f64, prefactor: AlphaPrefactor) -> f64 {
    let c = match prefactor {
        AlphaPrefactor::QuarterPi => FRAC_PI_4,
        AlphaPrefactor::HalfPi => FRAC_PI_2,
    };
    c * laguerre_half(-k_ur_est) / (k_ur_est + 1.0).sqrt() * laguerre_half(-k_rd) / (k_rd + 1.0).sqrt()
}

pub fn beta_chi(alpha: f64) -> f64 {
    1.0 - alpha * alpha
}

/// Jensen bounds μ_χ ≥ (ρ/ρ̄)√N α and σ²_χ ≥ 1 + (ρ²/ρ̄²) N β.
pub fn chi_moment_bounds(rho: f64, n: u32, alpha: f64) -> Result<(f64, f64)> {
    let rb2 = 1.0 - rho * rho;
    if !(rb2 > 0.0) {
        return Err(Error::Singular("chi moments need |rho| < 1".into()));
    }
    let nf = f64::from(n);
    let mu = rho / rb2.sqrt() * nf.sqrt() * alpha;
    let var = 1.0 + rho * rho / rb2 * nf * beta_chi(alpha);
    Ok((mu, var))
}

fn match_rhs(mu: f64, var: f64) -> [f64; 3] {
    let m2 = mu * mu;
    let t = var - 0.5;
    [var + m2, 2.0 * t * t + 4.0 * m2 * t + 0.5, 4.0 * t * t * t + 12.0 * m2 * t * t + 0.5]
}

/// Closed-form three-moment SNCCS fit for |χ|².
///
/// Solves Ω(k+λ) = R1, Ω²(k+2λ) = R2, Ω³(k+3λ) = R3. The smaller root of
/// R1Ω² − 2R2Ω + R3 = 0 is taken; it is written as R3/(R2 + √D) to avoid
/// cancellation.
pub fn moment_match_snccs(mu: f64, var: f64) -> Result<SnccsParams> {
    if !(var > 0.0 && var.is_finite() && mu.is_finite()) {
        return Err(Error::arg(format!("need finite mean and positive variance, got ({mu}, {var})")));
    }
    let [r1, r2, r3] = match_rhs(mu, var);
    let disc = r2 * r2 - r1 * r3;
    if disc < 0.0 {
        return Err(Error::MatchingFailure(format!(
            "negative discriminant {disc:e} for mean {mu}, variance {var}"
        )));
    }
    let denom = r2 + disc.sqrt();
    if !(denom > 0.0 && r3 > 0.0) {
        return Err(Error::MatchingFailure(format!("no positive scale for mean {mu}, variance {var}")));
    }
    let omega = r3 / denom;
    let k = (2.0 * r1 - r2 / omega) / omega;
    let mut lambda = (r2 / omega - r1) / omega;
    // D = 0 puts λ on zero up to rounding
    if lambda < 0.0 && lambda > -1e-12 * (k.abs() + 1.0) {
        lambda = 0.0;
    }
    if !(k > 0.0) || lambda < 0.0 {
        return Err(Error::MatchingFailure(format!("fit gives k={k}, lambda={lambda}")));
    }
    SnccsParams::new(omega, k, lambda).map_err(|e| Error::MatchingFailure(e.to_string()))
}

/// Largest relative residual of a fitted triple in the three moment equations.
pub fn moment_match_residual(p: &SnccsParams, mu: f64, var: f64) -> f64 {
    let rhs = match_rhs(mu, var);
    (1..=3)
        .map(|n| {
            let lhs = p.omega.powi(n) * (p.k + f64::from(n as u32) * p.lambda);
            let r = rhs[n as usize - 1];
            (lhs - r).abs() / r.abs()
        })
        .fold(0.0, f64::max)
}

/// Where the χ moments used for matching come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChiMoments {
    /// Jensen working values.
    Jensen,
    /// Externally supplied values, typically Monte Carlo estimates.
    Given { mean: f64, variance: f64 },
}

/// A truncated series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Outer blocks summed.
    pub terms: usize,
    /// Probability mass of the blocks left out.
    pub tail_mass: f64,
    /// Set when `max_terms` was hit with the tail still above tolerance.
    pub truncated: bool,
}

/// Precomputed product-form LOS density.
///
/// The law is a Poisson(Nκ_RD) × Poisson(λ_R) mixture of products of two
/// gamma variables with shapes N + j and k_R + m − j, whose density is a
/// K-Bessel function of √(Ξ_R x). Block m collects every term with
/// i + j = m, so the mass left after M blocks is a Poisson(Nκ_RD + λ_R) tail.
#[derive(Debug, Clone)]
pub struct A2gSeries {
    params: A2gParams,
    matched: SnccsParams,
    xi_r: f64,
    blocks: usize,
    tail_mass: f64,
    truncated: bool,
    // (ln constant, s/2, order offset n = 2j − m) per (m, j)
    terms: Vec<(f64, f64, i64)>,
    order_base: f64,
}

fn ln_poisson(i: usize, mean: f64) -> f64 {
    if mean == 0.0 {
        return if i == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    let i = i as f64;
    -mean + i * mean.ln() - ln_gamma(i + 1.0)
}

impl A2gSeries {
    pub fn new(params: &A2gParams, moments: ChiMoments, max_terms: usize, tail_tol: f64) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::arg("max_terms must be at least 1"));
        }
        let rb2 = params.rho_bar2();
        if !(rb2 > 0.0) {
            return Err(Error::Singular("product-form law needs |rho| < 1".into()));
        }
        let (mu, var) = match moments {
            ChiMoments::Jensen => params.jensen_moments()?,
            ChiMoments::Given { mean, variance } => (mean, variance),
        };
        let matched = moment_match_snccs(mu, var)?;
        let nf = f64::from(params.ris_elements);
        let krd = params.k_factor_rd;
        let xi_r = 4.0 * (krd + 1.0) / (rb2 * params.mean_snr * matched.omega);
        let lam1 = nf * krd;
        let lam2 = matched.lambda;

        let mut blocks = 0;
        let mut tail_mass = 1.0;
        while blocks < max_terms {
            blocks += 1;
            // P(Poisson > m) = P(m+1, mean), the regularised lower gamma
            tail_mass = if lam1 + lam2 == 0.0 { 0.0 } else { gamma_pq(blocks as f64, lam1 + lam2).0 };
            if tail_mass < tail_tol {
                break;
            }
        }
        let truncated = tail_mass >= tail_tol;

        let ln2 = std::f64::consts::LN_2;
        let mut terms = Vec::new();
        for m in 0..blocks {
            for j in 0..=m {
                let w = ln_poisson(j, lam1) + ln_poisson(m - j, lam2);
                if w == f64::NEG_INFINITY {
                    continue;
                }
                let a = nf + j as f64;
                let b = matched.k + (m - j) as f64;
                let c = w + ln2 - ln_gamma(a) - ln_gamma(b);
                terms.push((c, 0.5 * (a + b), 2 * j as i64 - m as i64));
            }
        }
        Ok(Self {
            params: *params,
            matched,
            xi_r,
            blocks,
            tail_mass,
            truncated,
            terms,
            order_base: nf - matched.k,
        })
    }

    pub fn params(&self) -> &A2gParams {
        &self.params
    }

    /// Matched (Ω_R, k_R, λ_R).
    pub fn matched(&self) -> &SnccsParams {
        &self.matched
    }

    pub fn xi_r(&self) -> f64 {
        self.xi_r
    }

    pub fn terms(&self) -> usize {
        self.blocks
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return f64::NEG_INFINITY;
        }
        let y = (self.xi_r * x).sqrt();
        let lx = (0.25 * self.xi_r * x).ln();
        let ln_x = x.ln();

        // Orders r + n share the fractional part of r (n ≥ −r) or of −r.
        let r = self.order_base;
        let fl = r.floor();
        let fa = r - fl;
        let fb = if fa > 0.0 { 1.0 - fa } else { 0.0 };
        let nmax = self.blocks as i64;
        let fl_i = fl as i64;
        let count_a = (fl_i + nmax + 1).max(0) as usize;
        let count_b = (-fl_i + nmax + 1).max(0) as usize;
        let lad_a = if count_a > 0 { ln_bessel_k_ladder(fa, y, count_a).unwrap_or_default() } else { Vec::new() };
        let lad_b = if count_b > 0 { ln_bessel_k_ladder(fb, y, count_b).unwrap_or_default() } else { Vec::new() };
        let shift_b = if fa > 0.0 { -1 } else { 0 };
        let ln_k = |n: i64| -> f64 {
            let ia = fl_i + n;
            if ia >= 0 {
                lad_a.get(ia as usize).copied().unwrap_or(f64::NEG_INFINITY)
            } else {
                let ib = shift_b - fl_i - n;
                lad_b.get(ib as usize).copied().unwrap_or(f64::NEG_INFINITY)
            }
        };

        let mut vals = Vec::with_capacity(self.terms.len());
        let mut top = f64::NEG_INFINITY;
        for &(c, half_s, n) in &self.terms {
            let v = c + half_s * lx - ln_x + ln_k(n);
            top = top.max(v);
            vals.push(v);
        }
        if top == f64::NEG_INFINITY || top.is_nan() {
            return top;
        }
        top + vals.iter().map(|v| (v - top).exp()).sum::<f64>().ln()
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    pub fn value(&self, x: f64) -> SeriesValue {
        SeriesValue {
            value: self.pdf(x),
            terms: self.blocks,
            tail_mass: self.tail_mass,
            truncated: self.truncated,
        }
    }
}

/// LOS density by the product-form series with Jensen moments.
///
/// Builds the series for a single point; use [`A2gSeries`] for grids.
pub fn a2g_pdf_los_series(a: &A2gParams, x: f64, max_terms: usize, tail_tol: f64) -> Result<SeriesValue> {
    if !(x > 0.0) {
        return Err(Error::arg(format!("series density needs x > 0, got {x}")));
    }
    Ok(A2gSeries::new(a, ChiMoments::Jensen, max_terms, tail_tol)?.value(x))
}

/// Large-N collapse of the A2G law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LargeNLaw {
    Snccs(SnccsParams),
    /// ρ̄ = 0: the SNR is deterministic at this value.
    PointMass(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeN {
    pub law: LargeNLaw,
    /// N < 16, where the central-limit argument is weak.
    pub small_n_warning: bool,
}

pub const LARGE_N_MIN: u32 = 16;

fn large_n_with_alpha(a: &A2gParams, alpha: f64) -> LargeN {
    let nf = f64::from(a.ris_elements);
    let rb2 = a.rho_bar2();
    let law = if rb2 > 0.0 {
        LargeNLaw::Snccs(SnccsParams {
            omega: rb2 * a.mean_snr * nf,
            k: 1.0,
            lambda: nf * a.rho2() * alpha * alpha / rb2,
        })
    } else {
        LargeNLaw::PointMass(a.mean_snr * nf * nf * alpha * alpha)
    };
    LargeN {
        law,
        small_n_warning: a.ris_elements < LARGE_N_MIN,
    }
}

/// SNCCS(ρ̄²γ̄N, 1, Nρ²α²/ρ̄²).
pub fn a2g_large_n(a: &A2gParams) -> LargeN {
    large_n_with_alpha(a, a.alpha_chi())
}

impl LargeNLaw {
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            LargeNLaw::Snccs(p) => p.cdf(x),
            LargeNLaw::PointMass(v) => {
                if x >= *v {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            LargeNLaw::Snccs(p) => p.mean(),
            LargeNLaw::PointMass(v) => *v,
        }
    }
}

pub fn a2g_pdf_large_n(a: &A2gParams, x: f64) -> Result<f64> {
    check_nonneg(x)?;
    match a2g_large_n(a).law {
        LargeNLaw::Snccs(p) => Ok(p.pdf(x)),
        LargeNLaw::PointMass(v) => Err(Error::Singular(format!("A2G SNR is a point mass at {v} when rho = 1"))),
    }
}

/// p_LOS F(ρ̄²γ̄N, Nρ²α²/ρ̄²; x) + p_NLOS F(ρ̄²γ̄N, Nρ²/ρ̄²; x).
pub fn a2g_cdf_upper(a_los: &A2gParams, a_nlos: &A2gParams, w: &MixtureWeights, x: f64) -> f64 {
    if !(x > 0.0) {
        return 0.0;
    }
    let f_los = large_n_with_alpha(a_los, a_los.alpha_chi()).law.cdf(x);
    let f_nlos = large_n_with_alpha(a_nlos, 1.0).law.cdf(x);
    (w.p_los * f_los + w.p_nlos * f_nlos).clamp(0.0, 1.0)
}

/// A2G law in one LOS state, either the product-form series or the
/// large-N collapse.
#[derive(Debug, Clone)]
pub enum A2gLaw {
    Series(A2gSeries),
    LargeN(SnccsParams),
}

impl A2gLaw {
    /// Large-N law; fails for ρ = 1 where it degenerates to a point mass.
    pub fn large_n(a: &A2gParams) -> Result<Self> {
        match a2g_large_n(a).law {
            LargeNLaw::Snccs(p) => Ok(A2gLaw::LargeN(p)),
            LargeNLaw::PointMass(v) => Err(Error::Singular(format!("A2G SNR is a point mass at {v} when rho = 1"))),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match self {
            A2gLaw::Series(s) => s.pdf(x),
            A2gLaw::LargeN(p) => p.pdf(x),
        }
    }

    /// Rough mean, used to size CDF tables.
    pub fn scale(&self) -> f64 {
        match self {
            A2gLaw::Series(s) => {
                let a = s.params();
                // E‖g‖² = N for unit-power elements
                a.mean_snr * a.rho_bar2() * f64::from(a.ris_elements) * s.matched().mean()
            }
            A2gLaw::LargeN(p) => p.mean(),
        }
    }

    /// CDF tabulated from the density on a geometric grid.
    pub fn cdf_table(&self, nodes: usize) -> Result<CdfTable> {
        match self {
            A2gLaw::LargeN(p) => {
                let p = *p;
                let m = p.mean();
                CdfTable::from_pdf(move |x| p.pdf(x), m * 1e-8, m * 60.0, nodes)
            }
            A2gLaw::Series(s) => {
                let m = self.scale();
                CdfTable::from_pdf(|x| s.pdf(x), m * 1e-8, m * 60.0, nodes)
            }
        }
    }
}

/// p_LOS f^LOS + p_NLOS f^NLOS.
pub fn a2g_pdf_mixture(los: &A2gLaw, nlos: &A2gLaw, w: &MixtureWeights, x: f64) -> Result<f64> {
    check_nonneg(x)?;
    let a = if w.p_los > 0.0 { los.pdf(x) } else { 0.0 };
    let b = if w.p_nlos > 0.0 { nlos.pdf(x) } else { 0.0 };
    Ok(w.p_los * a + w.p_nlos * b)
}
