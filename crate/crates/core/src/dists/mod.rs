//! Analytical SNR laws of both hops.
//!
//! * [`snccs`](SnccsParams): the scaled noncentral chi-square kernel.
//! * G2A: exact LOS/NLOS densities, their Laplace transform, the high-SNR
//!   plateau and the resulting CDF expression.
//! * A2G: χ-moment matching, the product-form LOS series, the large-N
//!   collapse and its CDF expression.
//!
//! Every evaluator is a pure function of immutable parameter records.

mod a2g;
mod g2a;
mod snccs;

pub use a2g::{
    a2g_cdf_upper, a2g_large_n, a2g_pdf_large_n, a2g_pdf_los_series, a2g_pdf_mixture, alpha_chi, beta_chi,
    chi_moment_bounds, moment_match_residual, moment_match_snccs, A2gLaw, A2gParams, A2gSeries, ChiMoments,
    LargeN, LargeNLaw, SeriesValue, A2G_SERIES_TERMS, A2G_TAIL_TOL, LARGE_N_MIN,
};
pub use g2a::{
    g2a_cdf_los, g2a_cdf_mixture, g2a_cdf_nlos, g2a_cdf_upper, g2a_laplace_los, g2a_laplace_los_complex,
    g2a_pdf_asymptotic, g2a_pdf_los, g2a_pdf_mixture, g2a_pdf_nlos, G2aParams,
};
pub use snccs::{snccs_cdf, snccs_pdf, SnccsParams};

use crate::error::{Error, Result};

/// LOS/NLOS state probabilities of a link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureWeights {
    pub p_los: f64,
    pub p_nlos: f64,
}

impl MixtureWeights {
    pub fn new(p_los: f64, p_nlos: f64) -> Result<Self> {
        if !(p_los >= 0.0 && p_nlos >= 0.0 && ((p_los + p_nlos) - 1.0).abs() <= 1e-12) {
            return Err(Error::arg(format!("weights ({p_los}, {p_nlos}) are not a probability pair")));
        }
        Ok(Self { p_los, p_nlos })
    }

    pub fn from_los(p_los: f64) -> Result<Self> {
        Self::new(p_los, 1.0 - p_los)
    }
}
