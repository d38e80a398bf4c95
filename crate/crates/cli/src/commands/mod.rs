mod outage;
mod pdf;
mod se_sweep;
mod validate;

pub use outage::{run_outage, OutageArgs};
pub use pdf::{run_pdf, ChiMode, PdfArgs, PdfHop, PdfMode};
pub use se_sweep::{run_se_sweep, SeSweepArgs};
pub use validate::{run_validate, Suite, ValidateArgs};

use risage::linkperf::A2gThresholdRule;

/// Stream ids; every command draws from its own fixed set.
pub(crate) const STREAM_G2A: u64 = 1;
pub(crate) const STREAM_A2G: u64 = 2;
pub(crate) const STREAM_CHI: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ThresholdMode {
    /// Normal approximation of the Rice envelope.
    Gaussian,
    /// Bisection on the noncentral chi-square CDF.
    Marcum,
}

impl From<ThresholdMode> for A2gThresholdRule {
    fn from(m: ThresholdMode) -> Self {
        match m {
            ThresholdMode::Gaussian => A2gThresholdRule::Gaussian,
            ThresholdMode::Marcum => A2gThresholdRule::MarcumExact,
        }
    }
}
