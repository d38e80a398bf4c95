//! Statistical link analysis for RIS-assisted UAV relaying with aged CSI.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`] special functions (Bessel, Marcum Q, Gaussian Q, ...)
//! * [`numeric`] quadrature, Laplace inversion and CDF tables
//! * [`scenario`] geometry, link budget and channel aging
//! * [`dists`] analytical SNR laws for both hops
//! * [`mcsim`] Monte Carlo reference simulator
//! * [`linkperf`] outage, thresholds, spectral efficiency and hardening
//! * [`oracle`] slow brute-force references used by tests and `validate`

pub mod dists;
pub mod error;
pub mod linkperf;
pub mod mcsim;
pub mod numeric;
pub mod oracle;
pub mod scenario;
pub mod specfun;

pub use error::{Error, Result};
