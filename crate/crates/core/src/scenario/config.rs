//! Sectioned TOML scenario documents.
//!
//! ```toml
//! [geometry]
//! bs = [0.0, 0.0, 10.0]
//! ris = [150.0, 0.0, 25.0]
//! uav = [100.0, 0.0, 300.0]
//! gue = [200.0, 0.0, 1.5]
//!
//! [radio]
//! carrier_freq_hz = 2e9
//! tx_power_bs_dbm = 33.0
//!
//! [aging]
//! uav_speed_mps = 10.0
//! sample_index = 7000
//! # correlation = 0.5      # pins ρ and bypasses the Doppler model
//!
//! [env]
//! k0_db = 0.0
//! kpi_db = 10.0
//! [env.los.g2a]
//! model = "umi-av"
//! [env.pathloss.rd_los]
//! model = "custom"
//! a = 32.45
//! b = 20.0
//! c = 20.0
//!
//! [ris]
//! elements = 400
//!
//! [bs]
//! antennas = 4
//! ```
//!
//! Every field is optional; missing fields take the reference defaults.

use serde::{Deserialize, Serialize};

use super::propagation::{LosModel, PathLossModel};
use super::{temporal_correlation, Point3, Scenario};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Geometry {
    pub bs: Point3,
    pub ris: Point3,
    pub uav: Point3,
    pub gue: Point3,
}

impl Default for Geometry {
    fn default() -> Self {
        Self {
            bs: Point3::new(0.0, 0.0, 10.0),
            ris: Point3::new(150.0, 0.0, 25.0),
            uav: Point3::new(100.0, 0.0, 300.0),
            gue: Point3::new(200.0, 0.0, 1.5),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadioConfig {
    pub carrier_freq_hz: f64,
    pub bandwidth_hz: f64,
    pub noise_density_dbm_hz: f64,
    pub noise_figure_db: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_figure_uav_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_figure_gue_db: Option<f64>,
    pub tx_power_bs_dbm: f64,
    pub tx_power_uav_dbm: f64,
    pub sampling_period_s: f64,
}

impl Default for RadioConfig {
    fn default() -> Self {
        Self {
            carrier_freq_hz: 2e9,
            bandwidth_hz: 1e7,
            noise_density_dbm_hz: -174.0,
            noise_figure_db: 5.0,
            noise_figure_uav_db: None,
            noise_figure_gue_db: None,
            tx_power_bs_dbm: 0.0,
            tx_power_uav_dbm: 0.0,
            sampling_period_s: 1e-7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AgingConfig {
    pub uav_speed_mps: f64,
    pub sample_index: u64,
    pub estimate_index: u64,
    /// Pins ρ for both aged hops instead of deriving it from the speed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correlation: Option<f64>,
}

impl Default for AgingConfig {
    fn default() -> Self {
        Self {
            uav_speed_mps: 10.0,
            sample_index: 7000,
            estimate_index: 0,
            correlation: None,
        }
    }
}

impl AgingConfig {
    pub fn correlation(&self, radio: &RadioConfig) -> f64 {
        self.correlation.unwrap_or_else(|| {
            temporal_correlation(
                self.uav_speed_mps,
                radio.carrier_freq_hz,
                self.sample_index - self.estimate_index,
                radio.sampling_period_s,
            )
        })
    }
}

/// Constant in front of the envelope-mean product α_χ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaPrefactor {
    /// π/4, the product of two Rice-envelope means.
    #[default]
    QuarterPi,
    /// π/2 as printed in the original derivation.
    HalfPi,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LosModels {
    pub g2a: LosModel,
    pub a2g: LosModel,
}

impl Default for LosModels {
    fn default() -> Self {
        Self {
            g2a: LosModel::UmiAv,
            a2g: LosModel::UmiAv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathLossModels {
    pub g2a_los: PathLossModel,
    pub g2a_nlos: PathLossModel,
    pub a2g_los: PathLossModel,
    pub a2g_nlos: PathLossModel,
    pub rd_los: PathLossModel,
    pub rd_nlos: PathLossModel,
}

impl Default for PathLossModels {
    fn default() -> Self {
        Self {
            g2a_los: PathLossModel::UmiAvLos,
            g2a_nlos: PathLossModel::UmiAvNlos,
            a2g_los: PathLossModel::UmiAvLos,
            a2g_nlos: PathLossModel::UmiAvNlos,
            rd_los: PathLossModel::UmiLos,
            rd_nlos: PathLossModel::UmiNlos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnvCoefficients {
    pub k0_db: f64,
    pub kpi_db: f64,
    /// LOS state of the static RIS → user link.
    pub rd_los: bool,
    /// K-factor of the delayed U–R estimate; defaults to the U–R K-factor.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_factor_ur_est: Option<f64>,
    pub alpha_prefactor: AlphaPrefactor,
    pub los: LosModels,
    pub pathloss: PathLossModels,
}

impl Default for EnvCoefficients {
    fn default() -> Self {
        Self {
            k0_db: 0.0,
            kpi_db: 10.0,
            rd_los: true,
            k_factor_ur_est: None,
            alpha_prefactor: AlphaPrefactor::QuarterPi,
            los: LosModels::default(),
            pathloss: PathLossModels::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RisConfig {
    pub elements: u32,
    /// Phase resolution used by the simulator; absent means continuous.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase_bits: Option<u32>,
}

impl Default for RisConfig {
    fn default() -> Self {
        Self {
            elements: 400,
            phase_bits: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BsConfig {
    pub antennas: u32,
}

impl Default for BsConfig {
    fn default() -> Self {
        Self { antennas: 4 }
    }
}

/// Full experiment description.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub geometry: Geometry,
    pub radio: RadioConfig,
    pub aging: AgingConfig,
    pub env: EnvCoefficients,
    pub ris: RisConfig,
    pub bs: BsConfig,
}

fn positive(field: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(field, format!("must be positive and finite, got {v}")))
    }
}

fn finite(field: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(field, "must be finite"))
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let g = &self.geometry;
        for (name, p) in [("geometry.bs", g.bs), ("geometry.ris", g.ris), ("geometry.uav", g.uav), ("geometry.gue", g.gue)] {
            if !p.is_finite() {
                return Err(Error::config(name, "coordinates must be finite"));
            }
        }
        let r = &self.radio;
        positive("radio.carrier_freq_hz", r.carrier_freq_hz)?;
        positive("radio.bandwidth_hz", r.bandwidth_hz)?;
        positive("radio.sampling_period_s", r.sampling_period_s)?;
        finite("radio.noise_density_dbm_hz", r.noise_density_dbm_hz)?;
        finite("radio.noise_figure_db", r.noise_figure_db)?;
        finite("radio.tx_power_bs_dbm", r.tx_power_bs_dbm)?;
        finite("radio.tx_power_uav_dbm", r.tx_power_uav_dbm)?;
        for (name, v) in [("radio.noise_figure_uav_db", r.noise_figure_uav_db), ("radio.noise_figure_gue_db", r.noise_figure_gue_db)] {
            if let Some(v) = v {
                finite(name, v)?;
            }
        }
        let a = &self.aging;
        if !(a.uav_speed_mps >= 0.0 && a.uav_speed_mps.is_finite()) {
            return Err(Error::config("aging.uav_speed_mps", "speed must be a finite value >= 0"));
        }
        if a.sample_index < a.estimate_index {
            return Err(Error::config("aging.sample_index", "sample_index must not precede estimate_index"));
        }
        if let Some(rho) = a.correlation {
            if !(rho.abs() <= 1.0) {
                return Err(Error::config("aging.correlation", format!("|rho| must be <= 1, got {rho}")));
            }
        }
        let e = &self.env;
        finite("env.k0_db", e.k0_db)?;
        finite("env.kpi_db", e.kpi_db)?;
        if e.kpi_db < e.k0_db {
            return Err(Error::config("env.kpi_db", "kpi_db must be >= k0_db"));
        }
        if let Some(k) = e.k_factor_ur_est {
            if !(k >= 0.0 && k.is_finite()) {
                return Err(Error::config("env.k_factor_ur_est", "must be a finite value >= 0"));
            }
        }
        e.los.g2a.validate("env.los.g2a")?;
        e.los.a2g.validate("env.los.a2g")?;
        if self.ris.elements == 0 {
            return Err(Error::config("ris.elements", "need at least one element"));
        }
        if self.ris.phase_bits == Some(0) {
            return Err(Error::config("ris.phase_bits", "phase_bits must be >= 1"));
        }
        if self.bs.antennas == 0 {
            return Err(Error::config("bs.antennas", "need at least one antenna"));
        }
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario configs always serialize")
    }
}

/// Locates the dotted key that a byte offset falls on.
fn field_at(text: &str, offset: usize) -> (usize, Option<String>) {
    let line_no = text[..offset.min(text.len())].matches('\n').count() + 1;
    let mut section = String::new();
    let mut key = None;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.starts_with('[') {
            section = t.trim_matches(|c| c == '[' || c == ']').trim().to_string();
        }
        if i + 1 == line_no {
            key = t.split_once('=').map(|(k, _)| k.trim().to_string());
            break;
        }
    }
    let field = key.map(|k| if section.is_empty() { k } else { format!("{section}.{k}") });
    (line_no, field)
}

/// Parses and resolves a scenario document.
pub fn load_scenario(text: &str) -> Result<Scenario> {
    let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| {
        let (line, field) = match e.span() {
            Some(span) => {
                let (l, f) = field_at(text, span.start);
                (Some(l), f)
            }
            None => (None, None),
        };
        Error::Config {
            field,
            line,
            message: e.message().trim().to_string(),
        }
    })?;
    Scenario::from_config(cfg)
}
