//! Coefficient-driven LOS-probability and path-loss laws.
//!
//! Shipped presets (all overridable):
//!
//! | name          | source                        | law |
//! |---------------|-------------------------------|-----|
//! | `umi`         | 3GPP TR 38.901 UMi street canyon | LOS probability, d1 = 18 m, p1 = 36 m |
//! | `umi-av`      | 3GPP TR 36.777 UMi-AV         | LOS probability for 22.5 m < h ≤ 300 m, `umi` below |
//! | `umi-los`     | TR 38.901 UMi LOS (PL1)       | 32.4 + 21 log10 d + 20 log10 fc |
//! | `umi-nlos`    | TR 38.901 UMi NLOS            | max(LOS, 22.4 + 35.3 log10 d + 21.3 log10 fc − 0.3 (h − 1.5)) |
//! | `umi-av-los`  | TR 36.777 UMi-AV LOS          | 30.9 + (22.25 − 0.5 log10 h) log10 d + 20 log10 fc |
//! | `umi-av-nlos` | TR 36.777 UMi-AV NLOS         | max(LOS, 32.4 + (43.2 − 7.6 log10 h) log10 d + 20 log10 fc) |
//!
//! Distances are in meters, fc in GHz, h is the terminal height.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// d1/p1 parameters of the 3GPP LOS-probability law
/// P = 1 for d ≤ d1, else d1/d + e^{−d/p1}(1 − d1/d), with
/// d1 = max(d1_a log10 h + d1_b, d1_min) and p1 = p1_a log10 h + p1_b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LosCoeffs {
    #[serde(default)]
    pub d1_a: f64,
    pub d1_b: f64,
    #[serde(default)]
    pub d1_min: f64,
    #[serde(default)]
    pub p1_a: f64,
    pub p1_b: f64,
}

impl LosCoeffs {
    pub const UMI: LosCoeffs = LosCoeffs {
        d1_a: 0.0,
        d1_b: 18.0,
        d1_min: 18.0,
        p1_a: 0.0,
        p1_b: 36.0,
    };
    pub const UMI_AV: LosCoeffs = LosCoeffs {
        d1_a: 294.05,
        d1_b: -432.94,
        d1_min: 18.0,
        p1_a: 233.98,
        p1_b: -0.95,
    };

    fn eval(&self, d2d: f64, h: f64) -> f64 {
        let lh = h.max(1e-3).log10();
        let d1 = (self.d1_a * lh + self.d1_b).max(self.d1_min);
        if d2d <= d1 {
            return 1.0;
        }
        let p1 = self.p1_a * lh + self.p1_b;
        let r = d1 / d2d;
        (r + (-d2d / p1).exp() * (1.0 - r)).clamp(0.0, 1.0)
    }
}

/// LOS-probability model of one link class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", deny_unknown_fields)]
pub enum LosModel {
    #[serde(rename = "fixed")]
    Fixed { p: f64 },
    #[serde(rename = "umi")]
    Umi,
    #[serde(rename = "umi-av")]
    UmiAv,
    #[serde(rename = "custom")]
    Custom(LosCoeffs),
}

/// Aerial terminals above this height use the UMi-AV law.
pub const UMI_AV_MIN_HEIGHT: f64 = 22.5;

impl LosModel {
    pub fn probability(&self, d2d: f64, h_ut: f64) -> f64 {
        match self {
            LosModel::Fixed { p } => p.clamp(0.0, 1.0),
            LosModel::Umi => LosCoeffs::UMI.eval(d2d, h_ut),
            LosModel::UmiAv if h_ut > UMI_AV_MIN_HEIGHT => LosCoeffs::UMI_AV.eval(d2d, h_ut),
            LosModel::UmiAv => LosCoeffs::UMI.eval(d2d, h_ut),
            LosModel::Custom(c) => c.eval(d2d, h_ut),
        }
    }

    pub(crate) fn validate(&self, field: &str) -> Result<()> {
        match self {
            LosModel::Fixed { p } if !(0.0..=1.0).contains(p) => {
                Err(Error::config(field, format!("fixed LOS probability {p} outside [0,1]")))
            }
            LosModel::Custom(c) if !(c.p1_b.is_finite() && c.d1_b.is_finite()) => {
                Err(Error::config(field, "non-finite LOS coefficients"))
            }
            _ => Ok(()),
        }
    }
}

/// PL[dB] = a + (b + b_h log10 h) log10 d + c log10 fc + e_h (h − 1.5),
/// optionally floored by the same link's LOS law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathLossCoeffs {
    pub a: f64,
    pub b: f64,
    #[serde(default)]
    pub b_h: f64,
    pub c: f64,
    #[serde(default)]
    pub e_h: f64,
    #[serde(default)]
    pub floor_los: bool,
}

impl PathLossCoeffs {
    pub const UMI_LOS: PathLossCoeffs = PathLossCoeffs {
        a: 32.4,
        b: 21.0,
        b_h: 0.0,
        c: 20.0,
        e_h: 0.0,
        floor_los: false,
    };
    pub const UMI_NLOS: PathLossCoeffs = PathLossCoeffs {
        a: 22.4,
        b: 35.3,
        b_h: 0.0,
        c: 21.3,
        e_h: -0.3,
        floor_los: true,
    };
    pub const UMI_AV_LOS: PathLossCoeffs = PathLossCoeffs {
        a: 30.9,
        b: 22.25,
        b_h: -0.5,
        c: 20.0,
        e_h: 0.0,
        floor_los: false,
    };
    pub const UMI_AV_NLOS: PathLossCoeffs = PathLossCoeffs {
        a: 32.4,
        b: 43.2,
        b_h: -7.6,
        c: 20.0,
        e_h: 0.0,
        floor_los: true,
    };

    pub fn loss_db(&self, d3d: f64, fc_hz: f64, h_ut: f64) -> f64 {
        self.a
            + (self.b + self.b_h * h_ut.max(1e-3).log10()) * d3d.log10()
            + self.c * (fc_hz / 1e9).log10()
            + self.e_h * (h_ut - 1.5)
    }
}

/// Path-loss model of one (link class, LOS state) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", deny_unknown_fields)]
pub enum PathLossModel {
    #[serde(rename = "umi-los")]
    UmiLos,
    #[serde(rename = "umi-nlos")]
    UmiNlos,
    #[serde(rename = "umi-av-los")]
    UmiAvLos,
    #[serde(rename = "umi-av-nlos")]
    UmiAvNlos,
    #[serde(rename = "custom")]
    Custom(PathLossCoeffs),
}

impl PathLossModel {
    pub fn coeffs(&self) -> PathLossCoeffs {
        match self {
            PathLossModel::UmiLos => PathLossCoeffs::UMI_LOS,
            PathLossModel::UmiNlos => PathLossCoeffs::UMI_NLOS,
            PathLossModel::UmiAvLos => PathLossCoeffs::UMI_AV_LOS,
            PathLossModel::UmiAvNlos => PathLossCoeffs::UMI_AV_NLOS,
            PathLossModel::Custom(c) => *c,
        }
    }
}

/// Linear gain 10^(−PL/10) from a dB loss.
pub fn gain_from_db(loss_db: f64) -> f64 {
    10f64.powf(-loss_db / 10.0)
}
