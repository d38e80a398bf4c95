//! Geometry, link budget and channel aging.

mod config;
pub mod propagation;

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::bessel_j0;

pub use config::{load_scenario, AlphaPrefactor, AgingConfig, BsConfig, EnvCoefficients, Geometry,
    LosModels, PathLossModels, RadioConfig, RisConfig, ScenarioConfig};
pub use propagation::{LosCoeffs, LosModel, PathLossCoeffs, PathLossModel};

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 3]> for Point3 {
    fn from(v: [f64; 3]) -> Self {
        Point3::new(v[0], v[1], v[2])
    }
}

impl From<Point3> for [f64; 3] {
    fn from(p: Point3) -> Self {
        [p.x, p.y, p.z]
    }
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn horizontal_distance(&self, o: &Point3) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    pub fn distance(&self, o: &Point3) -> f64 {
        self.horizontal_distance(o).hypot(self.z - o.z)
    }
}

/// The three links of the relay chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkClass {
    /// BS → UAV
    G2a,
    /// UAV → RIS
    A2g,
    /// RIS → ground user
    RisGround,
}

/// σ² = N0 + 10 log10 B + F, in dBm.
pub fn noise_power(bandwidth_hz: f64, noise_density_dbm_hz: f64, noise_figure_db: f64) -> Result<f64> {
    if !(bandwidth_hz > 0.0) {
        return Err(Error::arg(format!("bandwidth must be positive, got {bandwidth_hz}")));
    }
    Ok(noise_density_dbm_hz + 10.0 * bandwidth_hz.log10() + noise_figure_db)
}

/// Elevation of `b` seen from `a`, in [−π/2, π/2].
pub fn elevation_angle(a: Point3, b: Point3) -> Result<f64> {
    let h = a.horizontal_distance(&b);
    let v = b.z - a.z;
    if h == 0.0 && v == 0.0 {
        return Err(Error::arg("elevation of coincident points is undefined"));
    }
    Ok(v.atan2(h))
}

/// Elevation-dependent Rician K-factor K0·exp((2θ/π) ln(Kπ/K0)), linear.
pub fn rician_k(theta_rad: f64, k0_db: f64, kpi_db: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&theta_rad) {
        return Err(Error::arg(format!("elevation {theta_rad} rad outside [0, pi/2]")));
    }
    // in dB the law is linear in θ, which keeps both endpoints exact
    let db = k0_db + (2.0 * theta_rad / PI) * (kpi_db - k0_db);
    Ok(10f64.powf(db / 10.0))
}

/// ρ = J0(2π f_d n Ts) with f_d = v fc / c.
pub fn temporal_correlation(v_mps: f64, fc_hz: f64, elapsed_samples: u64, ts_s: f64) -> f64 {
    if v_mps == 0.0 || elapsed_samples == 0 {
        return 1.0;
    }
    let fd = v_mps * fc_hz / SPEED_OF_LIGHT;
    bessel_j0(2.0 * PI * fd * elapsed_samples as f64 * ts_s)
}

/// Mean SNR 10^((P − σ²)/10)·ℓ.
pub fn mean_snr(tx_power_dbm: f64, pathloss_linear: f64, noise_dbm: f64) -> f64 {
    10f64.powf((tx_power_dbm - noise_dbm) / 10.0) * pathloss_linear
}

/// Derived per-link quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkState {
    pub pathloss_los_linear: f64,
    pub pathloss_nlos_linear: f64,
    pub p_los: f64,
    /// K-factor of the LOS state; the NLOS state is Rayleigh.
    pub k_factor_linear: f64,
    pub correlation: f64,
    pub mean_snr_los_linear: f64,
    pub mean_snr_nlos_linear: f64,
    pub elevation_rad: f64,
}

impl LinkState {
    pub fn p_nlos(&self) -> f64 {
        1.0 - self.p_los
    }
}

/// A configuration together with every derived link state.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub g2a: LinkState,
    pub a2g: LinkState,
    pub rd: LinkState,
    pub noise_uav_dbm: f64,
    pub noise_gue_dbm: f64,
}

fn endpoints(g: &Geometry, class: LinkClass) -> (Point3, Point3, f64) {
    // (ground-side node, other node, terminal height for the 3GPP laws)
    match class {
        LinkClass::G2a => (g.bs, g.uav, g.uav.z),
        LinkClass::A2g => (g.ris, g.uav, g.uav.z),
        LinkClass::RisGround => (g.gue, g.ris, g.gue.z),
    }
}

/// LOS probability of a link class.
pub fn los_probability(class: LinkClass, geometry: &Geometry, env: &EnvCoefficients) -> f64 {
    let (a, b, h) = endpoints(geometry, class);
    let d2d = a.horizontal_distance(&b);
    match class {
        LinkClass::G2a => env.los.g2a.probability(d2d, h),
        LinkClass::A2g => env.los.a2g.probability(d2d, h),
        LinkClass::RisGround => {
            let _ = (d2d, h);
            if env.rd_los {
                1.0
            } else {
                0.0
            }
        }
    }
}

/// Linear path gain ℓ ∈ (0, 1] of a link in the given LOS state.
pub fn path_loss(class: LinkClass, los: bool, geometry: &Geometry, radio: &RadioConfig, env: &EnvCoefficients) -> Result<f64> {
    let (a, b, h) = endpoints(geometry, class);
    let d = a.distance(&b);
    if !(d > 0.0) {
        return Err(Error::arg("path loss needs a positive link distance"));
    }
    let (los_model, nlos_model) = match class {
        LinkClass::G2a => (env.pathloss.g2a_los, env.pathloss.g2a_nlos),
        LinkClass::A2g => (env.pathloss.a2g_los, env.pathloss.a2g_nlos),
        LinkClass::RisGround => (env.pathloss.rd_los, env.pathloss.rd_nlos),
    };
    let fc = radio.carrier_freq_hz;
    let los_db = los_model.coeffs().loss_db(d, fc, h);
    let db = if los {
        los_db
    } else {
        let c = nlos_model.coeffs();
        let nl = c.loss_db(d, fc, h);
        if c.floor_los {
            nl.max(los_db)
        } else {
            nl
        }
    };
    Ok(propagation::gain_from_db(db).min(1.0))
}

fn clamped_elevation(a: Point3, b: Point3) -> Result<f64> {
    Ok(elevation_angle(a, b)?.clamp(0.0, FRAC_PI_2))
}

impl Scenario {
    /// Validates the configuration and derives every link state.
    pub fn from_config(config: ScenarioConfig) -> Result<Self> {
        config.validate()?;
        let g = &config.geometry;
        let r = &config.radio;
        let env = &config.env;
        let nf_u = r.noise_figure_uav_db.unwrap_or(r.noise_figure_db);
        let nf_d = r.noise_figure_gue_db.unwrap_or(r.noise_figure_db);
        let noise_u = noise_power(r.bandwidth_hz, r.noise_density_dbm_hz, nf_u)?;
        let noise_d = noise_power(r.bandwidth_hz, r.noise_density_dbm_hz, nf_d)?;
        let rho = config.aging.correlation(r);

        let link = |class: LinkClass| -> Result<(f64, f64, f64, f64, f64)> {
            let (a, b, _) = endpoints(g, class);
            let theta = clamped_elevation(a, b)?;
            let k = rician_k(theta, env.k0_db, env.kpi_db)?;
            let p = los_probability(class, g, env);
            let l_los = path_loss(class, true, g, r, env)?;
            let l_nlos = path_loss(class, false, g, r, env)?;
            Ok((theta, k, p, l_los, l_nlos))
        };

        let (th, k, p, ll, ln) = link(LinkClass::G2a)?;
        let g2a = LinkState {
            pathloss_los_linear: ll,
            pathloss_nlos_linear: ln,
            p_los: p,
            k_factor_linear: k,
            correlation: rho,
            mean_snr_los_linear: mean_snr(r.tx_power_bs_dbm, ll, noise_u),
            mean_snr_nlos_linear: mean_snr(r.tx_power_bs_dbm, ln, noise_u),
            elevation_rad: th,
        };

        let (th_rd, k_rd, _, ll_rd, ln_rd) = link(LinkClass::RisGround)?;
        // the R-D hop is static, so its state is a fixed configuration choice
        let rd_gain = if env.rd_los { ll_rd } else { ln_rd };
        let rd = LinkState {
            pathloss_los_linear: ll_rd,
            pathloss_nlos_linear: ln_rd,
            p_los: if env.rd_los { 1.0 } else { 0.0 },
            k_factor_linear: if env.rd_los { k_rd } else { 0.0 },
            correlation: 1.0,
            mean_snr_los_linear: mean_snr(r.tx_power_uav_dbm, ll_rd, noise_d),
            mean_snr_nlos_linear: mean_snr(r.tx_power_uav_dbm, ln_rd, noise_d),
            elevation_rad: th_rd,
        };

        let (th, k, p, ll, ln) = link(LinkClass::A2g)?;
        let a2g = LinkState {
            pathloss_los_linear: ll,
            pathloss_nlos_linear: ln,
            p_los: p,
            k_factor_linear: k,
            correlation: rho,
            mean_snr_los_linear: mean_snr(r.tx_power_uav_dbm, ll * rd_gain, noise_d),
            mean_snr_nlos_linear: mean_snr(r.tx_power_uav_dbm, ln * rd_gain, noise_d),
            elevation_rad: th,
        };

        Ok(Self {
            config,
            g2a,
            a2g,
            rd,
            noise_uav_dbm: noise_u,
            noise_gue_dbm: noise_d,
        })
    }

    /// Re-derives the scenario after editing a copy of its configuration.
    pub fn with(&self, edit: impl FnOnce(&mut ScenarioConfig)) -> Result<Self> {
        let mut cfg = self.config.clone();
        edit(&mut cfg);
        Scenario::from_config(cfg)
    }

    pub fn antennas(&self) -> u32 {
        self.config.bs.antennas
    }

    pub fn ris_elements(&self) -> u32 {
        self.config.ris.elements
    }

    /// K-factor of the R–D hop as used by the A2G laws.
    pub fn k_factor_rd(&self) -> f64 {
        self.rd.k_factor_linear
    }

    /// K-factor assumed for the delayed U–R estimate.
    pub fn k_factor_ur_est(&self) -> f64 {
        self.config.env.k_factor_ur_est.unwrap_or(self.a2g.k_factor_linear)
    }
}
