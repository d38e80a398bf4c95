use approx::assert_relative_eq;
use proptest::prelude::*;
use risage::scenario::*;
use risage::Error;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

#[test]
fn noise_power_examples() {
    assert_relative_eq!(noise_power(1e7, -174.0, 5.0).unwrap(), -99.0, epsilon = 1e-12);
    assert_relative_eq!(noise_power(1.0, -174.0, 0.0).unwrap(), -174.0);
    assert!((noise_power(2e7, -174.0, 5.0).unwrap() + 95.99).abs() < 5e-3);
    assert!(noise_power(0.0, -174.0, 5.0).is_err());
}

#[test]
fn elevation_examples() {
    let o = Point3::new(0.0, 0.0, 0.0);
    assert_relative_eq!(elevation_angle(o, Point3::new(0.0, 0.0, 100.0)).unwrap(), FRAC_PI_2);
    assert_eq!(elevation_angle(o, Point3::new(100.0, 0.0, 0.0)).unwrap(), 0.0);
    let th = elevation_angle(Point3::new(0.0, 0.0, 10.0), Point3::new(100.0, 0.0, 300.0)).unwrap();
    assert_relative_eq!(th, (2.9f64).atan(), max_relative = 1e-15);
    assert!((th - 1.2387).abs() < 1e-4);
    assert!(elevation_angle(o, o).is_err());
}

#[test]
fn rician_k_examples() {
    assert_relative_eq!(rician_k(0.0, 0.0, 10.0).unwrap(), 1.0);
    assert_relative_eq!(rician_k(FRAC_PI_2, 0.0, 10.0).unwrap(), 10.0, max_relative = 1e-15);
    assert_relative_eq!(rician_k(FRAC_PI_4, 0.0, 10.0).unwrap(), 10f64.sqrt(), max_relative = 1e-15);
    assert!(rician_k(-0.1, 0.0, 10.0).is_err());
    assert!(rician_k(2.0, 0.0, 10.0).is_err());
}

#[test]
fn correlation_examples() {
    assert_eq!(temporal_correlation(0.0, 2e9, 12345, 1e-7), 1.0);
    // speed that puts the Bessel argument on the first zero of J0
    let root = 2.404_825_557_695_773;
    let v = root * SPEED_OF_LIGHT / (2.0 * PI * 2e9 * 1000.0 * 1e-7);
    assert!(temporal_correlation(v, 2e9, 1000, 1e-7).abs() < 1e-5);
    let rho = temporal_correlation(50.0, 2e9, 1000, 1e-7);
    assert!((rho - 0.98905).abs() < 5e-6, "{rho}");
}

#[test]
fn correlation_extrema_shrink() {
    // local maxima of |rho| along the sample index must strictly decrease
    let vals: Vec<f64> = (0..400_000)
        .step_by(50)
        .map(|n| temporal_correlation(30.0, 2e9, n, 1e-7).abs())
        .collect();
    let peaks: Vec<f64> = vals.windows(3).filter(|w| w[1] > w[0] && w[1] >= w[2]).map(|w| w[1]).collect();
    assert!(peaks.len() > 5);
    for p in peaks.windows(2) {
        assert!(p[1] < p[0]);
    }
}

#[test]
fn los_probability_overrides_and_defaults() {
    let mut env = EnvCoefficients::default();
    let g = Geometry::default();
    env.los.g2a = LosModel::Fixed { p: 1.0 };
    assert_eq!(los_probability(LinkClass::G2a, &g, &env), 1.0);
    env.los.g2a = LosModel::Fixed { p: 0.0 };
    assert_eq!(los_probability(LinkClass::G2a, &g, &env), 0.0);
    // UMi-AV at h = 300 m: d1 = 294.05 log10(300) − 432.94 ≈ 295.5 m exceeds both horizontal spans
    let env = EnvCoefficients::default();
    assert_eq!(los_probability(LinkClass::G2a, &g, &env), 1.0);
    assert_eq!(los_probability(LinkClass::A2g, &g, &env), 1.0);
    // terrestrial UMi law at 500 m
    let p = LosModel::Umi.probability(500.0, 1.5);
    let want = 18.0 / 500.0 + (-500.0f64 / 36.0).exp() * (1.0 - 18.0 / 500.0);
    assert_relative_eq!(p, want, max_relative = 1e-14);
}

#[test]
fn path_loss_overrides_and_golden() {
    let radio = RadioConfig {
        carrier_freq_hz: 1e9,
        ..Default::default()
    };
    let g = Geometry {
        bs: Point3::new(0.0, 0.0, 10.0),
        uav: Point3::new(0.0, 0.0, 11.0),
        ..Default::default()
    };
    let mut env = EnvCoefficients::default();
    env.pathloss.g2a_los = PathLossModel::Custom(PathLossCoeffs {
        a: 0.0,
        b: 0.0,
        b_h: 0.0,
        c: 0.0,
        e_h: 0.0,
        floor_los: false,
    });
    assert_eq!(path_loss(LinkClass::G2a, true, &g, &radio, &env).unwrap(), 1.0);
    env.pathloss.g2a_los = PathLossModel::Custom(PathLossCoeffs {
        a: 32.45,
        b: 20.0,
        b_h: 0.0,
        c: 20.0,
        e_h: 0.0,
        floor_los: false,
    });
    let l = path_loss(LinkClass::G2a, true, &g, &radio, &env).unwrap();
    assert_relative_eq!(l, 10f64.powf(-3.245), max_relative = 1e-12);

    // frozen values for the reference geometry at 2 GHz
    let s = Scenario::from_config(ScenarioConfig::default()).unwrap();
    let db = |l: f64| -10.0 * l.log10();
    assert!((db(s.rd.pathloss_los_linear) - 75.009_110_988_549_57).abs() < 1e-9);
    assert!((db(s.g2a.pathloss_los_linear) - 89.171_738_331_796_66).abs() < 1e-9);
    assert!((db(s.g2a.pathloss_nlos_linear) - 99.033_434_419_218_05).abs() < 1e-9);
    assert!((db(s.a2g.pathloss_los_linear) - 88.322_880_456_180_66).abs() < 1e-9);
}

#[test]
fn mean_snr_examples() {
    assert_relative_eq!(mean_snr(0.0, 1.0, 0.0), 1.0);
    assert_relative_eq!(mean_snr(0.0, 1.0, -99.0), 10f64.powf(9.9), max_relative = 1e-14);
    assert_relative_eq!(mean_snr(33.0, 1e-10, -99.0), 10f64.powf(3.2), max_relative = 1e-14);
}

#[test]
fn empty_document_gives_reference_scenario() {
    let s = load_scenario("").unwrap();
    let g = &s.config.geometry;
    assert_eq!(g.bs, Point3::new(0.0, 0.0, 10.0));
    assert_eq!(g.ris, Point3::new(150.0, 0.0, 25.0));
    assert_eq!(g.uav, Point3::new(100.0, 0.0, 300.0));
    assert_eq!(g.gue, Point3::new(200.0, 0.0, 1.5));
    assert_relative_eq!(s.noise_uav_dbm, -99.0, epsilon = 1e-12);
    // elevation angles from the ground-side node of each link
    assert_relative_eq!(s.g2a.k_factor_linear, 10f64.powf((2.0 / PI) * (2.9f64).atan()), max_relative = 1e-14);
    assert_relative_eq!(s.a2g.k_factor_linear, 10f64.powf((2.0 / PI) * (5.5f64).atan()), max_relative = 1e-14);
    assert_relative_eq!(s.rd.k_factor_linear, 10f64.powf((2.0 / PI) * (0.47f64).atan()), max_relative = 1e-14);
}

#[test]
fn overrides_are_reflected() {
    let s = load_scenario("[bs]\nantennas = 4\n[ris]\nelements = 400\n[aging]\ncorrelation = 0.5\n").unwrap();
    assert_eq!(s.antennas(), 4);
    assert_eq!(s.ris_elements(), 400);
    assert_eq!(s.g2a.correlation, 0.5);
    assert_eq!(s.a2g.correlation, 0.5);
}

#[test]
fn malformed_numeric_names_field() {
    let err = load_scenario("[radio]\ncarrier_freq_hz = 2e9\nbandwidth_hz = \"ten\"\n").unwrap_err();
    match err {
        Error::Config { field, line, .. } => {
            assert_eq!(field.as_deref(), Some("radio.bandwidth_hz"));
            assert_eq!(line, Some(3));
        }
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn constraint_violations_rejected() {
    assert!(matches!(load_scenario("[aging]\ncorrelation = 1.5\n"), Err(Error::Config { .. })));
    assert!(matches!(load_scenario("[env]\nk0_db = 5.0\nkpi_db = 1.0\n"), Err(Error::Config { .. })));
    assert!(matches!(load_scenario("[ris]\nelements = 0\n"), Err(Error::Config { .. })));
    assert!(matches!(load_scenario("[bogus]\nx = 1\n"), Err(Error::Config { .. })));
    assert!(matches!(load_scenario("[aging]\nsample_index = 1\nestimate_index = 2\n"), Err(Error::Config { .. })));
}

#[test]
fn presets_parse() {
    let doc = r#"
[env.los.g2a]
model = "fixed"
p = 0.7
[env.los.a2g]
model = "custom"
d1_b = 18.0
p1_b = 36.0
[env.pathloss.rd_los]
model = "custom"
a = 32.45
b = 20.0
c = 20.0
"#;
    let s = load_scenario(doc).unwrap();
    assert_eq!(s.g2a.p_los, 0.7);
    assert_eq!(s.config.env.los.a2g, LosModel::Custom(LosCoeffs { d1_a: 0.0, d1_b: 18.0, d1_min: 0.0, p1_a: 0.0, p1_b: 36.0 }));
}

fn arb_config() -> impl Strategy<Value = ScenarioConfig> {
    (
        (-500.0f64..500.0, 20.0f64..400.0, 1.0f64..10.0),
        (1e8f64..1e11, 1e5f64..1e9, -10.0f64..40.0, -10.0f64..40.0),
        (0.0f64..120.0, 0u64..50_000, proptest::option::of(-1.0f64..1.0)),
        (-5.0f64..5.0, 0.0f64..15.0, any::<bool>(), proptest::option::of(0.0f64..1.0)),
        (1u32..1024, proptest::option::of(1u32..6), 1u32..32),
    )
        .prop_map(|(geo, radio, aging, env, sizes)| {
            let mut c = ScenarioConfig::default();
            c.geometry.uav = Point3::new(geo.0, 3.0, geo.1);
            c.geometry.gue.z = geo.2;
            c.radio.carrier_freq_hz = radio.0;
            c.radio.bandwidth_hz = radio.1;
            c.radio.tx_power_bs_dbm = radio.2;
            c.radio.tx_power_uav_dbm = radio.3;
            c.aging.uav_speed_mps = aging.0;
            c.aging.sample_index = aging.1;
            c.aging.correlation = aging.2;
            c.env.k0_db = env.0;
            c.env.kpi_db = env.0 + env.1;
            c.env.rd_los = env.2;
            if let Some(p) = env.3 {
                c.env.los.g2a = LosModel::Fixed { p };
            }
            c.ris.elements = sizes.0;
            c.ris.phase_bits = sizes.1;
            c.bs.antennas = sizes.2;
            c
        })
}

proptest! {
    #[test]
    fn config_round_trips(cfg in arb_config()) {
        let text = cfg.to_toml();
        let back = load_scenario(&text).unwrap();
        prop_assert_eq!(&back.config, &cfg);
        prop_assert_eq!(back, Scenario::from_config(cfg).unwrap());
    }

    #[test]
    fn correlation_bounded(v in 0.0f64..200.0, n in 0u64..1_000_000) {
        let r = temporal_correlation(v, 2e9, n, 1e-7);
        prop_assert!(r.abs() <= 1.0);
    }

    #[test]
    fn k_factor_monotone(t1 in 0.0f64..FRAC_PI_2, t2 in 0.0f64..FRAC_PI_2, k0 in -10.0f64..10.0, dk in 0.0f64..20.0) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        prop_assert!(rician_k(lo, k0, k0 + dk).unwrap() <= rician_k(hi, k0, k0 + dk).unwrap() * (1.0 + 1e-15));
    }

    #[test]
    fn mean_snr_increasing(p in -30.0f64..50.0, dp in 0.01f64..10.0, l in 1e-15f64..0.5, f in 1.01f64..2.0) {
        prop_assert!(mean_snr(p + dp, l, -99.0) > mean_snr(p, l, -99.0));
        prop_assert!(mean_snr(p, l * f, -99.0) > mean_snr(p, l, -99.0));
    }
}
