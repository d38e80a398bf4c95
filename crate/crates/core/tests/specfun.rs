use approx::assert_relative_eq;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use risage::oracle;
use risage::specfun::*;

fn close(a: f64, b: f64, scale_floor: f64) -> bool {
    (a - b).abs() <= 1e-10 * b.abs().max(scale_floor)
}

#[test]
fn j0_examples() {
    assert_eq!(bessel_j0(0.0), 1.0);
    assert!(bessel_j0(2.404_825_557_695_773).abs() < 1e-12);
    assert!(bessel_j0(2.40483).abs() < 1e-5);
    assert_relative_eq!(bessel_j0(1.0), 0.765_197_686_557_966_6, max_relative = 1e-14);
    assert_relative_eq!(bessel_j0(-1.0), bessel_j0(1.0));
}

#[test]
fn j0_matches_trapezoid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..2000 {
        let x: f64 = rng.gen_range(0.0..60.0);
        let (a, b) = (bessel_j0(x), oracle::j0(x));
        assert!(close(a, b, 1.0), "x={x} got {a} want {b}");
    }
}

#[test]
fn i_examples() {
    assert_eq!(bessel_i(0.0, 0.0).unwrap(), 1.0);
    assert_eq!(bessel_i(2.0, 0.0).unwrap(), 0.0);
    assert_relative_eq!(bessel_i(0.0, 1.0).unwrap(), 1.266_065_877_752_008_4, max_relative = 1e-14);
    assert!(bessel_i(-1.0, 1.0).is_err());
    assert!(bessel_i_scaled(3.5, 1e4).unwrap().is_finite());
    assert!(bessel_i(0.0, 1e4).unwrap().is_infinite());
}

#[test]
fn i_matches_series_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..2000 {
        let nu: f64 = rng.gen_range(0.0..30.0);
        let z: f64 = rng.gen_range(0.0..200.0);
        let a = bessel_i_scaled(nu, z).unwrap();
        let b = oracle::bessel_i(nu, z) * (-z).exp();
        assert!(close(a, b, 0.0), "nu={nu} z={z} got {a} want {b}");
    }
}

#[test]
fn k_examples() {
    let half = (std::f64::consts::PI / 4.0).sqrt() * (-2.0f64).exp();
    assert_relative_eq!(bessel_k(0.5, 2.0).unwrap(), half, max_relative = 1e-14);
    assert_relative_eq!(bessel_k(-0.5, 2.0).unwrap(), half, max_relative = 1e-14);
    assert_relative_eq!(bessel_k(0.0, 1.0).unwrap(), 0.421_024_438_240_708_3, max_relative = 1e-13);
    assert!(bessel_k(1.0, 0.0).is_err());
    assert!(bessel_k_scaled(2.5, 1e4).unwrap().is_finite());
}

#[test]
fn k_matches_integral_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let nu: f64 = rng.gen_range(-20.0..20.0);
        let x: f64 = 10f64.powf(rng.gen_range(-2.0..2.0));
        let a = bessel_k_scaled(nu, x).unwrap();
        let b = oracle::bessel_k_scaled(nu, x);
        assert!(close(a, b, 0.0), "nu={nu} x={x} got {a} want {b}");
    }
}

#[test]
fn k_ladder_agrees_with_pointwise() {
    for &base in &[0.0, 0.3, 0.5, 0.77] {
        let lad = ln_bessel_k_ladder(base, 3.7, 40).unwrap();
        for (i, v) in lad.iter().enumerate() {
            let direct = ln_bessel_k(base + i as f64, 3.7).unwrap();
            assert!((v - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
    }
}

#[test]
fn log_gamma_examples() {
    assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
    assert_relative_eq!(log_gamma(0.5).unwrap(), 0.572_364_942_924_700_1, max_relative = 1e-14);
    assert_relative_eq!(log_gamma(5.0).unwrap(), 24f64.ln(), max_relative = 1e-14);
    assert!(log_gamma(0.0).is_err());
    assert!(log_gamma(-1.5).is_err());
}

#[test]
fn log_gamma_matches_stirling_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..2000 {
        let x = 10f64.powf(rng.gen_range(-3.0..3.0));
        let (a, b) = (log_gamma(x).unwrap(), oracle::ln_gamma(x));
        assert!(close(a, b, 1.0), "x={x} got {a} want {b}");
    }
}

#[test]
fn marcum_examples() {
    for &b in &[0.3, 1.0, 2.5] {
        assert_relative_eq!(marcum_q(1.0, 0.0, b), (-0.5 * b * b).exp(), max_relative = 1e-13);
    }
    assert_eq!(marcum_q(3.2, 1.7, 0.0), 1.0);
    assert_relative_eq!(marcum_q(1.0, 1.0, 1.0), 0.732_879_803_7, max_relative = 1e-9);
}

#[test]
fn marcum_matches_bessel_series_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let m: i64 = rng.gen_range(1..9);
        let a: f64 = rng.gen_range(0.05..10.0);
        let b: f64 = rng.gen_range(0.05..10.0);
        let (p, q) = marcum_pq(m as f64, a, b);
        let (want, complement) = oracle::marcum_q_int(m, a, b);
        let got = if complement { p } else { q };
        assert!(close(got, want, 0.0), "m={m} a={a} b={b} got {got} want {want}");
    }
}

#[test]
fn laguerre_examples() {
    assert_relative_eq!(laguerre_half(0.0), 1.0, max_relative = 1e-15);
    let big = laguerre_half(-100.0);
    assert_relative_eq!(big / (2.0 * (100.0 / std::f64::consts::PI).sqrt()), 1.0, max_relative = 5e-3);
    let i0 = oracle::bessel_i(0.0, 0.5);
    let i1 = oracle::bessel_i(1.0, 0.5);
    let want = (-0.5f64).exp() * (2.0 * i0 + i1);
    assert_relative_eq!(laguerre_half(-1.0), want, max_relative = 1e-13);
}

#[test]
fn laguerre_matches_kummer_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..2000 {
        let x: f64 = -rng.gen_range(0.0..200.0);
        let (a, b) = (laguerre_half(x), oracle::laguerre_half(x));
        assert!(close(a, b, 0.0), "x={x} got {a} want {b}");
    }
}

#[test]
fn gaussian_examples() {
    assert_eq!(gaussian_q(0.0), 0.5);
    assert_eq!(gaussian_q_inv(0.5).unwrap(), 0.0);
    assert!((gaussian_q_inv(1.0 - 1e-4).unwrap() + 3.719_016_485).abs() < 1e-6);
    let x = gaussian_q_inv(gaussian_q(2.5)).unwrap();
    assert!((x - 2.5).abs() < 1e-10);
    assert!(gaussian_q_inv(0.0).is_err());
    assert!(gaussian_q_inv(1.0).is_err());
}

#[test]
fn gaussian_matches_craig_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let x: f64 = rng.gen_range(-8.0..8.0);
        let (a, b) = (gaussian_q(x), oracle::gaussian_q(x));
        assert!(close(a, b, 0.0), "x={x} got {a} want {b}");
        let p = 10f64.powf(rng.gen_range(-12.0..-0.01));
        let (a, b) = (gaussian_q_inv(p).unwrap(), oracle::gaussian_q_inv(p));
        assert!(close(a, b, 1e-3), "p={p} got {a} want {b}");
    }
}

proptest! {
    #[test]
    fn k_is_even_in_order(nu in -30.0f64..30.0, x in 0.01f64..50.0) {
        let a = bessel_k(nu, x).unwrap();
        let b = bessel_k(-nu, x).unwrap();
        prop_assert!((a - b).abs() <= 1e-14 * a.abs());
        prop_assert!(a > 0.0);
    }

    #[test]
    fn i_positive(nu in 0.0f64..50.0, x in 1e-6f64..1e4) {
        prop_assert!(bessel_i_scaled(nu, x).unwrap() > 0.0);
        prop_assert!(bessel_i_scaled(nu, x).unwrap().is_finite());
    }

    #[test]
    fn j0_bounded(x in -1e4f64..1e4) {
        prop_assert!(bessel_j0(x).abs() <= 1.0);
    }

    #[test]
    fn marcum_monotone(m in 1.0f64..10.0, a in 0.0f64..8.0, b in 0.0f64..10.0, db in 0.0f64..1.0, da in 0.0f64..1.0) {
        let q = marcum_q(m, a, b);
        prop_assert!((0.0..=1.0).contains(&q));
        prop_assert!(marcum_q(m, a, b + db) <= q + 1e-13);
        prop_assert!(marcum_q(m, a + da, b) >= q - 1e-13);
    }

    #[test]
    fn gaussian_q_decreasing(x in -5.0f64..35.0, dx in 1e-3f64..1.0) {
        prop_assert!(gaussian_q(x + dx) < gaussian_q(x));
    }

    #[test]
    fn gaussian_q_inv_decreasing_and_inverse(p in 1e-15f64..0.999_999, f in 1.0001f64..1.5) {
        let p2 = (p * f).min(0.999_999_9);
        prop_assert!(gaussian_q_inv(p2).unwrap() < gaussian_q_inv(p).unwrap());
        let x = gaussian_q_inv(p).unwrap();
        prop_assert!((gaussian_q(x) - p).abs() <= 1e-12 * p);
    }
}
