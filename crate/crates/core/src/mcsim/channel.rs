use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// One CN(0, 1) draw.
pub(crate) fn cn<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// (√κ·a + CN(0,1)·1)/√(κ+1) per entry, a being the unit-modulus steering.
pub fn sample_rician_vector<R: Rng + ?Sized>(k_factor: f64, steering: &[Complex64], rng: &mut R) -> Vec<Complex64> {
    let los = (k_factor / (k_factor + 1.0)).sqrt();
    let nlos = (1.0 / (k_factor + 1.0)).sqrt();
    steering.iter().map(|a| a * los + cn(rng) * nlos).collect()
}

/// |h| of a unit-power Rician coefficient. The envelope law does not depend
/// on the LOS phase, so the phase is fixed at zero.
pub fn rician_magnitude<R: Rng + ?Sized>(k_factor: f64, rng: &mut R) -> f64 {
    let los = (k_factor / (k_factor + 1.0)).sqrt();
    let s = (0.5 / (k_factor + 1.0)).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    (los + s * re).hypot(s * im)
}

/// ρ·h + √(1−ρ²)·z with fresh z ~ CN(0, I).
pub fn age_vector<R: Rng + ?Sized>(h_ref: &[Complex64], rho: f64, rng: &mut R) -> Vec<Complex64> {
    let rb = (1.0 - rho * rho).max(0.0).sqrt();
    h_ref.iter().map(|h| h * rho + cn(rng) * rb).collect()
}
