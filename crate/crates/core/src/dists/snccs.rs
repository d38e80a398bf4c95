use crate::error::{Error, Result};
use crate::specfun::{ln_bessel_i_reg, marcum_pq};

/// Law of Y = (Ω/2)·χ²_{2k}(2λ): scale Ω/2, 2k degrees of freedom and
/// noncentrality 2λ. k may be any positive real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnccsParams {
    pub omega: f64,
    pub k: f64,
    pub lambda: f64,
}

impl SnccsParams {
    pub fn new(omega: f64, k: f64, lambda: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::arg(format!("SNCCS scale must be positive, got {omega}")));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::arg(format!("SNCCS dof_half must be positive, got {k}")));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::arg(format!("SNCCS noncentrality must be >= 0, got {lambda}")));
        }
        Ok(Self { omega, k, lambda })
    }

    pub fn mean(&self) -> f64 {
        self.omega * (self.k + self.lambda)
    }

    pub fn variance(&self) -> f64 {
        self.cumulant(2)
    }

    /// n-th cumulant Ω^n (n−1)! (k + nλ).
    pub fn cumulant(&self, n: u32) -> f64 {
        let fact: f64 = (1..n).map(f64::from).product();
        self.omega.powi(n as i32) * fact * (self.k + f64::from(n) * self.lambda)
    }

    /// First three raw moments.
    pub fn raw_moments(&self) -> [f64; 3] {
        let (c1, c2, c3) = (self.cumulant(1), self.cumulant(2), self.cumulant(3));
        [c1, c2 + c1 * c1, c3 + 3.0 * c2 * c1 + c1 * c1 * c1]
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        let Self { omega, k, lambda } = *self;
        if x == 0.0 {
            return if k < 1.0 {
                f64::INFINITY
            } else if k == 1.0 {
                -omega.ln() - lambda
            } else {
                f64::NEG_INFINITY
            };
        }
        let u = x / omega;
        -omega.ln() - u - lambda + (k - 1.0) * u.ln() + ln_bessel_i_reg(k - 1.0, 2.0 * (lambda * u).sqrt())
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    /// (P, Q) = (CDF, survival) at x.
    pub fn cdf_sf(&self, x: f64) -> (f64, f64) {
        if x <= 0.0 {
            return (0.0, 1.0);
        }
        if x.is_infinite() {
            return (1.0, 0.0);
        }
        marcum_pq(self.k, (2.0 * self.lambda).sqrt(), (2.0 * x / self.omega).sqrt())
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.cdf_sf(x).0
    }
}

pub(crate) fn check_nonneg(x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(Error::arg(format!("SNR argument must be >= 0, got {x}")))
    }
}

pub fn snccs_pdf(p: &SnccsParams, x: f64) -> Result<f64> {
    check_nonneg(x)?;
    Ok(p.pdf(x))
}

pub fn snccs_cdf(p: &SnccsParams, x: f64) -> Result<f64> {
    check_nonneg(x)?;
    Ok(p.cdf(x))
}
