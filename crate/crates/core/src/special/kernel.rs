//! Bochner–Riesz kernel and the spherical multiplier.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{bessel_j_scaled, gamma};
use crate::error::{domain, Error, Result};
use crate::grid::sphere_area;

/// Order `lambda` and scale `R` of the multiplier `(1 - |xi/R|^2)_+^lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RieszParams {
    pub lambda: f64,
    pub radius: f64,
}

impl RieszParams {
    pub fn new(lambda: f64, radius: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return domain(format!("Bochner-Riesz order lambda = {lambda} must be non-negative"));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return domain(format!("Bochner-Riesz scale R = {radius} must be positive"));
        }
        Ok(Self { lambda, radius })
    }

    /// `p_lambda = 2n/(n-1-2 lambda)`, infinite once `lambda >= (n-1)/2`.
    pub fn p_lambda(&self, n: usize) -> f64 {
        let nf = n as f64;
        if self.lambda >= (nf - 1.0) / 2.0 {
            f64::INFINITY
        } else {
            2.0 * nf / (nf - 1.0 - 2.0 * self.lambda)
        }
    }

    /// `p'_lambda = 2n/(n+1+2 lambda)`.
    pub fn p_lambda_prime(&self, n: usize) -> f64 {
        let nf = n as f64;
        2.0 * nf / (nf + 1.0 + 2.0 * self.lambda)
    }

    /// The multiplier `(1 - |xi/R|^2)_+^lambda`.
    pub fn multiplier(&self, xi_abs: f64) -> f64 {
        let u = xi_abs / self.radius;
        if u >= 1.0 {
            0.0
        } else if self.lambda == 0.0 {
            1.0
        } else {
            (1.0 - u * u).powf(self.lambda)
        }
    }
}

fn kernel_prefactor(n: usize, lambda: f64) -> f64 {
    let nu = n as f64 / 2.0 + lambda;
    gamma(lambda + 1.0) * PI.powf(nu - lambda)
}

/// `K_1^lambda(0) = Γ(λ+1) π^{n/2} / Γ(n/2+λ+1)`.
pub fn bochner_riesz_kernel_at_zero(n: usize, lambda: f64) -> f64 {
    let nf = n as f64;
    gamma(lambda + 1.0) * PI.powf(nf / 2.0) / gamma(nf / 2.0 + lambda + 1.0)
}

/// Inverse Fourier transform of `(1 - |xi/R|^2)_+^lambda`:
/// `K_R(x) = R^n Γ(λ+1) π^{-λ} |Rx|^{-n/2-λ} J_{n/2+λ}(2π|Rx|)`.
pub fn bochner_riesz_kernel(n: usize, rp: &RieszParams, x_abs: f64) -> Result<f64> {
    if !(1..=3).contains(&n) {
        return Err(Error::Usage(format!("dimension {n} must be 1, 2 or 3")));
    }
    if !(x_abs >= 0.0) {
        return domain(format!("|x| = {x_abs} must be non-negative"));
    }
    let nu = n as f64 / 2.0 + rp.lambda;
    let rn = rp.radius.powi(n as i32);
    if x_abs == 0.0 {
        return Ok(rn * bochner_riesz_kernel_at_zero(n, rp.lambda));
    }
    let r = rp.radius * x_abs;
    // |r|^{-nu} J_nu(2π r) = π^nu Λ_nu(2π r)
    Ok(rn * kernel_prefactor(n, rp.lambda) * bessel_j_scaled(nu, 2.0 * PI * r)?)
}

/// `max |K_1(x)| (1+|x|)^{(n+1)/2+λ}` over `|x|` sampled on `[0, x_max]`.
pub fn envelope_constant(n: usize, lambda: f64, x_max: f64, samples: usize) -> Result<f64> {
    let rp = RieszParams::new(lambda, 1.0)?;
    let expo = (n as f64 + 1.0) / 2.0 + lambda;
    let mut c: f64 = 0.0;
    for i in 0..=samples {
        let r = x_max * i as f64 / samples as f64;
        c = c.max(bochner_riesz_kernel(n, &rp, r)?.abs() * (1.0 + r).powf(expo));
    }
    Ok(c)
}

/// `∫_{R^n} K_1` by radial Gauss quadrature, with the oscillating tail
/// damped by averaging the partial integrals over the last unit period.
pub fn kernel_integral(n: usize, lambda: f64, r_max: f64) -> Result<f64> {
    let rp = RieszParams::new(lambda, 1.0)?;
    let per_unit = 16usize;
    let panels = (r_max.ceil() as usize + 1) * per_unit;
    let step = 1.0 / per_unit as f64;
    let (x, w) = crate::quadrature::gauss_legendre(10);
    let mut acc = crate::util::Accumulator::default();
    let mut partial = Vec::with_capacity(panels);
    for k in 0..panels {
        let mid = (k as f64 + 0.5) * step;
        for (xi, wi) in x.iter().zip(&w) {
            let r = mid + 0.5 * step * xi;
            acc.add(wi * 0.5 * step * bochner_riesz_kernel(n, &rp, r)? * r.powi(n as i32 - 1));
        }
        partial.push(acc.value());
    }
    let tail = &partial[panels - per_unit..];
    let avg = tail.iter().sum::<f64>() / tail.len() as f64;
    Ok(avg * sphere_area(n))
}

/// Fourier transform of the normalised surface measure on the sphere of
/// radius `t` in R^3: `sin(2π t|xi|)/(2π t|xi|)`.
pub fn sphere_multiplier(n: usize, t: f64, xi_abs: f64) -> Result<f64> {
    if n != 3 {
        return Err(Error::Usage(format!(
            "closed-form sphere multiplier exists only for n = 3 (got n = {n}); use the quadrature path"
        )));
    }
    if !(t > 0.0) {
        return domain(format!("sphere radius t = {t} must be positive"));
    }
    Ok(sinc(2.0 * PI * t * xi_abs))
}

pub(crate) fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    }
}
