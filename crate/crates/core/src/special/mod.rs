//! Bessel functions of real order, their large-argument expansion, the
//! Bochner–Riesz kernel and the Fourier transform of the normalised sphere
//! measure in three dimensions.

mod bessel;
mod kernel;

pub use bessel::{
    bessel_asymptotic_remainder, bessel_j, bessel_j_scaled, hankel_coefficient, hankel_partial,
    switch_point, MAX_ORDER, MIN_ORDER,
};
pub use kernel::{
    bochner_riesz_kernel, bochner_riesz_kernel_at_zero, envelope_constant, kernel_integral,
    sphere_multiplier, RieszParams,
};

/// The Gamma function (Lanczos approximation, relative error near 1e-15).
pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// Log-log least-squares slope of `y` against `x`, both positive.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0)
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}
