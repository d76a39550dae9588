//! `J_m(t)` for real `m` in `[-1/2, 6]`: power series below the switch point,
//! Hankel's large-argument expansion above it.

use std::f64::consts::PI;

use super::gamma;
use crate::error::{domain, Error, Result};
use crate::util::Accumulator;

pub const MIN_ORDER: f64 = -0.5;
pub const MAX_ORDER: f64 = 6.0;

/// Beyond this argument the phase `t - m pi/2 - pi/4` carries an absolute
/// rounding error comparable to the accuracy target.
const MAX_ARGUMENT: f64 = 1e12;

/// Target absolute accuracy of [`bessel_j`].
const TOLERANCE: f64 = 1e-10;

/// Argument at which evaluation changes from the power series to the
/// asymptotic expansion. Both regimes stay below `1e-11` absolute error at
/// `t = 12` for every supported order.
pub fn switch_point(_m: f64) -> f64 {
    12.0
}

fn check_order(m: f64) -> Result<()> {
    if m.is_nan() || m < MIN_ORDER {
        return domain(format!("Bessel order {m} must be at least -1/2"));
    }
    if m > MAX_ORDER {
        return Err(Error::Precision(format!(
            "Bessel order {m} exceeds {MAX_ORDER}; accuracy {TOLERANCE:e} is not guaranteed"
        )));
    }
    Ok(())
}

/// `Λ_m(t) = J_m(t) (t/2)^{-m}` from the power series; entire in `t`.
pub fn bessel_j_scaled(m: f64, t: f64) -> Result<f64> {
    check_order(m)?;
    if !(t >= 0.0) || !t.is_finite() {
        return domain(format!("Bessel argument {t} must be finite and non-negative"));
    }
    if t > switch_point(m) {
        return Ok(bessel_j(m, t)? / (0.5 * t).powf(m));
    }
    Ok(scaled_series(m, t))
}

fn scaled_series(m: f64, t: f64) -> f64 {
    let q = -0.25 * t * t;
    let mut term = 1.0 / gamma(m + 1.0);
    let mut acc = Accumulator::default();
    let mut k = 0.0;
    loop {
        acc.add(term);
        term *= q / ((k + 1.0) * (m + k + 1.0));
        k += 1.0;
        if k > 0.5 * t + 2.0 && term.abs() < 1e-18 * acc.value().abs().max(1e-300) {
            break;
        }
        if k > 400.0 || term == 0.0 {
            break;
        }
    }
    acc.value()
}

/// Hankel coefficient `a_k(m) = Π_{i=1}^k (4m^2 - (2i-1)^2) / (k! 8^k)`.
pub fn hankel_coefficient(m: f64, k: usize) -> f64 {
    let mu = 4.0 * m * m;
    let mut a = 1.0;
    for i in 1..=k {
        let odd = (2 * i - 1) as f64;
        a *= (mu - odd * odd) / (i as f64 * 8.0);
    }
    a
}

fn phase(m: f64, t: f64) -> (f64, f64) {
    let shift = (0.5 * m + 0.25) * PI;
    let (st, ct) = t.sin_cos();
    let (ss, cs) = shift.sin_cos();
    // cos(t - shift), sin(t - shift)
    (ct * cs + st * ss, st * cs - ct * ss)
}

/// Optimally truncated Hankel expansion; returns the value and the size of
/// the first omitted term.
fn hankel(m: f64, t: f64) -> (f64, f64) {
    let mu = 4.0 * m * m;
    let mut term = 1.0;
    let mut p = Accumulator::default();
    let mut q = Accumulator::default();
    p.add(1.0);
    let mut omitted = 0.0;
    for k in 1..200usize {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (k as f64 * 8.0 * t);
        if next == 0.0 {
            omitted = 0.0;
            break;
        }
        // terms may grow at first while (2k-1)^2 < 4m^2; truncate at the
        // first growth after that hump
        if next.abs() >= term.abs() && odd * odd > mu {
            omitted = term.abs();
            break;
        }
        term = next;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p.add(sign * term);
        } else {
            q.add(sign * term);
        }
        if term.abs() < 1e-18 {
            omitted = term.abs();
            break;
        }
    }
    let (c, s) = phase(m, t);
    let amp = (2.0 / (PI * t)).sqrt();
    (amp * (p.value() * c - q.value() * s), amp * omitted)
}

/// Bessel function of the first kind `J_m(t)`, `t > 0`.
pub fn bessel_j(m: f64, t: f64) -> Result<f64> {
    check_order(m)?;
    if !(t > 0.0) {
        return domain(format!("Bessel argument t = {t} must be positive"));
    }
    if t > MAX_ARGUMENT || !t.is_finite() {
        return Err(Error::Precision(format!(
            "Bessel argument {t:e} loses the phase to rounding (limit {MAX_ARGUMENT:e})"
        )));
    }
    if t <= switch_point(m) {
        return Ok((0.5 * t).powf(m) * scaled_series(m, t));
    }
    let (v, omitted) = hankel(m, t);
    if omitted > 0.1 * TOLERANCE {
        return Err(Error::Precision(format!(
            "asymptotic expansion of J_{m} at t = {t} cannot reach {TOLERANCE:e}"
        )));
    }
    Ok(v)
}

/// Expansion through order `N`:
/// `sqrt(2/(πt)) [Σ_{j<=N} (-1)^j a_{2j} t^{-2j} cos χ - Σ_{j<=N} (-1)^j a_{2j+1} t^{-2j-1} sin χ]`.
pub fn hankel_partial(m: f64, t: f64, order: usize) -> f64 {
    let mut p = Accumulator::default();
    let mut q = Accumulator::default();
    for j in 0..=order {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        p.add(sign * hankel_coefficient(m, 2 * j) / t.powi(2 * j as i32));
        q.add(sign * hankel_coefficient(m, 2 * j + 1) / t.powi(2 * j as i32 + 1));
    }
    let (c, s) = phase(m, t);
    (2.0 / (PI * t)).sqrt() * (p.value() * c - q.value() * s)
}

/// `|J_m(t) - hankel_partial(m, t, N)|` for `t >= 2π`.
pub fn bessel_asymptotic_remainder(m: f64, t: f64, order: usize) -> Result<f64> {
    if t < 2.0 * PI {
        return domain(format!("remainder bound needs t >= 2π, got t = {t}"));
    }
    Ok((bessel_j(m, t)? - hankel_partial(m, t, order)).abs())
}
