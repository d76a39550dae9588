//! Spherical means `A_t f(x) = ∫ f(x - tθ) dσ(θ)` with normalised surface
//! measure, the maximal function over a finite `t` grid, and the dyadic
//! pieces obtained by inserting a Littlewood–Paley window.

use num_complex::Complex64;
use rayon::prelude::*;

use super::Method;
use crate::error::{usage, Result};
use crate::grid::{apply_multiplier, norm, smooth_step, SampledFunction};
use crate::quadrature::{circle_points, fibonacci_sphere};
use crate::special::sphere_multiplier;

pub const DEFAULT_SPHERE_POINTS: usize = 1024;

fn check_radius(f: &SampledFunction, t: f64) -> Result<()> {
    let half = 0.5 * f.grid().extent();
    if !(t > 0.0 && t.is_finite()) {
        return usage(format!("sphere radius t = {t} must be positive"));
    }
    if t >= half {
        return usage(format!("sphere radius t = {t} must be below L/2 = {half}; the sphere would wrap"));
    }
    Ok(())
}

fn unit_points(n: usize, count: usize) -> Result<Vec<[f64; 3]>> {
    if count == 0 {
        return usage("sphere quadrature needs at least one point");
    }
    match n {
        2 => Ok(circle_points(count)),
        3 => Ok(fibonacci_sphere(count)),
        _ => usage(format!("geometric spherical means need n = 2 or 3, got n = {n}")),
    }
}

/// `A_t f` at the listed nodes through the point set, with multilinear
/// interpolation between nodes.
pub fn spherical_mean_at(f: &SampledFunction, t: f64, nodes: &[usize], points: usize) -> Result<Vec<Complex64>> {
    check_radius(f, t)?;
    let g = *f.grid();
    let pts = unit_points(g.dim(), points)?;
    let w = 1.0 / pts.len() as f64;
    Ok(nodes
        .par_iter()
        .map(|&i| {
            let x = g.node(i);
            let mut acc = Complex64::new(0.0, 0.0);
            for th in &pts {
                let y = [x[0] - t * th[0], x[1] - t * th[1], x[2] - t * th[2]];
                acc += f.interpolate(&y);
            }
            acc * w
        })
        .collect())
}

/// `A_t f` on the whole grid. The multiplier path uses the closed form
/// `sin(2πt|xi|)/(2πt|xi|)` (n = 3 only); the geometric path averages over
/// `points` quadrature nodes on the sphere (n = 3) or circle (n = 2).
pub fn spherical_mean(f: &SampledFunction, t: f64, method: Method, points: usize) -> Result<SampledFunction> {
    check_radius(f, t)?;
    let g = *f.grid();
    match method {
        Method::Multiplier => {
            // validates n = 3 once, so the closure below cannot fail
            sphere_multiplier(g.dim(), t, 0.0)?;
            Ok(apply_multiplier(f, |xi| {
                Complex64::new(sphere_multiplier(3, t, norm(xi)).unwrap_or(0.0), 0.0)
            }))
        }
        Method::Geometric => {
            let all: Vec<usize> = (0..g.len()).collect();
            SampledFunction::new(g, spherical_mean_at(f, t, &all, points)?)
        }
        Method::Kernel => usage("spherical means have no kernel path; use multiplier or geometric"),
    }
}

fn check_ts(ts: &[f64]) -> Result<()> {
    if ts.is_empty() {
        return usage("spherical maximal function needs a non-empty t grid");
    }
    Ok(())
}

fn pointwise_max(g: crate::grid::Grid, images: &[SampledFunction]) -> Result<SampledFunction> {
    let mut best = vec![0.0f64; g.len()];
    for img in images {
        for (b, v) in best.iter_mut().zip(img.values()) {
            *b = b.max(v.norm());
        }
    }
    SampledFunction::new(g, best.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
}

/// `max_t |A_t f|` over a finite grid.
pub fn spherical_maximal(f: &SampledFunction, ts: &[f64], method: Method) -> Result<SampledFunction> {
    check_ts(ts)?;
    let images = ts
        .par_iter()
        .map(|&t| spherical_mean(f, t, method, DEFAULT_SPHERE_POINTS))
        .collect::<Result<Vec<_>>>()?;
    pointwise_max(*f.grid(), &images)
}

/// Radial bump `φ(r) = 1` for `r <= 1`, `0` for `r >= 2`, smooth between.
fn bump(r: f64) -> f64 {
    smooth_step(2.0 - r)
}

/// Window `ψ_0 = φ`, `ψ_j(r) = φ(2^{-j} r) - φ(2^{-j+1} r)`; the windows sum
/// to one and `ψ_j` lives on `2^{j-1} <= r <= 2^{j+1}`.
pub fn littlewood_paley_window(j: u32, r: f64) -> f64 {
    if j == 0 {
        return bump(r);
    }
    let s = 0.5f64.powi(j as i32);
    bump(s * r) - bump(2.0 * s * r)
}

/// `𝓜_j f = max_t |A_t ψ_j(D) f|` (n = 3, multiplier path).
pub fn spherical_dyadic_piece(f: &SampledFunction, j: u32, ts: &[f64]) -> Result<SampledFunction> {
    check_ts(ts)?;
    let g = *f.grid();
    for &t in ts {
        check_radius(f, t)?;
        sphere_multiplier(g.dim(), t, 0.0)?;
    }
    let images: Vec<SampledFunction> = ts
        .par_iter()
        .map(|&t| {
            apply_multiplier(f, |xi| {
                let r = norm(xi);
                let w = littlewood_paley_window(j, r);
                if w == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(w * sphere_multiplier(3, t, r).unwrap_or(0.0), 0.0)
                }
            })
        })
        .collect();
    pointwise_max(g, &images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{sample, FunctionSpec, Grid};

    #[test]
    fn windows_partition_unity() {
        for &r in &[0.0, 0.7, 1.3, 2.9, 5.0, 17.0, 100.0] {
            let s: f64 = (0..12).map(|j| littlewood_paley_window(j, r)).sum();
            assert!((s - 1.0).abs() < 1e-14, "r={r} s={s}");
        }
        assert_eq!(littlewood_paley_window(3, 3.9), 0.0);
        assert_eq!(littlewood_paley_window(3, 16.1), 0.0);
    }

    #[test]
    fn constant_is_fixed_both_paths() {
        let g = Grid::new(3, 4.0, 16).unwrap();
        let f = sample(&g, &FunctionSpec::Constant { value: 2.0 }).unwrap();
        for m in [Method::Multiplier, Method::Geometric] {
            let a = spherical_mean(&f, 1.0, m, 200).unwrap();
            for v in a.values() {
                assert!((v.re - 2.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn squared_radius_gains_t_squared() {
        let g = Grid::new(3, 4.0, 32).unwrap();
        let f = SampledFunction::from_real_fn(g, |x| x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        let t = 0.5;
        let interior: Vec<usize> = (0..g.len())
            .filter(|&i| g.node(i).iter().all(|c| c.abs() + t < g.extent() - g.spacing()))
            .collect();
        let a = spherical_mean_at(&f, t, &interior, 2000).unwrap();
        for (k, &i) in interior.iter().enumerate() {
            let expect = norm(&g.node(i)).powi(2) + t * t;
            // interpolation of a quadratic costs h^2/4 per axis at most
            assert!((a[k].re - expect).abs() < 0.75 * g.spacing().powi(2) + 1e-2, "{} vs {expect}", a[k].re);
        }
    }

    #[test]
    fn radius_beyond_half_box_is_rejected() {
        let g = Grid::new(3, 2.0, 16).unwrap();
        let f = SampledFunction::zeros(g);
        assert!(spherical_mean(&f, 1.0, Method::Multiplier, 10).is_err());
        assert!(spherical_mean(&f, 0.5, Method::Kernel, 10).is_err());
        let g2 = Grid::new(2, 2.0, 16).unwrap();
        assert!(spherical_mean(&SampledFunction::zeros(g2), 0.5, Method::Multiplier, 10).is_err());
    }

    #[test]
    fn maximal_dominates_each_mean() {
        let g = Grid::new(3, 4.0, 16).unwrap();
        let f = sample(&g, &FunctionSpec::gaussian(2.0)).unwrap();
        let ts = [0.25, 0.5, 1.0];
        let m = spherical_maximal(&f, &ts, Method::Multiplier).unwrap();
        for &t in &ts {
            let a = spherical_mean(&f, t, Method::Multiplier, 0).unwrap();
            for (x, y) in m.values().iter().zip(a.values()) {
                assert!(x.re >= y.norm());
            }
        }
    }
}
