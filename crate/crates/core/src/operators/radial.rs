//! Radial functions on R^3 through a one-dimensional engine.
//!
//! A radial `F(|x|)` on R^3 is stored as the odd function `g(r) = r F(|r|)`
//! on a line grid. Its 3D Fourier transform is `i ĝ(ρ)/ρ`, so a radial
//! multiplier `m(|xi|)` acts on `F` exactly as `m(|xi|)` acts on `g` in one
//! dimension. This reaches frequencies that a 3D grid of desk size cannot.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{usage, Result};
use crate::grid::{apply_multiplier, Grid, SampledFunction};
use crate::quadrature::gauss_legendre;
use crate::special::sphere_multiplier;

use super::spherical::littlewood_paley_window;

#[derive(Debug, Clone)]
pub struct RadialField {
    line: SampledFunction,
}

impl RadialField {
    /// Samples `g(r) = r F(|r|)` on `[-L, L)` with `size` nodes.
    pub fn from_profile<F: Fn(f64) -> f64>(extent: f64, size: usize, profile: F) -> Result<Self> {
        let grid = Grid::new(1, extent, size)?;
        let line = SampledFunction::from_real_fn(grid, |x| {
            let r = x[0];
            if r == 0.0 {
                0.0
            } else {
                r * profile(r.abs())
            }
        });
        Ok(Self { line })
    }

    pub fn grid(&self) -> &Grid {
        self.line.grid()
    }

    /// Positive radii `h, 2h, ..., (N/2 - 1) h` at which profiles are reported.
    pub fn radii(&self) -> Vec<f64> {
        let h = self.grid().spacing();
        (1..self.grid().size() / 2).map(|k| k as f64 * h).collect()
    }

    fn positive_slice(&self) -> &[Complex64] {
        let half = self.grid().size() / 2;
        &self.line.values()[half + 1..]
    }

    /// `F` at the positive radii.
    pub fn profile(&self) -> Vec<f64> {
        self.positive_slice().iter().zip(self.radii()).map(|(g, r)| g.re / r).collect()
    }

    /// `m(|D|) F`, exact for radial multipliers.
    pub fn apply_multiplier<M: Fn(f64) -> f64>(&self, m: M) -> RadialField {
        RadialField { line: apply_multiplier(&self.line, |xi| Complex64::new(m(xi[0].abs()), 0.0)) }
    }

    /// `‖F‖_{L^2(R^3)} = sqrt(2π) ‖g‖_{L^2(R)}`.
    pub fn l2_norm(&self) -> f64 {
        (2.0 * std::f64::consts::PI).sqrt() * self.line.lp_norm(2.0).unwrap_or(f64::NAN)
    }

    /// Spherical mean `A_t F` through the multiplier `sin(2πt|xi|)/(2πt|xi|)`.
    pub fn spherical_mean(&self, t: f64) -> Result<RadialField> {
        sphere_multiplier(3, t, 0.0)?;
        Ok(self.apply_multiplier(|r| sphere_multiplier(3, t, r).unwrap_or(0.0)))
    }

    /// Profile of `𝓜_j F = max_t |A_t ψ_j(D) F|`.
    pub fn dyadic_piece(&self, j: u32, ts: &[f64]) -> Result<Vec<f64>> {
        self.max_over(ts, |t, r| littlewood_paley_window(j, r) * sphere_multiplier(3, t, r).unwrap_or(0.0))
    }

    /// Profile of `𝓜 F = max_t |A_t F|`.
    pub fn spherical_maximal(&self, ts: &[f64]) -> Result<Vec<f64>> {
        self.max_over(ts, |t, r| sphere_multiplier(3, t, r).unwrap_or(0.0))
    }

    fn max_over<M: Fn(f64, f64) -> f64 + Sync>(&self, ts: &[f64], m: M) -> Result<Vec<f64>> {
        if ts.is_empty() {
            return usage("radial maximal function needs a non-empty t grid");
        }
        for &t in ts {
            sphere_multiplier(3, t, 0.0)?;
        }
        let profiles: Vec<Vec<f64>> = ts
            .par_iter()
            .map(|&t| self.apply_multiplier(|r| m(t, r)).profile())
            .collect();
        let mut best = vec![0.0f64; profiles[0].len()];
        for p in &profiles {
            for (b, v) in best.iter_mut().zip(p) {
                *b = b.max(v.abs());
            }
        }
        Ok(best)
    }

    /// Centred Hardy–Littlewood maximal function of `|F|` over the radius
    /// grid, at the positive radii. Ball averages use
    /// `(3/(2ρr^3)) ∫_0^r s (Φ(ρ+s) - Φ(|ρ-s|)) ds` with `Φ(u) = ∫_0^u |F(v)| v dv`.
    pub fn hl_maximal(&self, radii: &[f64]) -> Result<Vec<f64>> {
        if radii.is_empty() {
            return usage("radial maximal function needs a non-empty radius grid");
        }
        if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
            return usage(format!("radius {r} must be positive"));
        }
        let h = self.grid().spacing();
        let absg: Vec<f64> = self.positive_slice().iter().map(|v| v.re.abs()).collect();
        // Φ at r = 0, h, 2h, ... by the trapezoid rule on |g| = |F| r
        let mut phi = Vec::with_capacity(absg.len() + 1);
        phi.push(0.0);
        let mut prev = 0.0;
        for &a in &absg {
            let last = *phi.last().unwrap_or(&0.0);
            phi.push(last + 0.5 * h * (prev + a));
            prev = a;
        }
        let phi_at = |u: f64| -> f64 {
            let x = u / h;
            let k = x.floor() as usize;
            if k + 1 >= phi.len() {
                return *phi.last().unwrap_or(&0.0);
            }
            let w = x - k as f64;
            phi[k] * (1.0 - w) + phi[k + 1] * w
        };
        let (gx, gw) = gauss_legendre(8);
        let integrate = |a: f64, b: f64, rho: f64| -> f64 {
            if b <= a {
                return 0.0;
            }
            let panels = (((b - a) / h).ceil() as usize).clamp(1, 256);
            let step = (b - a) / panels as f64;
            let mut acc = 0.0;
            for p in 0..panels {
                let lo = a + p as f64 * step;
                for (x, w) in gx.iter().zip(&gw) {
                    let s = lo + 0.5 * step * (x + 1.0);
                    acc += 0.5 * step * w * s * (phi_at(rho + s) - phi_at((rho - s).abs()));
                }
            }
            acc
        };
        let rhos = self.radii();
        let f = self.profile();
        Ok(rhos
            .par_iter()
            .zip(f.par_iter())
            .map(|(&rho, &fv)| {
                let mut best = fv.abs();
                for &r in radii {
                    let mid = r.min(rho);
                    let total = integrate(0.0, mid, rho) + integrate(mid, r, rho);
                    best = best.max(3.0 * total / (2.0 * rho * r * r * r));
                }
                best
            })
            .collect())
    }
}

/// `sqrt(4π h Σ F(r_k)^2 r_k^2)` for a profile reported at `r_k = k h`.
pub fn profile_l2_norm(h: f64, profile: &[f64]) -> f64 {
    let s: f64 = profile
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let r = (k + 1) as f64 * h;
            v * v * r * r
        })
        .sum();
    (4.0 * std::f64::consts::PI * h * s).sqrt()
}
