//! The power weight `d mu_alpha = |x|^alpha dx` integrated exactly (or to
//! near machine precision) over every grid cell.

use std::collections::HashMap;
use std::f64::consts::PI;

use super::{Grid, SampledFunction};
use crate::error::{domain, Result};
use crate::quadrature::gauss_legendre;
use crate::util::Accumulator;

/// Surface area of the unit sphere `S^{n-1}`.
pub fn sphere_area(n: usize) -> f64 {
    match n {
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => {
            let nf = n as f64;
            2.0 * PI.powf(nf / 2.0) / crate::special::gamma(nf / 2.0)
        }
    }
}

/// Lebesgue measure of the unit ball in R^n.
pub fn unit_ball_volume(n: usize) -> f64 {
    sphere_area(n) / n as f64
}

/// `mu_alpha(B(0, r)) = |S^{n-1}| r^{n+alpha} / (n + alpha)`.
pub fn ball_measure(n: usize, alpha: f64, r: f64) -> Result<f64> {
    let nf = n as f64;
    if alpha <= -nf {
        return domain(format!("weight |x|^{alpha} is not locally integrable in R^{n}"));
    }
    Ok(sphere_area(n) * r.powf(nf + alpha) / (nf + alpha))
}

/// Cell weights `W_j = ∫_{cell_j} |x|^alpha dx` for one grid.
#[derive(Debug, Clone)]
pub struct WeightedMeasure {
    grid: Grid,
    alpha: f64,
    weights: Vec<f64>,
}

impl WeightedMeasure {
    pub fn new(grid: Grid, alpha: f64) -> Result<Self> {
        let n = grid.dim();
        if !alpha.is_finite() || alpha <= -(n as f64) {
            return domain(format!(
                "weight |x|^{alpha} is not locally integrable in R^{n} (need alpha > {})",
                -(n as f64)
            ));
        }
        let weights = if alpha == 0.0 {
            vec![grid.cell_volume(); grid.len()]
        } else if n == 1 {
            one_dimensional(&grid, alpha)
        } else {
            multi_dimensional(&grid, alpha)
        };
        Ok(Self { grid, alpha, weights })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `mu_alpha` of a union of cells.
    pub fn measure_of<I: IntoIterator<Item = usize>>(&self, cells: I) -> f64 {
        let mut acc = Accumulator::default();
        for i in cells {
            acc.add(self.weights[i]);
        }
        acc.value()
    }

    /// `(Σ W_j |f_j|^p)^{1/p}`.
    pub fn norm(&self, f: &SampledFunction, p: f64) -> Result<f64> {
        if p.is_nan() || p <= 0.0 || p.is_infinite() {
            return domain(format!("weighted L^p exponent p = {p} must be positive and finite"));
        }
        self.grid.check_same(f.grid())?;
        Ok(self.norm_of_abs(f.values().iter().map(|v| v.norm()), p))
    }

    pub(crate) fn norm_of_abs<I: Iterator<Item = f64>>(&self, abs: I, p: f64) -> f64 {
        let mut acc = Accumulator::default();
        for (a, w) in abs.zip(&self.weights) {
            if a != 0.0 {
                acc.add(w * a.powf(p));
            }
        }
        acc.value().powf(1.0 / p)
    }
}

fn one_dimensional(grid: &Grid, alpha: f64) -> Vec<f64> {
    let h = grid.spacing();
    let anti = |x: f64| x.signum() * x.abs().powf(alpha + 1.0) / (alpha + 1.0);
    (0..grid.size())
        .map(|j| {
            let c = grid.coord(j);
            anti(c + 0.5 * h) - anti(c - 0.5 * h)
        })
        .collect()
}

fn multi_dimensional(grid: &Grid, alpha: f64) -> Vec<f64> {
    let n = grid.dim();
    let h = grid.spacing();
    let half = grid.size() / 2;
    let far = gauss_legendre(3);
    let near = gauss_legendre(8);
    let origin = origin_cell(n, alpha, 0.5 * h);
    let mut cache: HashMap<[usize; 3], f64> = HashMap::new();
    (0..grid.len())
        .map(|idx| {
            let m = grid.multi_index(idx);
            let mut key = [0usize; 3];
            for axis in 0..n {
                key[axis] = m[axis].abs_diff(half);
            }
            key[..n].sort_unstable();
            *cache.entry(key).or_insert_with(|| {
                let cheb = key[..n].iter().copied().max().unwrap_or(0);
                let mut centre = [0.0; 3];
                for axis in 0..n {
                    centre[axis] = key[axis] as f64 * h;
                }
                match cheb {
                    0 => origin,
                    1 => tensor_cell(n, alpha, &centre, h, &near, 4),
                    2..=4 => tensor_cell(n, alpha, &centre, h, &near, 1),
                    _ => tensor_cell(n, alpha, &centre, h, &far, 1),
                }
            })
        })
        .collect()
}

/// Tensor Gauss rule on the cell centred at `centre`, split into `sub^n` pieces.
fn tensor_cell(n: usize, alpha: f64, centre: &[f64; 3], h: f64, rule: &(Vec<f64>, Vec<f64>), sub: usize) -> f64 {
    let (x, w) = rule;
    let m = x.len();
    let piece = h / sub as f64;
    let mut acc = Accumulator::default();
    let per_axis = m * sub;
    let total = per_axis.pow(n as u32);
    for flat in 0..total {
        let mut rest = flat;
        let mut r2 = 0.0;
        let mut wt = 1.0;
        for axis in 0..n {
            let k = rest % per_axis;
            rest /= per_axis;
            let (s, q) = (k / m, k % m);
            let lo = centre[axis] - 0.5 * h + s as f64 * piece;
            let t = lo + 0.5 * piece * (1.0 + x[q]);
            r2 += t * t;
            wt *= 0.5 * piece * w[q];
        }
        acc.add(wt * r2.powf(0.5 * alpha));
    }
    acc.value()
}

/// `∫_{[-a,a]^n} |x|^alpha dx = a^{n+alpha} (2n/(n+alpha)) ∫_{[-1,1]^{n-1}} (1+|z|^2)^{alpha/2} dz`.
fn origin_cell(n: usize, alpha: f64, a: f64) -> f64 {
    let nf = n as f64;
    let (x, w) = gauss_legendre(24);
    let face = match n {
        1 => 1.0,
        2 => x.iter().zip(&w).map(|(z, wz)| wz * (1.0 + z * z).powf(0.5 * alpha)).sum(),
        _ => {
            let mut acc = Accumulator::default();
            for (z1, w1) in x.iter().zip(&w) {
                for (z2, w2) in x.iter().zip(&w) {
                    acc.add(w1 * w2 * (1.0 + z1 * z1 + z2 * z2).powf(0.5 * alpha));
                }
            }
            acc.value()
        }
    };
    a.powf(nf + alpha) * 2.0 * nf / (nf + alpha) * face
}
