//! Uniform periodic grids on `[-L, L)^n`, sampled functions, norms and the
//! discrete Fourier transform normalised to approximate
//! `f^(xi) = ∫ f(x) e^{-2πi x·xi} dx`.

mod fft;
mod measure;
mod sample;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Result};
use crate::util::Accumulator;

pub use measure::{ball_measure, sphere_area, unit_ball_volume, WeightedMeasure};
pub use sample::{sample, smooth_step, FunctionSpec};

pub(crate) use fft::fft_nd;

/// A point of R^n stored in the first `n` slots; unused slots are zero.
pub type Point = [f64; 3];

pub fn norm(x: &Point) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

/// `N^n` nodes `x_j = -L + j h`, `h = 2L/N`, on the torus of side `2L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    n: usize,
    extent: f64,
    size: usize,
}

impl Grid {
    pub fn new(n: usize, extent: f64, size: usize) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return usage(format!("grid dimension {n} must be 1, 2 or 3"));
        }
        if !(extent > 0.0 && extent.is_finite()) {
            return usage(format!("grid extent {extent} must be positive and finite"));
        }
        if size < 8 || size % 2 != 0 {
            return usage(format!("grid size {size} must be even and at least 8"));
        }
        if (size as f64).powi(n as i32) > 1.0e9 {
            return usage(format!("grid with {size}^{n} nodes is too large"));
        }
        Ok(Self { n, extent, size })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Half-width `L` of the box.
    pub fn extent(&self) -> f64 {
        self.extent
    }

    /// Nodes per axis `N`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / self.size as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.n as i32)
    }

    /// Total number of nodes `N^n`.
    pub fn len(&self) -> usize {
        self.size.pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.extent + i as f64 * self.spacing()
    }

    pub fn multi_index(&self, mut idx: usize) -> [usize; 3] {
        let mut out = [0; 3];
        for axis in (0..self.n).rev() {
            out[axis] = idx % self.size;
            idx /= self.size;
        }
        out
    }

    pub fn linear_index(&self, multi: &[usize]) -> usize {
        multi[..self.n].iter().fold(0, |acc, &i| acc * self.size + i)
    }

    /// Linear index after wrapping a signed multi-index onto the torus.
    pub fn wrapped_index(&self, multi: &[isize]) -> usize {
        let n = self.size as isize;
        multi[..self.n]
            .iter()
            .fold(0, |acc, &i| acc * self.size + i.rem_euclid(n) as usize)
    }

    pub fn node(&self, idx: usize) -> Point {
        let m = self.multi_index(idx);
        let mut x = [0.0; 3];
        for axis in 0..self.n {
            x[axis] = self.coord(m[axis]);
        }
        x
    }

    pub fn nodes(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(move |i| self.node(i))
    }

    /// Index of the node at the origin (`N/2` on every axis).
    pub fn origin_index(&self) -> usize {
        self.linear_index(&[self.size / 2; 3])
    }

    /// Signed offset of a wrapped per-axis index difference.
    pub fn signed_offset(&self, d: usize) -> isize {
        if d < self.size / 2 {
            d as isize
        } else {
            d as isize - self.size as isize
        }
    }

    /// Frequency grid: spacing `1/(2L)`, extent `N/(4L)`, centred storage.
    pub fn dual(&self) -> Grid {
        Grid {
            n: self.n,
            extent: self.size as f64 / (4.0 * self.extent),
            size: self.size,
        }
    }

    /// Largest representable frequency magnitude per axis.
    pub fn nyquist(&self) -> f64 {
        self.dual().extent
    }

    /// Same box, twice the nodes per axis.
    pub fn refined(&self) -> Result<Grid> {
        Grid::new(self.n, self.extent, self.size * 2)
    }

    /// Twice the box, same spacing.
    pub fn extended(&self) -> Result<Grid> {
        Grid::new(self.n, self.extent * 2.0, self.size * 2)
    }

    /// Frequency of DFT bin `q` along one axis.
    pub(crate) fn bin_frequency(&self, q: usize) -> f64 {
        self.signed_offset(q) as f64 / (2.0 * self.extent)
    }

    pub(crate) fn check_same(&self, other: &Grid) -> Result<()> {
        if self != other {
            return usage(format!("grid mismatch: {self:?} vs {other:?}"));
        }
        Ok(())
    }
}

/// Complex samples of a function on a [`Grid`], row-major with axis 0 slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return usage(format!(
                "expected {} samples for the grid, got {}",
                grid.len(),
                values.len()
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn from_real(grid: Grid, values: Vec<f64>) -> Result<Self> {
        Self::new(grid, values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_fn<F: Fn(&Point) -> Complex64>(grid: Grid, f: F) -> Self {
        let values = grid.nodes().map(|x| f(&x)).collect();
        Self { grid, values }
    }

    pub fn from_real_fn<F: Fn(&Point) -> f64>(grid: Grid, f: F) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn abs(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    pub fn real_part(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    pub fn map<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        self.map(|v| v * c)
    }

    pub fn scaled_real(&self, c: f64) -> Self {
        self.map(|v| v * c)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: Complex64, other: &Self) -> Result<()> {
        self.grid.check_same(&other.grid)?;
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += c * b;
        }
        Ok(())
    }

    /// Keeps the samples where `keep(index)` holds and zeroes the rest.
    pub fn restricted<F: Fn(usize) -> bool>(&self, keep: F) -> Self {
        Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| if keep(i) { v } else { Complex64::new(0.0, 0.0) })
                .collect(),
        }
    }

    /// Riemann sum `h^n Σ f(x_j)`.
    pub fn integral(&self) -> Complex64 {
        let mut re = Accumulator::default();
        let mut im = Accumulator::default();
        for v in &self.values {
            re.add(v.re);
            im.add(v.im);
        }
        Complex64::new(re.value(), im.value()) * self.grid.cell_volume()
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        lp_norm(self, p)
    }

    pub fn weighted_lp_norm(&self, p: f64, alpha: f64) -> Result<f64> {
        weighted_lp_norm(self, p, alpha)
    }

    /// Multilinear interpolation on the torus at an arbitrary point.
    pub fn interpolate(&self, x: &Point) -> Complex64 {
        let g = &self.grid;
        let h = g.spacing();
        let n = g.dim();
        let mut base = [0isize; 3];
        let mut frac = [0.0; 3];
        for axis in 0..n {
            let t = (x[axis] + g.extent()) / h;
            let fl = t.floor();
            base[axis] = fl as isize;
            frac[axis] = t - fl;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for corner in 0..(1usize << n) {
            let mut w = 1.0;
            let mut idx = [0isize; 3];
            for axis in 0..n {
                let bit = (corner >> axis) & 1;
                idx[axis] = base[axis] + bit as isize;
                w *= if bit == 1 { frac[axis] } else { 1.0 - frac[axis] };
            }
            if w != 0.0 {
                acc += self.values[g.wrapped_index(&idx)] * w;
            }
        }
        acc
    }
}

/// `(h^n Σ |f|^p)^{1/p}`, or `max |f|` for `p = inf`.
pub fn lp_norm(f: &SampledFunction, p: f64) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return domain(format!("L^p exponent p = {p} must be positive"));
    }
    if p.is_infinite() {
        return Ok(f.max_abs());
    }
    let mut acc = Accumulator::default();
    for v in f.values() {
        acc.add(v.norm().powf(p));
    }
    Ok((acc.value() * f.grid().cell_volume()).powf(1.0 / p))
}

/// `(Σ_j W_j |f_j|^p)^{1/p}` with exact cell weights of `|x|^alpha`.
pub fn weighted_lp_norm(f: &SampledFunction, p: f64, alpha: f64) -> Result<f64> {
    let m = WeightedMeasure::new(*f.grid(), alpha)?;
    m.norm(f, p)
}

/// Fourier transform sampled on the dual grid.
pub fn forward_transform(f: &SampledFunction) -> SampledFunction {
    let g = *f.grid();
    let n = g.dim();
    let size = g.size();
    let mut data = f.values().to_vec();
    fft_nd(&mut data, size, n, false);
    let h = g.cell_volume();
    let dual = g.dual();
    let half = size / 2;
    let mut out = vec![Complex64::new(0.0, 0.0); g.len()];
    for (m, slot) in out.iter_mut().enumerate() {
        let mi = dual.multi_index(m);
        let mut q = [0usize; 3];
        let mut sign = 1.0;
        for axis in 0..n {
            // k = m - N/2, stored at DFT bin k mod N
            q[axis] = (mi[axis] + half) % size;
            if (mi[axis] + half) % 2 == 1 {
                sign = -sign;
            }
        }
        *slot = data[g.linear_index(&q)] * (h * sign);
    }
    SampledFunction { grid: dual, values: out }
}

/// Inverse of [`forward_transform`]; `fhat` lives on a dual grid and the
/// result lives on its dual, the original spatial grid.
pub fn inverse_transform(fhat: &SampledFunction) -> SampledFunction {
    let dual = *fhat.grid();
    let g = dual.dual();
    let n = g.dim();
    let size = g.size();
    let half = size / 2;
    let mut data = vec![Complex64::new(0.0, 0.0); g.len()];
    for (m, v) in fhat.values().iter().enumerate() {
        let mi = dual.multi_index(m);
        let mut q = [0usize; 3];
        let mut sign = 1.0;
        for axis in 0..n {
            q[axis] = (mi[axis] + half) % size;
            if (mi[axis] + half) % 2 == 1 {
                sign = -sign;
            }
        }
        data[g.linear_index(&q)] = v * sign;
    }
    fft_nd(&mut data, size, n, true);
    let scale = dual.spacing().powi(n as i32);
    for v in data.iter_mut() {
        *v *= scale;
    }
    SampledFunction { grid: g, values: data }
}

/// Multiplies `f^` by `m(xi)` and transforms back. Equivalent to
/// `inverse_transform(m · forward_transform(f))` without the phase bookkeeping.
pub fn apply_multiplier<M: Fn(&Point) -> Complex64>(f: &SampledFunction, m: M) -> SampledFunction {
    let g = *f.grid();
    let n = g.dim();
    let size = g.size();
    let mut data = f.values().to_vec();
    fft_nd(&mut data, size, n, false);
    let scale = 1.0 / g.len() as f64;
    for (idx, v) in data.iter_mut().enumerate() {
        let q = g.multi_index(idx);
        let mut xi = [0.0; 3];
        for axis in 0..n {
            xi[axis] = g.bin_frequency(q[axis]);
        }
        *v *= m(&xi) * scale;
    }
    fft_nd(&mut data, size, n, true);
    SampledFunction { grid: g, values: data }
}

/// Kernel samples `K(d h)` indexed by wrapped offsets, for periodic convolution.
fn kernel_samples<K: Fn(&Point) -> Complex64>(g: &Grid, kernel: K) -> Vec<Complex64> {
    let h = g.spacing();
    (0..g.len())
        .map(|idx| {
            let m = g.multi_index(idx);
            let mut x = [0.0; 3];
            for axis in 0..g.dim() {
                x[axis] = g.signed_offset(m[axis]) as f64 * h;
            }
            kernel(&x)
        })
        .collect()
}

/// Direct periodic quadrature `h^n Σ_j K(x_i - x_j) f(x_j)`, offsets taken in
/// `[-L, L)` per axis. `O(N^{2n})`; intended for small grids and as an oracle.
pub fn convolve_kernel<K: Fn(&Point) -> Complex64>(f: &SampledFunction, kernel: K) -> SampledFunction {
    let g = *f.grid();
    let ks = kernel_samples(&g, kernel);
    let size = g.size();
    let hn = g.cell_volume();
    let mut out = vec![Complex64::new(0.0, 0.0); g.len()];
    for (i, slot) in out.iter_mut().enumerate() {
        let mi = g.multi_index(i);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, fj) in f.values().iter().enumerate() {
            if fj.re == 0.0 && fj.im == 0.0 {
                continue;
            }
            let mj = g.multi_index(j);
            let mut d = [0usize; 3];
            for axis in 0..g.dim() {
                d[axis] = (mi[axis] + size - mj[axis]) % size;
            }
            acc += ks[g.linear_index(&d)] * fj;
        }
        *slot = acc * hn;
    }
    SampledFunction { grid: g, values: out }
}

/// Same sum as [`convolve_kernel`], evaluated through the FFT.
pub fn convolve_kernel_fft<K: Fn(&Point) -> Complex64>(
    f: &SampledFunction,
    kernel: K,
) -> SampledFunction {
    let g = *f.grid();
    let mut ks = kernel_samples(&g, kernel);
    circular_convolve(f, &mut ks)
}

/// Periodic convolution with kernel samples stored by wrapped offset.
/// `ks` is overwritten with its transform.
pub(crate) fn circular_convolve(f: &SampledFunction, ks: &mut [Complex64]) -> SampledFunction {
    let g = *f.grid();
    let n = g.dim();
    let size = g.size();
    fft_nd(ks, size, n, false);
    let mut data = f.values().to_vec();
    fft_nd(&mut data, size, n, false);
    let scale = g.cell_volume() / g.len() as f64;
    for (v, k) in data.iter_mut().zip(ks.iter()) {
        *v *= k * scale;
    }
    fft_nd(&mut data, size, n, true);
    SampledFunction { grid: g, values: data }
}
