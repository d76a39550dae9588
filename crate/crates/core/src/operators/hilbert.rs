//! The Hilbert transform with kernel `1/(x - t)` (no `1/π`), its truncations
//! and maximal truncation. The multiplier of this kernel is `-iπ sign(xi)`,
//! so `H cos(2πx) = π sin(2πx)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{usage, Result};
use crate::grid::{apply_multiplier, Grid, SampledFunction};

fn check_line(f: &SampledFunction) -> Result<()> {
    if f.grid().dim() != 1 {
        return usage(format!("the Hilbert transform is defined for n = 1, got n = {}", f.grid().dim()));
    }
    Ok(())
}

/// Multiplier `-iπ sign(xi)`, zero at `xi = 0` and on the Nyquist bin.
pub fn hilbert(f: &SampledFunction) -> Result<SampledFunction> {
    check_line(f)?;
    let nyq = f.grid().nyquist();
    Ok(apply_multiplier(f, |xi| {
        let x = xi[0];
        if x == 0.0 || x.abs() >= nyq * (1.0 - 1e-12) {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, -PI * x.signum())
        }
    }))
}

/// `h Σ_{|x - t| > eps} f(t) / (x - t)`, with `f` zero outside the box
/// (linear, not periodic, convolution through a padded FFT).
pub fn hilbert_truncated(f: &SampledFunction, eps: f64) -> Result<SampledFunction> {
    check_line(f)?;
    if !(eps > 0.0) || !eps.is_finite() {
        return usage(format!("truncation eps = {eps} must be positive"));
    }
    let g = *f.grid();
    let size = g.size();
    let h = g.spacing();
    let padded = Grid::new(1, 2.0 * g.extent(), 2 * size)?;
    let mut vals = vec![Complex64::new(0.0, 0.0); 2 * size];
    vals[size / 2..size / 2 + size].copy_from_slice(f.values());
    let fp = SampledFunction::new(padded, vals)?;
    let out = crate::grid::convolve_kernel_fft(&fp, |x| {
        let y = x[0];
        if y.abs() > eps * (1.0 + 1e-12) && y.abs() > 0.5 * h {
            Complex64::new(1.0 / y, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    SampledFunction::new(g, out.values()[size / 2..size / 2 + size].to_vec())
}

/// `max_eps |H_eps f|` over a finite grid of truncations.
pub fn hilbert_maximal(f: &SampledFunction, eps: &[f64]) -> Result<SampledFunction> {
    check_line(f)?;
    if eps.is_empty() {
        return usage("maximal Hilbert transform needs a non-empty eps grid");
    }
    let images = eps.par_iter().map(|&e| hilbert_truncated(f, e)).collect::<Result<Vec<_>>>()?;
    let mut best = vec![0.0f64; f.grid().len()];
    for img in &images {
        for (b, v) in best.iter_mut().zip(img.values()) {
            *b = b.max(v.norm());
        }
    }
    SampledFunction::new(*f.grid(), best.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
}
