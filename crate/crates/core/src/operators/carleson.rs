//! Partial Fourier integrals `S_N f` (sharp cutoff `|xi| <= N`) and their
//! maximal function.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{usage, Result};
use crate::grid::{apply_multiplier, SampledFunction};

pub fn carleson_partial_sum(f: &SampledFunction, cutoff: f64) -> Result<SampledFunction> {
    if f.grid().dim() != 1 {
        return usage(format!("partial sums S_N are defined for n = 1, got n = {}", f.grid().dim()));
    }
    if !(cutoff >= 0.0) {
        return usage(format!("cutoff N = {cutoff} must be non-negative"));
    }
    // a sliver of slack keeps bins at exactly |xi| = N inside
    let edge = cutoff * (1.0 + 1e-12);
    Ok(apply_multiplier(f, |xi| {
        Complex64::new(if xi[0].abs() <= edge { 1.0 } else { 0.0 }, 0.0)
    }))
}

pub fn carleson_maximal(f: &SampledFunction, cutoffs: &[f64]) -> Result<SampledFunction> {
    if cutoffs.is_empty() {
        return usage("Carleson maximal function needs a non-empty N grid");
    }
    let images = cutoffs
        .par_iter()
        .map(|&c| carleson_partial_sum(f, c))
        .collect::<Result<Vec<_>>>()?;
    let mut best = vec![0.0f64; f.grid().len()];
    for img in &images {
        for (b, v) in best.iter_mut().zip(img.values()) {
            *b = b.max(v.norm());
        }
    }
    SampledFunction::new(*f.grid(), best.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
}
