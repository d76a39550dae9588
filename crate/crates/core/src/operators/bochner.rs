//! Bochner–Riesz means `(1 - |xi/R|^2)_+^lambda` and their maximal function.

use std::cell::RefCell;

use num_complex::Complex64;
use rayon::prelude::*;

use super::Method;
use crate::error::{usage, Result};
use crate::grid::{apply_multiplier, convolve_kernel_fft, norm, SampledFunction};
use crate::special::{bochner_riesz_kernel, RieszParams};

/// `B_R^lambda f`, through the multiplier or by convolution with the sampled
/// kernel `K_R^lambda`.
pub fn bochner_riesz_apply(f: &SampledFunction, rp: &RieszParams, method: Method) -> Result<SampledFunction> {
    let n = f.grid().dim();
    match method {
        Method::Multiplier => Ok(apply_multiplier(f, |xi| Complex64::new(rp.multiplier(norm(xi)), 0.0))),
        Method::Kernel => {
            let err = RefCell::new(None);
            let out = convolve_kernel_fft(f, |x| match bochner_riesz_kernel(n, rp, norm(x)) {
                Ok(v) => Complex64::new(v, 0.0),
                Err(e) => {
                    err.borrow_mut().get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            });
            match err.into_inner() {
                Some(e) => Err(e),
                None => Ok(out),
            }
        }
        Method::Geometric => usage("Bochner-Riesz means have no geometric evaluation"),
    }
}

/// `max_R |B_R^lambda f|` over a finite grid of scales.
pub fn bochner_riesz_maximal(
    f: &SampledFunction,
    lambda: f64,
    radii: &[f64],
    method: Method,
) -> Result<SampledFunction> {
    if radii.is_empty() {
        return usage("Bochner-Riesz maximal function needs a non-empty R grid");
    }
    let images = radii
        .par_iter()
        .map(|&r| bochner_riesz_apply(f, &RieszParams::new(lambda, r)?, method))
        .collect::<Result<Vec<_>>>()?;
    let mut best = vec![0.0f64; f.grid().len()];
    for img in &images {
        for (b, v) in best.iter_mut().zip(img.values()) {
            *b = b.max(v.norm());
        }
    }
    SampledFunction::new(*f.grid(), best.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
}
