//! Axis-by-axis multidimensional FFT on cubic arrays.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(len)
        } else {
            p.plan_fft_forward(len)
        }
    })
}

/// Unnormalised in-place DFT of an `size^dim` array stored row-major.
pub(crate) fn fft_nd(data: &mut [Complex64], size: usize, dim: usize, inverse: bool) {
    debug_assert_eq!(data.len(), size.pow(dim as u32));
    let fft = plan(size, inverse);
    // last axis is contiguous
    fft.process(data);
    if dim == 1 {
        return;
    }
    let mut line = vec![Complex64::new(0.0, 0.0); size];
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    for axis in 0..dim - 1 {
        let stride = size.pow((dim - 1 - axis) as u32);
        let block = stride * size;
        for outer in (0..data.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (k, v) in line.iter_mut().enumerate() {
                    *v = data[base + k * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (k, v) in line.iter().enumerate() {
                    data[base + k * stride] = *v;
                }
            }
        }
    }
}
