//! Hardy–Littlewood maximal operator over a finite radius grid, with `f`
//! extended by zero outside the box.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{usage, Result};
use crate::grid::{Grid, SampledFunction};

/// Radii `h, 2h, 4h, ...` not exceeding `r_max`.
pub fn dyadic_radii(h: f64, r_max: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut r = h;
    while r <= r_max * (1.0 + 1e-12) {
        out.push(r);
        r *= 2.0;
    }
    out
}

/// One row of a ball stencil: offsets on the leading axes and the half
/// width along the last axis.
struct Row {
    lead: [isize; 2],
    half: isize,
}

fn ball_rows(n: usize, radius_cells: f64) -> Vec<Row> {
    let rr = radius_cells * radius_cells * (1.0 + 1e-12);
    let m = radius_cells.floor() as isize;
    let mut rows = Vec::new();
    let lead_range = |k: usize| if k < n - 1 { -m..=m } else { 0..=0 };
    for a in lead_range(0) {
        for b in lead_range(1) {
            let d2 = (a * a + b * b) as f64;
            if d2 <= rr {
                rows.push(Row { lead: [a, b], half: (rr - d2).sqrt().floor() as isize });
            }
        }
    }
    rows
}

/// Prefix sums of `|f|` along the last axis, one extra slot per line.
fn prefix_lines(g: &Grid, a: &[f64]) -> Vec<f64> {
    let size = g.size();
    let lines = g.len() / size;
    let mut out = vec![0.0; lines * (size + 1)];
    for l in 0..lines {
        let mut acc = 0.0;
        for k in 0..size {
            acc += a[l * size + k];
            out[l * (size + 1) + k + 1] = acc;
        }
    }
    out
}

/// Ball sums `Σ_{|y-x| <= r} |f(y)|` and node counts, zero outside the box.
fn ball_average(g: &Grid, prefix: &[f64], rows: &[Row]) -> Vec<f64> {
    let n = g.dim();
    let size = g.size() as isize;
    let count: f64 = rows.iter().map(|r| (2 * r.half + 1) as f64).sum();
    (0..g.len())
        .into_par_iter()
        .map(|i| {
            let m = g.multi_index(i);
            let last = m[n - 1] as isize;
            let mut acc = 0.0;
            for row in rows {
                let mut line = 0isize;
                let mut inside = true;
                for a in 0..n - 1 {
                    let c = m[a] as isize + row.lead[a];
                    if c < 0 || c >= size {
                        inside = false;
                        break;
                    }
                    line = line * size + c;
                }
                if !inside {
                    continue;
                }
                let lo = (last - row.half).max(0);
                let hi = (last + row.half + 1).min(size);
                if lo >= hi {
                    continue;
                }
                let base = (line * (size + 1)) as usize;
                acc += prefix[base + hi as usize] - prefix[base + lo as usize];
            }
            (acc / count).max(0.0)
        })
        .collect()
}

fn check_radii(g: &Grid, radii: &[f64]) -> Result<()> {
    if radii.is_empty() {
        return usage("maximal operator needs a non-empty radius grid");
    }
    if let Some(r) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return usage(format!("radius {r} must be positive"));
    }
    if let Some(r) = radii.iter().find(|&&r| r > g.extent()) {
        return usage(format!("radius {r} exceeds the box half-width {}", g.extent()));
    }
    Ok(())
}

/// Centred maximal function: max over the radius grid, and the single node,
/// of the mean of `|f|` over the nodes in `B(x, r)`.
pub fn hl_maximal(f: &SampledFunction, radii: &[f64]) -> Result<SampledFunction> {
    let g = *f.grid();
    check_radii(&g, radii)?;
    let abs = f.abs();
    let prefix = prefix_lines(&g, &abs);
    let h = g.spacing();
    let mut best = abs.clone();
    for &r in radii {
        let avg = ball_average(&g, &prefix, &ball_rows(g.dim(), r / h));
        for (b, a) in best.iter_mut().zip(avg) {
            *b = b.max(a);
        }
    }
    Ok(SampledFunction::new(g, best.into_iter().map(|v| Complex64::new(v, 0.0)).collect())?)
}

/// Uncentred variant: max over grid-centred balls `B(c, r)` containing `x`.
pub fn hl_maximal_uncentered(f: &SampledFunction, radii: &[f64]) -> Result<SampledFunction> {
    let g = *f.grid();
    check_radii(&g, radii)?;
    let n = g.dim();
    let size = g.size() as isize;
    let abs = f.abs();
    let prefix = prefix_lines(&g, &abs);
    let h = g.spacing();
    let mut best = abs.clone();
    for &r in radii {
        let rows = ball_rows(n, r / h);
        let avg = ball_average(&g, &prefix, &rows);
        // max filter of the averages over the same stencil
        let spread: Vec<f64> = (0..g.len())
            .into_par_iter()
            .map(|i| {
                let m = g.multi_index(i);
                let mut v: f64 = 0.0;
                for row in &rows {
                    let mut c = [0isize; 3];
                    let mut inside = true;
                    for a in 0..n - 1 {
                        c[a] = m[a] as isize + row.lead[a];
                        inside &= c[a] >= 0 && c[a] < size;
                    }
                    if !inside {
                        continue;
                    }
                    let last = m[n - 1] as isize;
                    for d in (last - row.half).max(0)..(last + row.half + 1).min(size) {
                        c[n - 1] = d;
                        let idx = c[..n].iter().fold(0usize, |acc, &x| acc * size as usize + x as usize);
                        v = v.max(avg[idx]);
                    }
                }
                v
            })
            .collect();
        for (b, a) in best.iter_mut().zip(spread) {
            *b = b.max(a);
        }
    }
    Ok(SampledFunction::new(g, best.into_iter().map(|v| Complex64::new(v, 0.0)).collect())?)
}
