//! Far-field size condition `|T b(x)| <= C ‖b‖_1 |x - x0|^{-delta}` for a
//! block `b` supported in `B(x0, r)`, sampled on `2r <= |x - x0| <= R_far`.

use serde::Serialize;

use super::OperatorSpec;
use crate::blockspace::BlockSpec;
use crate::error::{usage, Result};
use crate::grid::SampledFunction;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeConditionReport {
    pub delta: f64,
    /// Sup of the ratio over the outer octave `[R_far/2, R_far]`.
    pub constant: f64,
    /// Sup of the ratio over the whole far zone.
    pub max_ratio: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub samples: usize,
}

pub fn size_condition_check(
    op: &OperatorSpec,
    b: &SampledFunction,
    block: &BlockSpec,
    delta: f64,
    far_radius: f64,
) -> Result<SizeConditionReport> {
    let g = *b.grid();
    let n = g.dim();
    if !(delta > 0.0) {
        return usage(format!("size exponent delta = {delta} must be positive"));
    }
    if far_radius > g.extent() {
        return usage(format!("far radius {far_radius} exceeds the box half-width {}", g.extent()));
    }
    let h = g.spacing();
    for (i, v) in b.values().iter().enumerate() {
        if v.norm() != 0.0 && !block.contains(&g.node(i), n, h) {
            return usage(format!("payload is nonzero at node {i}, outside the block"));
        }
    }
    let x0 = block.center;
    let r_min = 2.0 * block.radius;
    let dist = |i: usize| {
        let x = g.node(i);
        (0..n).map(|a| (x[a] - x0[a]).powi(2)).sum::<f64>().sqrt()
    };
    let far: Vec<(usize, f64)> = (0..g.len())
        .map(|i| (i, dist(i)))
        .filter(|(_, d)| *d >= r_min && *d <= far_radius)
        .collect();
    if far.is_empty() {
        return usage(format!("far zone {r_min} <= |x - x0| <= {far_radius} has no grid nodes"));
    }
    let l1 = b.lp_norm(1.0)?;
    let mut report = SizeConditionReport {
        delta,
        constant: 0.0,
        max_ratio: 0.0,
        r_min,
        r_max: far_radius,
        samples: far.len(),
    };
    if l1 == 0.0 {
        return Ok(report);
    }
    let image = op.apply(b)?;
    for (i, d) in far {
        let ratio = image.values()[i].norm() * d.powf(delta) / l1;
        report.max_ratio = report.max_ratio.max(ratio);
        if d >= 0.5 * far_radius {
            report.constant = report.constant.max(ratio);
        }
    }
    Ok(report)
}
