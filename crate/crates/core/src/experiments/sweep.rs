use rayon::prelude::*;
use serde::Serialize;

use super::random::{job_rng, random_ball_block};
use crate::blockspace::BlockSpec;
use crate::error::{usage, Error, Result};
use crate::grid::{Grid, Point, SampledFunction, WeightedMeasure};
use crate::operators::OperatorSpec;
use crate::regime::{
    check_bochner_riesz, check_calderon_zygmund, check_singular_integral, check_spherical, Params,
};

/// Positive suites run inside the theorem's regime; contrast suites run on
/// an excluded boundary and expect growth instead of a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Positive,
    Contrast,
}

/// Blocks on dyadic radii, each centred at the origin and, with `offset`,
/// also at `(2r, 0, 0)`. With `random` the payloads are randomly modulated
/// (seeded); otherwise they are normalised indicators.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockFamily {
    pub radii: Vec<f64>,
    pub offset: bool,
    pub random: bool,
    pub seed: u64,
}

impl BlockFamily {
    pub fn indicators(radii: Vec<f64>, offset: bool) -> Self {
        Self { radii, offset, random: false, seed: 0 }
    }

    fn centers(&self, grid: &Grid, r: f64) -> Vec<Point> {
        let mut out = vec![[0.0; 3]];
        if self.offset {
            let h = grid.spacing();
            out.push([(2.0 * r / h).round() * h, 0.0, 0.0]);
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub params: Params,
    pub center: Vec<f64>,
    pub radius: f64,
    /// "I" for radius > 1, "II" for radius <= 1.
    pub restrict: &'static str,
    /// Quasinorm witness of the input: a single valid block.
    pub witness: f64,
    pub output_norm: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub op: String,
    pub mode: SweepMode,
    pub seed: u64,
    pub records: Vec<SweepRecord>,
    pub max_ratio: f64,
}

/// The boundedness theorem's regime for an operator on blocks.
pub fn operator_regime(op: &OperatorSpec, q: &Params) -> Result<()> {
    match op {
        OperatorSpec::HlMaximal { .. } => check_calderon_zygmund(q),
        OperatorSpec::BochnerRiesz { lambda, .. } | OperatorSpec::BochnerRieszMaximal { lambda, .. } => {
            check_bochner_riesz(q, *lambda)
        }
        OperatorSpec::SphericalMean { .. }
        | OperatorSpec::SphericalMaximal { .. }
        | OperatorSpec::SphericalDyadic { .. } => check_spherical(q),
        OperatorSpec::Hilbert
        | OperatorSpec::HilbertTruncated { .. }
        | OperatorSpec::HilbertMaximal { .. }
        | OperatorSpec::CarlesonPartial { .. }
        | OperatorSpec::CarlesonMaximal { .. } => check_singular_integral(q),
    }
}

fn gate(op: &OperatorSpec, q: &Params, mode: SweepMode) -> Result<()> {
    match (mode, operator_regime(op, q)) {
        (SweepMode::Positive, r) => r,
        (SweepMode::Contrast, Err(Error::Hypothesis(_))) => Ok(()),
        (SweepMode::Contrast, Err(e)) => Err(e),
        (SweepMode::Contrast, Ok(())) => Err(Error::Hypothesis(format!(
            "contrast sweep needs params outside the regime of {}, but {q} lies inside",
            op.name()
        ))),
    }
}

/// `‖Op b‖_{L^p(|x|^alpha)}` over a block family, one record per
/// (params, block). The input witness of a single block is 1, so the
/// output norm is the ratio.
pub fn boundedness_sweep(
    op: &OperatorSpec,
    family: &BlockFamily,
    params_list: &[Params],
    grid: &Grid,
    mode: SweepMode,
) -> Result<SweepReport> {
    if params_list.is_empty() || family.radii.is_empty() {
        return usage("sweep needs at least one params triple and one radius");
    }
    for q in params_list {
        if q.n != grid.dim() {
            return usage(format!("params {q} do not match the grid dimension {}", grid.dim()));
        }
        gate(op, q, mode)?;
    }
    // jobs in a fixed order; each gets its own seeded stream
    let mut jobs = Vec::new();
    for (qi, q) in params_list.iter().enumerate() {
        for &r in &family.radii {
            for c in family.centers(grid, r) {
                jobs.push((qi, *q, r, c));
            }
        }
    }
    let measures = params_list
        .iter()
        .map(|q| WeightedMeasure::new(*grid, q.alpha))
        .collect::<Result<Vec<_>>>()?;
    let records = jobs
        .par_iter()
        .enumerate()
        .map(|(job, (qi, q, r, c))| {
            let (spec, payload) = family_block(family, grid, q, *r, *c, job as u64)?;
            let image = op.apply(&payload)?;
            let output_norm = measures[*qi].norm(&image, q.p)?;
            Ok(SweepRecord {
                params: *q,
                center: spec.center[..grid.dim()].to_vec(),
                radius: *r,
                restrict: if *r > 1.0 { "I" } else { "II" },
                witness: 1.0,
                output_norm,
                ratio: output_norm,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_ratio = records.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(SweepReport { op: op.to_string(), mode, seed: family.seed, records, max_ratio })
}

fn family_block(
    family: &BlockFamily,
    grid: &Grid,
    q: &Params,
    r: f64,
    c: Point,
    job: u64,
) -> Result<(BlockSpec, SampledFunction)> {
    let n = grid.dim();
    let h = grid.spacing();
    let spec = BlockSpec::ball(c, r);
    let raw = if family.random {
        let mut rng = job_rng(family.seed, job);
        let b = random_ball_block(&mut rng, grid, q, r, false)?;
        // move the random profile to the requested centre
        let shift: Vec<isize> = (0..n).map(|a| (c[a] / h).round() as isize).collect();
        let src = b.payload;
        SampledFunction::from_fn(*grid, |x| {
            let mut y = *x;
            for a in 0..n {
                y[a] -= shift[a] as f64 * h;
            }
            if spec.contains(x, n, h) {
                src.interpolate(&y)
            } else {
                num_complex::Complex64::new(0.0, 0.0)
            }
        })
    } else {
        SampledFunction::from_real_fn(*grid, |x| if spec.contains(x, n, h) { 1.0 } else { 0.0 })
    };
    let norm = raw.lp_norm(q.s)?;
    if norm == 0.0 {
        return usage(format!("block of radius {r} contains no grid nodes"));
    }
    // indicators sit exactly on the budget; random profiles keep their
    // drawn margin unless the shift pushed it over 1
    let budget = spec.budget(q) / norm;
    let scale = if family.random { budget.min(1.0) } else { budget };
    Ok((spec, raw.scaled_real(scale)))
}

/// The box for one radius-range doubling: same spacing, and the number of
/// octaves between the largest block radius and the half-width doubled
/// (`L -> L^2 / r_top`).
pub fn range_doubled(grid: &Grid, family: &BlockFamily) -> Result<Grid> {
    let r_top = family.radii.iter().copied().fold(0.0, f64::max);
    let l = grid.extent();
    if !(r_top > 0.0 && r_top < l) {
        return usage(format!("largest block radius {r_top} must lie in (0, L = {l})"));
    }
    let factor = (l / r_top).round() as usize;
    if factor < 2 || ((l / r_top) - factor as f64).abs() > 1e-9 {
        return usage(format!("L / r_top = {} must be an integer >= 2 to double the range", l / r_top));
    }
    Grid::new(grid.dim(), l * factor as f64, grid.size() * factor)
}

/// Outcome of a sweep under one radius-range doubling and, for positive
/// suites, one resolution doubling.
#[derive(Debug, Clone, Serialize)]
pub struct SweepStability {
    pub base: f64,
    pub range: f64,
    pub resolution: Option<f64>,
    /// `range / base`.
    pub growth: f64,
    pub pass: bool,
}

/// Positive suites PASS when both refinements keep the max ratio within
/// 25%; contrast suites PASS when the range doubling grows it by 1.5x.
pub fn sweep_stability<F>(op_for: F, family: &BlockFamily, params: &[Params], grid: &Grid, mode: SweepMode) -> Result<SweepStability>
where
    F: Fn(&Grid) -> OperatorSpec,
{
    let run = |g: &Grid| boundedness_sweep(&op_for(g), family, params, g, mode).map(|r| r.max_ratio);
    let base = run(grid)?;
    let range = run(&range_doubled(grid, family)?)?;
    let growth = if base > 0.0 { range / base } else { 0.0 };
    Ok(match mode {
        SweepMode::Contrast => SweepStability { base, range, resolution: None, growth, pass: growth >= 1.5 },
        SweepMode::Positive => {
            let res = run(&grid.refined()?)?;
            let pass = relative_drift(base, range) <= 0.25 && relative_drift(base, res) <= 0.25;
            SweepStability { base, range, resolution: Some(res), growth, pass }
        }
    })
}

/// `|b/a - 1|`, or 0 when both vanish.
pub fn relative_drift(a: f64, b: f64) -> f64 {
    if a == 0.0 && b == 0.0 {
        0.0
    } else {
        (b / a - 1.0).abs()
    }
}
