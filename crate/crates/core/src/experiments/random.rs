use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blockspace::BlockSpec;
use crate::error::{usage, Result};
use crate::grid::{Grid, SampledFunction};
use crate::regime::Params;
use crate::util::mix64;

/// Independent stream for job `job` under master seed `seed`.
pub fn job_rng(seed: u64, job: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix64(seed ^ mix64(job)))
}

#[derive(Debug, Clone)]
pub struct RandomBlock {
    pub spec: BlockSpec,
    pub payload: SampledFunction,
    /// Sampled margin `‖b‖_s / budget`, drawn in `[0.5, 1]`.
    pub margin: f64,
}

/// A `(p, s, alpha)`-block on the ball of the given radius: a randomly
/// modulated positive profile, rescaled to a random margin in `[0.5, 1]`.
/// With `offset` the centre is a random grid node keeping the ball inside
/// the box; otherwise it is the origin.
pub fn random_ball_block<R: Rng>(
    rng: &mut R,
    grid: &Grid,
    params: &Params,
    radius: f64,
    offset: bool,
) -> Result<RandomBlock> {
    let n = grid.dim();
    if params.n != n {
        return usage(format!("params are for n = {} but the grid has n = {n}", params.n));
    }
    let h = grid.spacing();
    let room = grid.extent() - radius - 2.0 * h;
    if room < 0.0 {
        return usage(format!("ball of radius {radius} does not fit in the box of half-width {}", grid.extent()));
    }
    let mut center = [0.0; 3];
    if offset {
        for c in center.iter_mut().take(n) {
            let k = (room / h).floor() as i64;
            *c = rng.random_range(-k..=k) as f64 * h;
        }
    }
    let mut k = [0.0; 3];
    for v in k.iter_mut().take(n) {
        *v = rng.random_range(-2.0..2.0) / radius;
    }
    let phase = rng.random_range(0.0..std::f64::consts::TAU);
    let depth = rng.random_range(0.0..0.8);
    let spec = BlockSpec::ball(center, radius);
    let raw = SampledFunction::from_real_fn(*grid, |x| {
        if !spec.contains(x, n, h) {
            return 0.0;
        }
        let arg: f64 = (0..n).map(|a| k[a] * (x[a] - center[a])).sum();
        1.0 + depth * (arg + phase).sin()
    });
    let norm = raw.lp_norm(params.s)?;
    if norm == 0.0 {
        return usage(format!("ball of radius {radius} contains no grid nodes"));
    }
    let margin = rng.random_range(0.5..=1.0);
    let payload = raw.scaled_real(margin * spec.budget(params) / norm);
    Ok(RandomBlock { spec, payload, margin })
}
