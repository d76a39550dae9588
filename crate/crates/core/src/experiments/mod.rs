//! Experiment drivers: norm-convergence curves, boundedness sweeps over
//! block families, block-image witnesses through molecules, and the
//! two-resolution refinement audit.
//!
//! Every driver checks its regime first and refuses with the violated
//! inequality named. Randomised inputs draw from a ChaCha stream seeded by
//! `(master seed, job id)`, so reports are reproducible bit for bit.

mod convergence;
mod output;
mod random;
mod refine;
mod sweep;
mod witness;

pub use convergence::{convergence_curve, convergence_experiment, ConvergenceFamily, ErrorCurve, Verdict};
pub use output::{format_float, write_curve_csv, write_sweep_csv, CSV_VERSION_LINE};
pub use random::{job_rng, random_ball_block, RandomBlock};
pub use refine::{refine_and_compare, Refinement, StabilityReport};
pub use sweep::{
    boundedness_sweep, operator_regime, range_doubled, relative_drift, sweep_stability, BlockFamily, SweepMode,
    SweepRecord, SweepReport, SweepStability,
};
pub use witness::{block_image_witness, WitnessReport};
