//! Numerical laboratory for power-weighted block spaces.
//!
//! Functions live on a periodic box `[-L, L)^n` (n = 1, 2, 3) sampled on a
//! uniform grid. On top of that sit special functions (Bessel, Gamma,
//! asymptotic expansions), block decompositions and their quasinorm
//! witnesses, the classical operators (Bochner–Riesz means, maximal
//! functions, spherical means, Hilbert transform, partial Fourier sums),
//! and the experiment drivers that measure convergence and boundedness.

pub mod blockspace;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod operators;
pub mod quadrature;
pub mod regime;
pub mod special;
mod util;

pub use error::{Error, Result};
pub use grid::{Grid, Point, SampledFunction};
pub use regime::Params;
