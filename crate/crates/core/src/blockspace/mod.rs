//! Weighted `(p, s, alpha)`-blocks, block decompositions and their
//! quasinorm witnesses.
//!
//! A block supported in a ball `B` satisfies
//! `||b||_{L^s} <= |B|^{-alpha/(pn) - 1/p + 1/s}`; the ratio of the two sides
//! is the block's *margin*. A decomposition `f = Σ λ_k b_k` certifies the
//! quasinorm bound `(Σ |λ_k|^{min(p,1)})^{1/min(p,1)}`.

mod decompose;
mod embedding;
mod manifest;
mod molecule;
mod whitney;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::grid::{unit_ball_volume, Grid, Point, SampledFunction};
use crate::regime::Params;
use crate::util::Accumulator;

pub use decompose::{
    centered_cube_constant, decompose_annuli, decompose_maximal_whitney, decompose_schwartz,
    decompose_simple, decompose_tail, schwartz_decay_order, simple_function, simple_norm_check,
    SimpleCheck, SimpleTerm,
};
pub use embedding::{embedding_constant, embedding_ratio};
pub use manifest::{
    read_sidecar, write_manifest, write_sidecar, Manifest, ManifestGrid, ManifestParams, ManifestTerm,
    FORMAT_VERSION,
};
pub use molecule::{molecule_ratio, molecule_to_blocks, Molecule, MoleculeExponents};
pub use whitney::{whitney_cubes, WhitneyCube};

/// Support shape of a block: Euclidean ball or axis-parallel cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Ball,
    Cube,
}

/// Closed ball `|x - c| <= r` or cube `|x - c|_inf <= r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub center: Point,
    pub radius: f64,
    pub shape: Shape,
}

/// Relative slack for closed-set membership tests on nodes.
const EDGE: f64 = 1e-9;

impl BlockSpec {
    pub fn ball(center: Point, radius: f64) -> Self {
        Self { center, radius, shape: Shape::Ball }
    }

    pub fn cube(center: Point, half: f64) -> Self {
        Self { center, radius: half, shape: Shape::Cube }
    }

    /// Exact Lebesgue measure in R^n.
    pub fn measure(&self, n: usize) -> f64 {
        match self.shape {
            Shape::Ball => unit_ball_volume(n) * self.radius.powi(n as i32),
            Shape::Cube => (2.0 * self.radius).powi(n as i32),
        }
    }

    pub fn contains(&self, x: &Point, n: usize, h: f64) -> bool {
        let slack = EDGE * (self.radius + h);
        let d = match self.shape {
            Shape::Ball => (0..n).map(|i| (x[i] - self.center[i]).powi(2)).sum::<f64>().sqrt(),
            Shape::Cube => (0..n).fold(0.0f64, |m, i| m.max((x[i] - self.center[i]).abs())),
        };
        d <= self.radius + slack
    }

    /// `|B|^{-alpha/(pn) - 1/p + 1/s}`, the largest admissible `L^s` norm.
    pub fn budget(&self, params: &Params) -> f64 {
        self.measure(params.n).powf(params.block_exponent())
    }
}

/// Block payload stored on its support only.
#[derive(Debug, Clone, PartialEq)]
pub struct Payload {
    grid: Grid,
    support: Vec<usize>,
    values: Vec<Complex64>,
}

impl Payload {
    /// Nonzero samples of `f`, optionally scaled.
    pub fn from_dense(f: &SampledFunction, scale: f64) -> Self {
        let mut support = Vec::new();
        let mut values = Vec::new();
        for (i, v) in f.values().iter().enumerate() {
            if v.re != 0.0 || v.im != 0.0 {
                support.push(i);
                values.push(v * scale);
            }
        }
        Self { grid: *f.grid(), support, values }
    }

    /// Samples of `f` on `cells`, times `scale`; zero samples dropped.
    pub fn from_cells<I: IntoIterator<Item = usize>>(f: &SampledFunction, cells: I, scale: f64) -> Self {
        let mut support = Vec::new();
        let mut values = Vec::new();
        for i in cells {
            let v = f.values()[i];
            if v.re != 0.0 || v.im != 0.0 {
                support.push(i);
                values.push(v * scale);
            }
        }
        Self { grid: *f.grid(), support, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn to_dense(&self) -> SampledFunction {
        let mut f = SampledFunction::zeros(self.grid);
        let vals = f.values_mut();
        for (&i, &v) in self.support.iter().zip(&self.values) {
            vals[i] = v;
        }
        f
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            grid: self.grid,
            support: self.support.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Sampled `L^s` norm (max for `s = inf`).
    pub fn lp_norm(&self, s: f64) -> f64 {
        if s.is_infinite() {
            return self.values.iter().fold(0.0, |m, v| m.max(v.norm()));
        }
        let mut acc = Accumulator::default();
        for v in &self.values {
            acc.add(v.norm().powf(s));
        }
        (acc.value() * self.grid.cell_volume()).powf(1.0 / s)
    }
}

/// `||b||_s / |B|^{-alpha/(pn)-1/p+1/s}`; fails if `b` is not supported in `B`.
pub fn block_margin(f: &SampledFunction, spec: &BlockSpec, params: &Params) -> Result<f64> {
    let p = Payload::from_dense(f, 1.0);
    payload_margin(&p, spec, params)
}

pub(crate) fn payload_margin(p: &Payload, spec: &BlockSpec, params: &Params) -> Result<f64> {
    let g = p.grid();
    if g.dim() != params.n {
        return usage(format!("grid dimension {} differs from n = {}", g.dim(), params.n));
    }
    let h = g.spacing();
    if let Some(&i) = p.support().iter().find(|&&i| !spec.contains(&g.node(i), g.dim(), h)) {
        return usage(format!(
            "payload is nonzero at {:?}, outside the block {:?}",
            &g.node(i)[..g.dim()],
            spec
        ));
    }
    Ok(p.lp_norm(params.s) / spec.budget(params))
}

/// One term `λ b` of a decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coefficient: Complex64,
    pub block: BlockSpec,
    pub payload: Payload,
    pub margin: f64,
}

/// Finite block decomposition of a sampled function.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub kind: String,
    pub params: Params,
    pub grid: Grid,
    pub terms: Vec<Term>,
    /// Construction constants and proof-chain quantities, keyed by name.
    pub diagnostics: BTreeMap<String, f64>,
}

impl Decomposition {
    pub fn empty(kind: &str, params: Params, grid: Grid) -> Self {
        Self {
            kind: kind.to_string(),
            params,
            grid,
            terms: Vec::new(),
            diagnostics: BTreeMap::new(),
        }
    }

    /// Appends `λ b`, computing the margin of `b` against `block`.
    pub fn push(&mut self, coefficient: Complex64, block: BlockSpec, payload: Payload) -> Result<()> {
        if payload.is_empty() {
            return Ok(());
        }
        let margin = payload_margin(&payload, &block, &self.params)?;
        self.terms.push(Term { coefficient, block, payload, margin });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_margin(&self) -> f64 {
        self.terms.iter().fold(0.0, |m, t| m.max(t.margin))
    }

    /// `(Σ |λ_k|^{p̄})^{1/p̄}` with `p̄ = min(p, 1)`.
    pub fn quasinorm_bound(&self) -> f64 {
        quasinorm_bound(self)
    }

    /// The witness bound, refused if some block exceeds margin `1 + tau`.
    pub fn checked_quasinorm_bound(&self, tau: f64) -> Result<f64> {
        if let Some((k, t)) = self.terms.iter().enumerate().find(|(_, t)| t.margin > 1.0 + tau) {
            return usage(format!("term {k} is not a block: margin {} > 1 + {tau}", t.margin));
        }
        Ok(self.quasinorm_bound())
    }

    /// `Σ λ_k b_k` on the grid.
    pub fn reconstruct(&self) -> SampledFunction {
        reconstruct(self)
    }

    /// Concatenation of two decompositions over the same grid and exponents.
    pub fn concat(&self, other: &Decomposition) -> Result<Decomposition> {
        self.grid.check_same(&other.grid)?;
        if self.params != other.params {
            return usage("cannot concatenate decompositions with different exponents");
        }
        let mut out = self.clone();
        out.kind = format!("{}+{}", self.kind, other.kind);
        out.terms.extend(other.terms.iter().cloned());
        out.diagnostics.clear();
        Ok(out)
    }
}

pub fn quasinorm_bound(d: &Decomposition) -> f64 {
    let pb = d.params.pbar();
    let mut acc = Accumulator::default();
    for t in &d.terms {
        acc.add(t.coefficient.norm().powf(pb));
    }
    acc.value().powf(1.0 / pb)
}

pub fn reconstruct(d: &Decomposition) -> SampledFunction {
    let mut f = SampledFunction::zeros(d.grid);
    let vals = f.values_mut();
    for t in &d.terms {
        for (&i, &v) in t.payload.support().iter().zip(t.payload.values()) {
            vals[i] += t.coefficient * v;
        }
    }
    f
}

/// Nodes in dyadic shells about `center`: shell `k` holds
/// `2^{k-1} < |x - c| <= 2^k`, the innermost shell `k_min` the whole ball.
pub(crate) fn dyadic_shells(
    grid: &Grid,
    center: &Point,
    support: &[usize],
    k_min: i32,
) -> BTreeMap<i32, Vec<usize>> {
    let mut shells: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    let n = grid.dim();
    for &i in support {
        let x = grid.node(i);
        let r = (0..n).map(|a| (x[a] - center[a]).powi(2)).sum::<f64>().sqrt();
        let mut k = if r > 0.0 { r.log2().ceil() as i32 } else { k_min };
        // guard against log2 rounding at exact powers of two
        if k > k_min && r <= 2f64.powi(k - 1) {
            k -= 1;
        }
        if r > 2f64.powi(k) {
            k += 1;
        }
        shells.entry(k.max(k_min)).or_default().push(i);
    }
    shells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{sample, FunctionSpec};

    fn params() -> Params {
        Params::new(1, 1.0, 2.0, -0.25).unwrap()
    }

    #[test]
    fn margin_of_normalised_indicator() {
        let g = Grid::new(1, 4.0, 64).unwrap();
        let q = params();
        let spec = BlockSpec::ball([0.0; 3], 1.0);
        let f = sample(&g, &FunctionSpec::ball(1.0)).unwrap();
        let raw = f.lp_norm(2.0).unwrap();
        let b = f.scaled_real(spec.budget(&q) / raw);
        let m = block_margin(&b, &spec, &q).unwrap();
        assert!((m - 1.0).abs() < 1e-14);
        // margin scales linearly
        let m2 = block_margin(&b.scaled_real(0.5), &spec, &q).unwrap();
        assert!((m2 - 0.5).abs() < 1e-14);
    }

    #[test]
    fn support_violation_is_usage_error() {
        let g = Grid::new(1, 4.0, 64).unwrap();
        let f = sample(&g, &FunctionSpec::ball(2.0)).unwrap();
        let spec = BlockSpec::ball([0.0; 3], 1.0);
        assert!(matches!(block_margin(&f, &spec, &params()), Err(crate::Error::Usage(_))));
    }

    #[test]
    fn empty_decomposition_is_zero() {
        let g = Grid::new(1, 4.0, 16).unwrap();
        let d = Decomposition::empty("none", params(), g);
        assert_eq!(d.quasinorm_bound(), 0.0);
        assert!(d.reconstruct().is_zero());
    }

    #[test]
    fn shells_partition_support() {
        let g = Grid::new(2, 8.0, 32).unwrap();
        let all: Vec<usize> = (0..g.len()).collect();
        let shells = dyadic_shells(&g, &[0.0; 3], &all, 1);
        let total: usize = shells.values().map(|v| v.len()).sum();
        assert_eq!(total, g.len());
        for (&k, cells) in &shells {
            for &i in cells {
                let r = crate::grid::norm(&g.node(i));
                assert!(r <= 2f64.powi(k) * (1.0 + 1e-12));
                if k > 1 {
                    assert!(r > 2f64.powi(k - 1));
                }
            }
        }
    }
}
