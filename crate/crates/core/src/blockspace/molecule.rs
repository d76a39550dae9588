//! Molecules: decaying functions controlled by
//! `R(M) = ||M||_s^{a/b} || M |x - x_0|^{nb} ||_s^{1 - a/b}`, and their
//! decomposition into blocks on dyadic shells with coefficients `2^{-kna}`.

use num_complex::Complex64;

use super::{dyadic_shells, BlockSpec, Decomposition, Payload};
use crate::error::{domain, usage, Error, Result};
use crate::grid::{Point, SampledFunction, WeightedMeasure};
use crate::regime::Params;
use crate::util::Accumulator;

/// `A_0`, `B_0 = A_0 - (1/s - 1/p - alpha/(np))` and `eps`; `a = A_0 - eps`,
/// `b = B_0 - eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoleculeExponents {
    pub a0: f64,
    pub b0: f64,
    pub eps: f64,
}

impl MoleculeExponents {
    pub fn new(params: &Params, a0: f64, eps: f64) -> Result<Self> {
        if !(eps < a0) {
            return domain(format!("molecule needs eps < A_0, got eps = {eps}, A_0 = {a0}"));
        }
        Ok(Self { a0, b0: a0 - params.block_exponent(), eps })
    }

    /// The usual choice `A_0 = 1 - 1/p - alpha/(np)`, `B_0 = 1 - 1/s`.
    pub fn standard(params: &Params, eps: f64) -> Result<Self> {
        Self::new(params, 1.0 - 1.0 / params.p - params.alpha / (params.p * params.nf()), eps)
    }

    pub fn a(&self) -> f64 {
        self.a0 - self.eps
    }

    pub fn b(&self) -> f64 {
        self.b0 - self.eps
    }
}

/// A payload with centre, exponents and decay parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Molecule {
    pub payload: SampledFunction,
    pub center: Point,
    pub params: Params,
    pub exponents: MoleculeExponents,
}

impl Molecule {
    pub fn new(payload: SampledFunction, center: Point, params: Params, exponents: MoleculeExponents) -> Self {
        Self { payload, center, params, exponents }
    }
}

/// Index of the grid node at `center`; molecules are centred on nodes.
fn center_node(m: &Molecule) -> Result<usize> {
    let g = m.payload.grid();
    let n = g.dim();
    let h = g.spacing();
    let mut multi = [0usize; 3];
    for a in 0..n {
        let t = (m.center[a] + g.extent()) / h;
        let r = t.round();
        if (t - r).abs() > 1e-9 || r < 0.0 || r >= g.size() as f64 {
            return usage(format!("molecule centre {:?} is not a grid node", &m.center[..n]));
        }
        multi[a] = r as usize;
    }
    Ok(g.linear_index(&multi[..n]))
}

/// `(Σ |M_j|^s W_j)^{1/s}` with `W_j = ∫_{cell_j} |x - x_0|^{nbs}`: exact cell
/// integrals where the offset fits the grid, midpoint values elsewhere.
fn weighted_norm(m: &Molecule, b: f64) -> Result<f64> {
    let g = *m.payload.grid();
    let n = g.dim();
    let s = m.params.s;
    let beta = n as f64 * b * s;
    let c = center_node(m)?;
    let cm = g.multi_index(c);
    let om = g.multi_index(g.origin_index());
    let local = beta > -(n as f64);
    if !local && m.payload.values()[c].norm() != 0.0 {
        return domain(format!(
            "|x - x0|^{{nbs}} with nbs = {beta} is not integrable and M(x0) != 0"
        ));
    }
    let exact = if local { Some(WeightedMeasure::new(g, beta)?) } else { None };
    let mut acc = Accumulator::default();
    for (j, v) in m.payload.values().iter().enumerate() {
        let a = v.norm();
        if a == 0.0 {
            continue;
        }
        let jm = g.multi_index(j);
        let mut target = [0usize; 3];
        let mut fits = true;
        for ax in 0..n {
            let t = om[ax] as isize + jm[ax] as isize - cm[ax] as isize;
            if t < 0 || t >= g.size() as isize {
                fits = false;
            }
            target[ax] = t.max(0) as usize;
        }
        let w = match (&exact, fits) {
            (Some(wm), true) => wm.weights()[g.linear_index(&target[..n])],
            _ => {
                let x = g.node(j);
                let r = (0..n).map(|ax| (x[ax] - m.center[ax]).powi(2)).sum::<f64>().sqrt();
                r.powf(beta) * g.cell_volume()
            }
        };
        acc.add(a.powf(s) * w);
    }
    Ok(acc.value().powf(1.0 / s))
}

fn check_finite_s(params: &Params) -> Result<()> {
    if params.s.is_infinite() {
        return domain("molecules need s < infinity");
    }
    Ok(())
}

/// `R(M) = ||M||_s^{a/b} || M |x - x_0|^{nb} ||_s^{1 - a/b}`.
pub fn molecule_ratio(m: &Molecule) -> Result<f64> {
    check_finite_s(&m.params)?;
    let (a, b) = (m.exponents.a(), m.exponents.b());
    if b == 0.0 {
        return Err(Error::Domain("degenerate molecule exponent b = 0".into()));
    }
    let plain = m.payload.lp_norm(m.params.s)?;
    if plain == 0.0 {
        return Ok(0.0);
    }
    let weighted = weighted_norm(m, b)?;
    Ok(plain.powf(a / b) * weighted.powf(1.0 - a / b))
}

/// Shells `E_0 = B(x_0, 2^{k_0})`, `E_k = B(x_0, 2^{k_0+k}) \ B(x_0, 2^{k_0+k-1})`
/// with `k_0` fixed by `||M'||_s = |B(0, r)|^{1/s-1/p-alpha/(np)}` for
/// `M' = M / R(M)`. Each piece `2^{kna} M' χ_{E_k}` is divided by the largest
/// margin `C_block`, so the coefficients are `R(M) C_block 2^{-kna}`.
pub fn molecule_to_blocks(m: &Molecule) -> Result<Decomposition> {
    check_finite_s(&m.params)?;
    let a = m.exponents.a();
    if !(a > 0.0) {
        return Err(Error::Hypothesis(format!("molecule decomposition needs a > 0, got a = {a}")));
    }
    let params = m.params;
    let grid = *m.payload.grid();
    let mut d = Decomposition::empty("molecule", params, grid);
    let ratio = molecule_ratio(m)?;
    if ratio == 0.0 {
        return Ok(d);
    }
    let n = params.n;
    let nf = params.nf();
    let e = params.block_exponent();
    let unit = BlockSpec::ball([0.0; 3], 1.0).measure(n);
    let volume = if e.abs() > 1e-12 {
        (m.payload.lp_norm(params.s)? / ratio).powf(1.0 / e)
    } else {
        (weighted_norm(m, m.exponents.b())? / ratio).powf(1.0 / a)
    };
    let r = (volume / unit).powf(1.0 / nf);
    let mut k0 = r.log2().ceil() as i32;
    if 2f64.powi(k0) < r {
        k0 += 1;
    }
    let support: Vec<usize> = m
        .payload
        .values()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.norm() != 0.0)
        .map(|(i, _)| i)
        .collect();
    let shells = dyadic_shells(&grid, &m.center, &support, k0);
    let mut pieces = Vec::new();
    let mut c_block: f64 = 0.0;
    for (&key, cells) in &shells {
        let k = key - k0;
        let scale = 2f64.powf(k as f64 * nf * a) / ratio;
        let payload = Payload::from_cells(&m.payload, cells.iter().copied(), scale);
        let spec = BlockSpec::ball(m.center, 2f64.powi(key));
        let margin = super::payload_margin(&payload, &spec, &params)?;
        c_block = c_block.max(margin);
        pieces.push((k, spec, payload));
    }
    let pb = params.pbar();
    let mut series = Accumulator::default();
    for (k, spec, payload) in pieces {
        let coeff = ratio * c_block * 2f64.powf(-(k as f64) * nf * a);
        series.add(2f64.powf(-(k as f64) * nf * a * pb));
        d.push(Complex64::new(coeff, 0.0), spec, payload.scaled(1.0 / c_block))?;
    }
    d.diagnostics.insert("ratio".into(), ratio);
    d.diagnostics.insert("block_constant".into(), c_block);
    d.diagnostics.insert("radius".into(), r);
    d.diagnostics.insert("k0".into(), k0 as f64);
    d.diagnostics.insert("a".into(), a);
    d.diagnostics.insert("b".into(), m.exponents.b());
    d.diagnostics.insert("realized_series".into(), series.value().powf(1.0 / pb));
    d.diagnostics.insert(
        "geometric_bound".into(),
        (1.0 / (1.0 - 2f64.powf(-nf * a * pb))).powf(1.0 / pb),
    );
    Ok(d)
}
