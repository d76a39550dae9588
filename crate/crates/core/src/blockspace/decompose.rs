//! The five constructive decompositions: simple cube functions, dyadic
//! annuli, Cauchy tails at the critical weight, rapidly decreasing payloads
//! and maximal-function level sets with Whitney cubes.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{dyadic_shells, whitney_cubes, BlockSpec, Decomposition, Payload};
use crate::error::{usage, Error, Result};
use crate::grid::{Grid, Point, SampledFunction, WeightedMeasure};
use crate::quadrature::gauss_legendre_on;
use crate::regime::{
    check_annuli, check_maximal_whitney, check_schwartz, check_simple, check_tail, Params,
};
use crate::util::Accumulator;

fn support(f: &SampledFunction) -> Vec<usize> {
    f.values()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.re != 0.0 || v.im != 0.0)
        .map(|(i, _)| i)
        .collect()
}

fn measure_of_ball(n: usize, r: f64) -> f64 {
    BlockSpec::ball([0.0; 3], r).measure(n)
}

/// One summand `c χ_Q` of a simple function; `Q = [lo, lo + side)` per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpleTerm {
    pub coefficient: f64,
    pub lo: Point,
    pub side: f64,
}

impl SimpleTerm {
    fn overlaps(&self, other: &SimpleTerm, n: usize) -> bool {
        (0..n).all(|a| {
            self.lo[a] < other.lo[a] + other.side && other.lo[a] < self.lo[a] + self.side
        })
    }

    /// Nodes `x` with `lo <= x < lo + side` on every axis.
    fn cells(&self, grid: &Grid) -> Vec<usize> {
        let n = grid.dim();
        let h = grid.spacing();
        let l = grid.extent();
        let mut ranges = [(0usize, 0usize); 3];
        for a in 0..n {
            let first = ((self.lo[a] + l) / h - 1e-9).ceil().max(0.0) as usize;
            let end = ((self.lo[a] + self.side + l) / h - 1e-9).ceil().max(0.0) as usize;
            ranges[a] = (first.min(grid.size()), end.min(grid.size()));
        }
        let mut out = Vec::new();
        let mut m = [0usize; 3];
        collect(grid, &ranges, 0, &mut m, &mut out);
        out
    }

    fn spec(&self) -> BlockSpec {
        let mut c = [0.0; 3];
        for a in 0..3 {
            c[a] = self.lo[a] + 0.5 * self.side;
        }
        BlockSpec::cube(c, 0.5 * self.side)
    }
}

fn collect(grid: &Grid, ranges: &[(usize, usize); 3], axis: usize, m: &mut [usize; 3], out: &mut Vec<usize>) {
    let n = grid.dim();
    if axis == n {
        out.push(grid.linear_index(&m[..n]));
        return;
    }
    for i in ranges[axis].0..ranges[axis].1 {
        m[axis] = i;
        collect(grid, ranges, axis + 1, m, out);
    }
}

fn check_disjoint(terms: &[SimpleTerm], n: usize) -> Result<()> {
    for (i, a) in terms.iter().enumerate() {
        if !(a.side > 0.0) {
            return usage(format!("cube {i} has non-positive side {}", a.side));
        }
        for (j, b) in terms.iter().enumerate().skip(i + 1) {
            if a.overlaps(b, n) {
                return usage(format!("cubes {i} and {j} overlap"));
            }
        }
    }
    Ok(())
}

/// The sampled simple function `Σ c_j χ_{Q_j}`.
pub fn simple_function(grid: &Grid, terms: &[SimpleTerm]) -> Result<SampledFunction> {
    check_disjoint(terms, grid.dim())?;
    let mut f = SampledFunction::zeros(*grid);
    let vals = f.values_mut();
    for t in terms {
        for i in t.cells(grid) {
            vals[i] = Complex64::new(t.coefficient, 0.0);
        }
    }
    Ok(f)
}

/// `m_j = c_j |Q_j|^{1/p + alpha/(np)}`, `b_j = |Q_j|^{-1/p - alpha/(np)} χ_{Q_j}`.
pub fn decompose_simple(grid: &Grid, terms: &[SimpleTerm], params: &Params) -> Result<Decomposition> {
    check_simple(params)?;
    let f = simple_function(grid, terms)?;
    let n = params.n;
    let gamma = params.alpha / (params.p * params.nf()) + 1.0 / params.p;
    let mut d = Decomposition::empty("simple", *params, *grid);
    for t in terms {
        if t.coefficient == 0.0 {
            continue;
        }
        let spec = t.spec();
        let vol = spec.measure(n);
        let m = t.coefficient * vol.powf(gamma);
        let payload = Payload::from_cells(&f, t.cells(grid), 1.0 / m);
        d.push(Complex64::new(m, 0.0), spec, payload)?;
    }
    Ok(d)
}

/// `∫_{[-1/2,1/2]^n} |x|^alpha dx`, the ratio `mu_alpha(Q) / |Q|^{1+alpha/n}`
/// for a cube centred at the origin.
pub fn centered_cube_constant(n: usize, alpha: f64) -> f64 {
    cube_weight(n, alpha, &[-0.5; 3], 1.0)
}

/// `∫_Q |x|^alpha dx` by tensor Gauss rules on panels graded towards the
/// coordinate hyperplanes, for `alpha >= 0`.
fn cube_weight(n: usize, alpha: f64, lo: &Point, side: f64) -> f64 {
    let rules: Vec<(Vec<f64>, Vec<f64>)> = (0..n)
        .map(|a| {
            let (a0, a1) = (lo[a], lo[a] + side);
            let mut xs = Vec::new();
            let mut ws = Vec::new();
            let mut push = |l: f64, r: f64| {
                let (x, w) = gauss_legendre_on(10, l, r);
                xs.extend(x);
                ws.extend(w);
            };
            // split at 0 and grade geometrically towards it
            let mut pieces = vec![];
            if a0 < 0.0 && a1 > 0.0 {
                pieces.push((a0, 0.0));
                pieces.push((0.0, a1));
            } else {
                pieces.push((a0, a1));
            }
            for (l, r) in pieces {
                let near = if l.abs() < r.abs() { l } else { r };
                let far = if near == l { r } else { l };
                if near != 0.0 {
                    push(l.min(r), l.max(r));
                    continue;
                }
                let mut edge = far;
                // deeper grading is affordable in low dimension
                let levels = [40, 24, 14][n - 1];
                for _ in 0..levels {
                    let mid = 0.5 * edge;
                    push(mid.min(edge), mid.max(edge));
                    edge = mid;
                }
                push(edge.min(0.0), edge.max(0.0));
            }
            (xs, ws)
        })
        .collect();
    let mut acc = Accumulator::default();
    let mut idx = vec![0usize; n];
    loop {
        let mut r2 = 0.0;
        let mut w = 1.0;
        for a in 0..n {
            r2 += rules[a].0[idx[a]].powi(2);
            w *= rules[a].1[idx[a]];
        }
        acc.add(w * r2.sqrt().powf(alpha));
        let mut a = 0;
        loop {
            if a == n {
                return acc.value();
            }
            idx[a] += 1;
            if idx[a] < rules[a].0.len() {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
    }
}

/// Both sides of the simple-function comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpleCheck {
    /// `Σ |m_j|^p`.
    pub coefficients: f64,
    /// `||f||^p` in weighted `L^p`, cube by cube.
    pub weighted_norm: f64,
    /// `∫_{[-1/2,1/2]^n} |x|^alpha`; a centred cube attains
    /// `mu_alpha(Q) = c |Q|^{1+alpha/n}`.
    pub centered_constant: f64,
}

impl SimpleCheck {
    /// `c Σ|m_j|^p <= ||f||^p`, the form that holds for every cube family.
    pub fn holds(&self, rel_tol: f64) -> bool {
        self.centered_constant * self.coefficients <= self.weighted_norm * (1.0 + rel_tol)
    }
}

/// Compares `Σ|m_j|^p` with `Σ |c_j|^p mu_alpha(Q_j)`, each cube integral by
/// graded Gauss quadrature.
pub fn simple_norm_check(terms: &[SimpleTerm], params: &Params) -> Result<SimpleCheck> {
    check_simple(params)?;
    check_disjoint(terms, params.n)?;
    let n = params.n;
    let p = params.p;
    let mut lhs = Accumulator::default();
    let mut rhs = Accumulator::default();
    for t in terms {
        let vol = t.side.powi(n as i32);
        lhs.add(t.coefficient.abs().powf(p) * vol.powf(1.0 + params.alpha / params.nf()));
        rhs.add(t.coefficient.abs().powf(p) * cube_weight(n, params.alpha, &t.lo, t.side));
    }
    Ok(SimpleCheck {
        coefficients: lhs.value(),
        weighted_norm: rhs.value(),
        centered_constant: centered_cube_constant(n, params.alpha),
    })
}

/// Dyadic annuli about the origin: `B_k = B(0, 2^k)`, the innermost ball
/// `B_1` holding everything within radius 2.
pub fn decompose_annuli(f: &SampledFunction, params: &Params) -> Result<Decomposition> {
    check_annuli(params)?;
    let grid = *f.grid();
    let mut d = Decomposition::empty("annuli", *params, grid);
    let norm = f.lp_norm(params.s)?;
    if norm == 0.0 {
        return Ok(d);
    }
    let n = params.n;
    let gamma = -params.block_exponent();
    let shells = dyadic_shells(&grid, &[0.0; 3], &support(f), 1);
    for (&k, cells) in &shells {
        let radius = 2f64.powi(k);
        let lambda = measure_of_ball(n, radius).powf(gamma) * norm;
        let payload = Payload::from_cells(f, cells.iter().copied(), 1.0 / lambda);
        d.push(Complex64::new(lambda, 0.0), BlockSpec::ball([0.0; 3], radius), payload)?;
    }
    let k_max = *shells.keys().last().unwrap_or(&1);
    let pb = params.pbar();
    let series: f64 = (1..=k_max).map(|k| 2f64.powf(params.nf() * k as f64 * gamma * pb)).sum();
    d.diagnostics.insert("norm_s".into(), norm);
    d.diagnostics.insert("k_max".into(), k_max as f64);
    d.diagnostics.insert("series_constant".into(), series.powf(1.0 / pb));
    Ok(d)
}

/// Critical weight: radii `2^{n_k}` with tail norms below `2^{-k} ||f||_s`,
/// coefficients `2^{-k} ||f||_s`.
pub fn decompose_tail(f: &SampledFunction, params: &Params) -> Result<Decomposition> {
    check_tail(params)?;
    let grid = *f.grid();
    let mut d = Decomposition::empty("tail", *params, grid);
    let norm = f.lp_norm(params.s)?;
    if norm == 0.0 {
        return Ok(d);
    }
    let n = grid.dim();
    let size = grid.size();
    let supp = support(f);
    if let Some(&i) = supp
        .iter()
        .find(|&&i| grid.multi_index(i)[..n].iter().any(|&c| c == 0 || c == size - 1))
    {
        return Err(Error::Usage(format!(
            "payload does not decay inside the box: nonzero at the boundary node {:?}",
            &grid.node(i)[..n]
        )));
    }
    let s = params.s;
    // s-th power mass of each dyadic shell, j = radius exponent
    let shells = dyadic_shells(&grid, &[0.0; 3], &supp, 0);
    let j_max = *shells.keys().last().unwrap();
    let mass: BTreeMap<i32, f64> = shells
        .iter()
        .map(|(&j, cells)| {
            let mut acc = Accumulator::default();
            for &i in cells {
                acc.add(f.values()[i].norm().powf(s));
            }
            (j, acc.value() * grid.cell_volume())
        })
        .collect();
    let total: f64 = mass.values().sum();
    // tail(j) = ||f χ_{|x| > 2^j}||_s
    let tail = |j: i32| -> f64 {
        let mut acc = Accumulator::default();
        for (_, m) in mass.range(j + 1..) {
            acc.add(*m);
        }
        acc.value().max(0.0).powf(1.0 / s)
    };
    let norm_s = total.powf(1.0 / s);
    let mut radii = Vec::new();
    let mut j = 0;
    let mut k = 1;
    loop {
        while tail(j) >= 2f64.powi(-k) * norm_s {
            j += 1;
        }
        radii.push(j);
        if j >= j_max {
            break;
        }
        k += 1;
    }
    let cells_between = |lo: Option<i32>, hi: i32| -> Vec<usize> {
        shells
            .range(..=hi)
            .filter(|(&key, _)| lo.is_none_or(|l| key > l))
            .flat_map(|(_, c)| c.iter().copied())
            .collect()
    };
    for (idx, &r) in radii.iter().enumerate() {
        let lo = if idx == 0 { None } else { Some(radii[idx - 1]) };
        let coeff = 2f64.powi(-(idx as i32)) * norm;
        let cells = cells_between(lo, r);
        if cells.is_empty() {
            continue;
        }
        let payload = Payload::from_cells(f, cells, 1.0 / coeff);
        d.push(Complex64::new(coeff, 0.0), BlockSpec::ball([0.0; 3], 2f64.powi(r)), payload)?;
    }
    d.diagnostics.insert("norm_s".into(), norm);
    d.diagnostics.insert("radius_count".into(), radii.len() as f64);
    Ok(d)
}

/// Decay order `N = max(floor(g) + 2, floor(n g / 2) + 1)` with
/// `g = alpha/(pn) + 1/p`; the second term makes `Σ λ_k` converge in every
/// dimension and is inactive for `n <= 2`.
pub fn schwartz_decay_order(params: &Params) -> i32 {
    let g = params.alpha / (params.p * params.nf()) + 1.0 / params.p;
    ((g.floor() as i32) + 2).max((params.nf() * g / 2.0).floor() as i32 + 1)
}

/// Shell decomposition for `|f(x)| <= C_N (1 + |x|^2)^{-N}`. With no
/// certificate the smallest valid `C_N` is used; a supplied one is checked at
/// every node.
pub fn decompose_schwartz(
    f: &SampledFunction,
    params: &Params,
    certificate: Option<f64>,
) -> Result<Decomposition> {
    check_schwartz(params)?;
    let grid = *f.grid();
    let n = params.n;
    let order = schwartz_decay_order(params);
    let decay = |x: &Point| (1.0 + (0..n).map(|a| x[a] * x[a]).sum::<f64>()).powi(order);
    let mut smallest: f64 = 0.0;
    for (i, v) in f.values().iter().enumerate() {
        smallest = smallest.max(v.norm() * decay(&grid.node(i)));
    }
    let c_n = match certificate {
        None => smallest,
        Some(c) => {
            if let Some(i) = (0..grid.len())
                .find(|&i| f.values()[i].norm() * decay(&grid.node(i)) > c * (1.0 + 1e-12))
            {
                let x = grid.node(i);
                return Err(Error::Certificate(format!(
                    "|f| = {:e} exceeds C_N (1+|x|^2)^-{order} = {:e} at node {:?}",
                    f.values()[i].norm(),
                    c / decay(&x),
                    &x[..n]
                )));
            }
            c
        }
    };
    let mut d = Decomposition::empty("schwartz", *params, grid);
    if smallest == 0.0 {
        return Ok(d);
    }
    let g = params.alpha / (params.p * params.nf()) + 1.0 / params.p;
    let cell = grid.cell_volume();
    let shells = dyadic_shells(&grid, &[0.0; 3], &support(f), 1);
    let mut lattice_max: f64 = 1.0;
    for (&k, cells) in &shells {
        let radius = 2f64.powi(k);
        let vol = measure_of_ball(n, radius);
        let shell_decay = if k == 1 { 1.0 } else { (1.0 + 4f64.powi(k - 1)).powi(-order) };
        // sampled shell measure may exceed |B_k| on coarse lattices
        let lattice = ((cells.len() as f64 * cell) / vol).powf(params.inv_s()).max(1.0);
        lattice_max = lattice_max.max(lattice);
        let lambda = c_n * vol.powf(g) * shell_decay * lattice;
        let payload = Payload::from_cells(f, cells.iter().copied(), 1.0 / lambda);
        d.push(Complex64::new(lambda, 0.0), BlockSpec::ball([0.0; 3], radius), payload)?;
    }
    d.diagnostics.insert("decay_order".into(), order as f64);
    d.diagnostics.insert("certificate".into(), c_n);
    d.diagnostics.insert("lattice_correction".into(), lattice_max);
    Ok(d)
}

/// Level sets `E_k = {Mf > 2^k}`, Whitney cubes of each, payloads
/// `f χ_{Q \ E_{k+1}} / λ` with `λ = C 2^k mu_alpha(Q)^{1/p}` and `C` the
/// smallest constant making every margin at most 1.
pub fn decompose_maximal_whitney(f: &SampledFunction, params: &Params) -> Result<Decomposition> {
    check_maximal_whitney(params)?;
    let grid = *f.grid();
    let mut d = Decomposition::empty("maximal_whitney", *params, grid);
    let supp = support(f);
    if supp.is_empty() {
        return Ok(d);
    }
    let n = grid.dim();
    let size = grid.size();
    let h = grid.spacing();
    // keep every level set clear of the box boundary
    let gap = supp
        .iter()
        .map(|&i| {
            let m = grid.multi_index(i);
            (0..n).map(|a| m[a].min(size - 1 - m[a])).min().unwrap()
        })
        .min()
        .unwrap();
    if gap < 2 {
        return usage("payload reaches the box boundary; level sets of Mf would touch it");
    }
    let r_max = ((gap - 1) as f64 * h).min(0.5 * grid.extent());
    let radii = crate::operators::dyadic_radii(h, r_max);
    let mf = crate::operators::hl_maximal(f, &radii)?;
    let mf: Vec<f64> = mf.values().iter().map(|v| v.re).collect();
    let lo = supp.iter().map(|&i| mf[i]).fold(f64::INFINITY, f64::min);
    let hi = mf.iter().cloned().fold(0.0, f64::max);
    let k_lo = lo.log2().ceil() as i32 - 1;
    let k_hi = hi.log2().ceil() as i32 - 1;
    let weights = WeightedMeasure::new(grid, params.alpha)?;
    struct Raw {
        lambda0: f64,
        margin0: f64,
        spec: BlockSpec,
        payload: Payload,
    }
    let mut raw = Vec::new();
    let mut chain = Accumulator::default();
    for k in k_lo..=k_hi {
        let level = 2f64.powi(k);
        let next = 2f64.powi(k + 1);
        let mask: Vec<bool> = mf.iter().map(|&m| m > level).collect();
        for q in whitney_cubes(&grid, &mask)? {
            let cells = q.cells(&grid);
            let mu = weights.measure_of(cells.iter().copied());
            chain.add(level.powf(params.p) * mu);
            let keep: Vec<usize> = cells.into_iter().filter(|&i| mf[i] <= next).collect();
            let payload = Payload::from_cells(f, keep, 1.0);
            if payload.is_empty() {
                continue;
            }
            let spec = q.spec(&grid);
            let lambda0 = level * mu.powf(1.0 / params.p);
            let margin0 = super::payload_margin(&payload, &spec, params)? / lambda0;
            raw.push(Raw { lambda0, margin0, spec, payload });
        }
    }
    let c = raw.iter().fold(0.0f64, |m, r| m.max(r.margin0));
    let mut sum_p = Accumulator::default();
    for r in raw {
        let lambda = c * r.lambda0;
        sum_p.add(lambda.powf(params.p));
        d.push(Complex64::new(lambda, 0.0), r.spec, r.payload.scaled(1.0 / lambda))?;
    }
    let mf_norm = weights.norm_of_abs(mf.iter().copied(), params.p);
    d.diagnostics.insert("constant_C".into(), c);
    d.diagnostics.insert("sum_lambda_p".into(), sum_p.value());
    d.diagnostics.insert("level_sum".into(), chain.value());
    d.diagnostics.insert("maximal_norm".into(), mf_norm);
    d.diagnostics.insert(
        "chain_bound".into(),
        c.powf(params.p) / (1.0 - 2f64.powf(-params.p)) * mf_norm.powf(params.p),
    );
    d.diagnostics.insert("levels".into(), (k_hi - k_lo + 1) as f64);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{sample, FunctionSpec};

    #[test]
    fn simple_unit_cube() {
        let g = Grid::new(1, 4.0, 64).unwrap();
        let q = Params::new(1, 1.0, 2.0, 0.0).unwrap();
        let t = [SimpleTerm { coefficient: 1.0, lo: [-0.5; 3], side: 1.0 }];
        let d = decompose_simple(&g, &t, &q).unwrap();
        assert_eq!(d.len(), 1);
        assert!((d.terms[0].coefficient.re - 1.0).abs() < 1e-15);
        assert!((d.terms[0].margin - 1.0).abs() < 1e-12);
    }

    #[test]
    fn simple_half_power() {
        let g = Grid::new(1, 4.0, 64).unwrap();
        let q = Params::new(1, 0.5, 2.0, 0.0).unwrap();
        let t = [SimpleTerm { coefficient: 1.0, lo: [-1.0; 3], side: 2.0 }];
        let d = decompose_simple(&g, &t, &q).unwrap();
        assert!((d.terms[0].coefficient.re - 4.0).abs() < 1e-14);
    }

    #[test]
    fn simple_rejects_overlap_and_regime() {
        let g = Grid::new(1, 4.0, 64).unwrap();
        let q = Params::new(1, 1.0, 2.0, 0.0).unwrap();
        let t = [
            SimpleTerm { coefficient: 1.0, lo: [0.0; 3], side: 1.0 },
            SimpleTerm { coefficient: 1.0, lo: [0.5; 3], side: 1.0 },
        ];
        assert!(matches!(decompose_simple(&g, &t, &q), Err(Error::Usage(_))));
        let bad = Params::new(1, 2.0, 4.0, 0.0).unwrap();
        assert!(matches!(decompose_simple(&g, &t[..1], &bad), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn centered_constant_closed_form() {
        for &a in &[0.0, 0.5, 1.0, 2.0] {
            let exact = 2f64.powf(-a) / (a + 1.0);
            assert!((centered_cube_constant(1, a) - exact).abs() < 1e-12, "alpha={a}");
        }
        // n = 2, alpha = 2: ∫∫ x^2 + y^2 = 2/12
        assert!((centered_cube_constant(2, 2.0) - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn annuli_partition() {
        let g = Grid::new(1, 16.0, 256).unwrap();
        let q = Params::new(1, 1.0, 2.0, -0.75).unwrap();
        let f = sample(&g, &FunctionSpec::gaussian(0.1)).unwrap();
        let d = decompose_annuli(&f, &q).unwrap();
        let err = d.reconstruct().sub(&f).unwrap().lp_norm(2.0).unwrap();
        assert!(err <= 1e-12 * f.lp_norm(2.0).unwrap());
        assert!(d.max_margin() <= 1.0 + 1e-12);
        assert!(d.quasinorm_bound() <= d.diagnostics["series_constant"] * d.diagnostics["norm_s"]);
    }

    #[test]
    fn tail_single_term_inside_unit_ball() {
        let g = Grid::new(1, 8.0, 128).unwrap();
        let q = Params::new(1, 2.0, 2.0, 0.0).unwrap();
        let f = sample(&g, &FunctionSpec::ball(0.9)).unwrap();
        let d = decompose_tail(&f, &q).unwrap();
        assert_eq!(d.len(), 1);
        let norm = f.lp_norm(2.0).unwrap();
        assert!((d.terms[0].coefficient.re - norm).abs() < 1e-14);
    }

    #[test]
    fn tail_rejects_boundary_mass() {
        let g = Grid::new(1, 2.0, 32).unwrap();
        let q = Params::new(1, 2.0, 2.0, 0.0).unwrap();
        let f = sample(&g, &FunctionSpec::Constant { value: 1.0 }).unwrap();
        assert!(decompose_tail(&f, &q).is_err());
    }

    #[test]
    fn schwartz_certificate_violation_names_node() {
        let g = Grid::new(1, 8.0, 64).unwrap();
        let q = Params::new(1, 1.0, 2.0, 0.0).unwrap();
        let f = sample(&g, &FunctionSpec::gaussian(1.0)).unwrap();
        let err = decompose_schwartz(&f, &q, Some(0.5)).unwrap_err();
        assert!(matches!(err, Error::Certificate(ref m) if m.contains("node")));
        let d = decompose_schwartz(&f, &q, Some(4.0)).unwrap();
        assert!(d.max_margin() <= 1.0);
    }

    #[test]
    fn maximal_whitney_partition() {
        let g = Grid::new(1, 8.0, 256).unwrap();
        let q = Params::new(1, 1.0, 2.0, 0.0).unwrap();
        let f = sample(&g, &FunctionSpec::mollified(1.0, 0.5)).unwrap();
        let d = decompose_maximal_whitney(&f, &q).unwrap();
        let err = d.reconstruct().sub(&f).unwrap().max_abs();
        assert!(err <= 1e-12);
        assert!(d.max_margin() <= 1.0 + 1e-12);
        assert!(d.diagnostics["sum_lambda_p"] <= d.diagnostics["chain_bound"] * (1.0 + 1e-12));
    }
}
