//! Gauss–Legendre rules and sphere point sets.

use std::f64::consts::PI;

/// Nodes and weights of the `m`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1, "rule needs at least one node");
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(m: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(m);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (
        x.iter().map(|t| mid + half * t).collect(),
        w.iter().map(|v| v * half).collect(),
    )
}

/// Composite Gauss–Legendre integral of `f` over `[a, b]` with `panels` panels.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (x, w) = gauss_legendre(order);
    let step = (b - a) / panels as f64;
    let mut acc = crate::util::Accumulator::default();
    for k in 0..panels {
        let lo = a + k as f64 * step;
        let mid = lo + 0.5 * step;
        for (xi, wi) in x.iter().zip(&w) {
            acc.add(wi * 0.5 * step * f(mid + 0.5 * step * xi));
        }
    }
    acc.value()
}

/// Fibonacci lattice of `count` nearly uniform points on the unit sphere in R^3.
pub fn fibonacci_sphere(count: usize) -> Vec<[f64; 3]> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            [rho * phi.cos(), rho * phi.sin(), z]
        })
        .collect()
}

/// `count` equally spaced points on the unit circle.
pub fn circle_points(count: usize) -> Vec<[f64; 3]> {
    (0..count)
        .map(|i| {
            let phi = 2.0 * PI * (i as f64 + 0.5) / count as f64;
            [phi.cos(), phi.sin(), 0.0]
        })
        .collect()
}

/// Product rule on S^2: Gauss–Legendre in `z`, trapezoid in the azimuth.
/// Returns points with weights summing to one.
pub fn product_sphere_rule(nz: usize, nphi: usize) -> Vec<([f64; 3], f64)> {
    let (zs, ws) = gauss_legendre(nz);
    let mut out = Vec::with_capacity(nz * nphi);
    for (z, w) in zs.iter().zip(&ws) {
        let rho = (1.0 - z * z).sqrt();
        for k in 0..nphi {
            let phi = 2.0 * PI * k as f64 / nphi as f64;
            out.push(([rho * phi.cos(), rho * phi.sin(), *z], w / (2.0 * nphi as f64)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for m in 1..=12 {
            let (x, w) = gauss_legendre(m);
            for deg in 0..(2 * m) {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "m={m} deg={deg} q={q}");
            }
        }
    }

    #[test]
    fn composite_rule_on_exp() {
        let q = integrate(f64::exp, 0.0, 1.0, 4, 6);
        assert!((q - (1f64.exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn sphere_rules_average_quadratics() {
        let pts = fibonacci_sphere(1024);
        let m: f64 = pts.iter().map(|p| p[2] * p[2]).sum::<f64>() / pts.len() as f64;
        assert!((m - 1.0 / 3.0).abs() < 1e-3);
        let rule = product_sphere_rule(12, 24);
        let s: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((s - 1.0).abs() < 1e-14);
        let m2: f64 = rule.iter().map(|(p, w)| w * p[0] * p[0] * p[1] * p[1]).sum();
        assert!((m2 - 1.0 / 15.0).abs() < 1e-14);
    }
}
