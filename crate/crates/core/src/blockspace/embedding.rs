//! Empirical embedding constant of the block space into weighted `L^p`.

use super::Decomposition;
use crate::error::Result;
use crate::grid::{sphere_area, unit_ball_volume, weighted_lp_norm};
use crate::regime::{check_embedding, Params};

/// Sup over centred balls of `||b||^p_{L^p(|x|^alpha)}` for blocks at margin
/// one, from Hölder's inequality:
/// `v_n^{-alpha/n - 1 + p/s} (ω_n/(n+β))^{(s-p)/s}` with `β = alpha s/(s-p)`.
pub fn embedding_constant(params: &Params) -> Result<f64> {
    check_embedding(params)?;
    let n = params.n;
    let nf = params.nf();
    let v = unit_ball_volume(n);
    let w = sphere_area(n);
    let a = params.alpha;
    if params.s.is_infinite() {
        return Ok(v.powf(-a / nf - 1.0) * w / (nf + a));
    }
    let (p, s) = (params.p, params.s);
    let beta = a * s / (s - p);
    Ok(v.powf(-a / nf - 1.0 + p / s) * (w / (nf + beta)).powf((s - p) / s))
}

/// `||Σ λ_k b_k||_{L^p(|x|^alpha)} / (Σ |λ_k|^{p̄})^{1/p̄}`, zero for an
/// empty decomposition.
pub fn embedding_ratio(d: &Decomposition) -> Result<f64> {
    check_embedding(&d.params)?;
    let q = d.quasinorm_bound();
    if q == 0.0 {
        return Ok(0.0);
    }
    Ok(weighted_lp_norm(&d.reconstruct(), d.params.p, d.params.alpha)? / q)
}
