//! Exponent triples `(p, s, alpha)` and the regimes in which the block-space
//! theorems apply. Every check returns `Error::Hypothesis` naming the first
//! violated inequality together with the offending numbers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponents of a weighted block space on R^n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub p: f64,
    pub s: f64,
    pub alpha: f64,
}

impl Params {
    /// Validates the structural constraints: `n` in 1..=3, `p > 0`,
    /// `s > 0` (possibly infinite), `alpha > -n`, all finite except `s`.
    pub fn new(n: usize, p: f64, s: f64, alpha: f64) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::Domain(format!("dimension n = {n} must be 1, 2 or 3")));
        }
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::Domain(format!("p = {p} must be finite and positive")));
        }
        if !(s > 0.0) || s.is_nan() {
            return Err(Error::Domain(format!("s = {s} must be positive")));
        }
        if !alpha.is_finite() || alpha <= -(n as f64) {
            return Err(Error::Domain(format!(
                "alpha = {alpha} must satisfy alpha > -n = {}",
                -(n as f64)
            )));
        }
        Ok(Self { n, p, s, alpha })
    }

    pub fn nf(&self) -> f64 {
        self.n as f64
    }

    /// `min(p, 1)`, the exponent of the quasinorm witness.
    pub fn pbar(&self) -> f64 {
        self.p.min(1.0)
    }

    /// `1/s`, zero when `s` is infinite.
    pub fn inv_s(&self) -> f64 {
        if self.s.is_infinite() {
            0.0
        } else {
            1.0 / self.s
        }
    }

    /// `p/s`, zero when `s` is infinite.
    pub fn p_over_s(&self) -> f64 {
        self.p * self.inv_s()
    }

    /// Exponent `e` of the block budget `|B|^e`, i.e. `-alpha/(pn) - 1/p + 1/s`.
    pub fn block_exponent(&self) -> f64 {
        -self.alpha / (self.p * self.nf()) - 1.0 / self.p + self.inv_s()
    }

    /// The critical weight `n(p/s - 1)` separating annuli from tail
    /// decompositions.
    pub fn critical_alpha(&self) -> f64 {
        self.nf() * (self.p_over_s() - 1.0)
    }

    /// Upper end `n(p - 1)` of the Calderón–Zygmund range.
    pub fn cz_upper(&self) -> f64 {
        self.nf() * (self.p - 1.0)
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} p={} s={} alpha={}", self.n, self.p, self.s, self.alpha)
    }
}

/// Exponent comparisons with a relative slack, so that a boundary value
/// computed in floating point (say `n(p - 1)` with `p = 0.9`) counts as
/// the boundary itself.
fn slack(b: f64) -> f64 {
    1e-12 * (1.0 + b.abs())
}

fn below(a: f64, b: f64) -> bool {
    a < b - slack(b)
}

fn above(a: f64, b: f64) -> bool {
    a > b + slack(b)
}

fn at_least(a: f64, b: f64) -> bool {
    a >= b - slack(b)
}

/// Collects inequality checks and reports the first failure.
struct Check<'a> {
    context: &'a str,
}

impl<'a> Check<'a> {
    fn new(context: &'a str) -> Self {
        Self { context }
    }

    fn require(&self, ok: bool, what: impl FnOnce() -> String) -> Result<&Self> {
        if ok {
            Ok(self)
        } else {
            Err(Error::Hypothesis(format!("{}: {}", self.context, what())))
        }
    }
}

/// Embedding of the block space into weighted `L^p`:
/// `0 < p < s <= inf`, `-n(1 - p/s) < alpha <= 0`.
pub fn check_embedding(q: &Params) -> Result<()> {
    let c = Check::new("embedding into weighted L^p");
    let lo = -q.nf() * (1.0 - q.p_over_s());
    c.require(q.p < q.s, || format!("need p < s, got p = {} s = {}", q.p, q.s))?
        .require(above(q.alpha, lo), || {
            format!("need alpha > -n(1 - p/s) = {lo}, got alpha = {}", q.alpha)
        })?
        .require(q.alpha <= 0.0, || format!("need alpha <= 0, got alpha = {}", q.alpha))?;
    Ok(())
}

/// Decomposition of finite sums of cube indicators: `0 < p <= 1`, `alpha >= 0`.
pub fn check_simple(q: &Params) -> Result<()> {
    let c = Check::new("simple-function decomposition");
    c.require(q.p <= 1.0, || format!("need p <= 1, got p = {}", q.p))?
        .require(q.alpha >= 0.0, || format!("need alpha >= 0, got alpha = {}", q.alpha))?;
    Ok(())
}

/// Dyadic-annuli decomposition: `alpha < n(p/s - 1)`.
pub fn check_annuli(q: &Params) -> Result<()> {
    let crit = q.critical_alpha();
    Check::new("annuli decomposition").require(below(q.alpha, crit), || {
        format!("need alpha < n(p/s - 1) = {crit}, got alpha = {}", q.alpha)
    })?;
    Ok(())
}

/// Tail-radius decomposition: `alpha = n(p/s - 1)`, `1 <= s < inf`.
pub fn check_tail(q: &Params) -> Result<()> {
    let crit = q.critical_alpha();
    let c = Check::new("tail decomposition");
    c.require(q.s >= 1.0 && q.s.is_finite(), || format!("need 1 <= s < inf, got s = {}", q.s))?
        .require((q.alpha - crit).abs() <= 1e-12 * (1.0 + crit.abs()), || {
            format!("need alpha = n(p/s - 1) = {crit}, got alpha = {}", q.alpha)
        })?;
    Ok(())
}

/// Rapidly decreasing payloads on dyadic shells: `alpha > -n`, `1 <= s < inf`.
pub fn check_schwartz(q: &Params) -> Result<()> {
    Check::new("schwartz decomposition")
        .require(q.s >= 1.0 && q.s.is_finite(), || format!("need 1 <= s < inf, got s = {}", q.s))?;
    Ok(())
}

/// Maximal-function Whitney decomposition: `alpha >= 0`.
pub fn check_maximal_whitney(q: &Params) -> Result<()> {
    Check::new("maximal-function decomposition")
        .require(q.alpha >= 0.0, || format!("need alpha >= 0, got alpha = {}", q.alpha))?;
    Ok(())
}

/// Molecule-to-block and size-condition operators:
/// `1 < s < inf`, `0 < p <= s`, `-n(1 - p/s) <= alpha < n(p - 1)`.
pub fn check_calderon_zygmund(q: &Params) -> Result<()> {
    let c = Check::new("block-to-block boundedness");
    let lo = -q.nf() * (1.0 - q.p_over_s());
    let hi = q.cz_upper();
    c.require(q.s > 1.0 && q.s.is_finite(), || format!("need 1 < s < inf, got s = {}", q.s))?
        .require(q.p <= q.s, || format!("need p <= s, got p = {} s = {}", q.p, q.s))?
        .require(at_least(q.alpha, lo), || {
            format!("need alpha >= -n(1 - p/s) = {lo}, got alpha = {}", q.alpha)
        })?
        .require(below(q.alpha, hi), || format!("need alpha < n(p - 1) = {hi}, got alpha = {}", q.alpha))?;
    Ok(())
}

/// Block-to-`L^p` version: additionally `p < s`, strict lower bound, `alpha <= 0`.
pub fn check_calderon_zygmund_lp(q: &Params) -> Result<()> {
    check_calderon_zygmund(q)?;
    check_embedding(q)
}

/// Critical exponents `(p'_lambda, p_lambda)` of the Bochner–Riesz problem.
/// `p_lambda` is infinite once `lambda >= (n-1)/2`.
pub fn bochner_riesz_critical(n: usize, lambda: f64) -> (f64, f64) {
    let nf = n as f64;
    let lower = 2.0 * nf / (nf + 1.0 + 2.0 * lambda);
    let upper = if lambda >= (nf - 1.0) / 2.0 {
        f64::INFINITY
    } else {
        2.0 * nf / (nf - 1.0 - 2.0 * lambda)
    };
    (lower.max(1.0), upper)
}

/// Block boundedness of Bochner–Riesz means of order `lambda`
/// (all three ranges of `lambda`).
pub fn check_bochner_riesz(q: &Params, lambda: f64) -> Result<()> {
    bochner_riesz_regime(q, lambda, false)
}

/// Convergence `B_R f -> f` in weighted `L^p` as `R -> inf`.
pub fn check_bochner_riesz_convergence(q: &Params, lambda: f64) -> Result<()> {
    bochner_riesz_regime(q, lambda, true)
}

fn bochner_riesz_regime(q: &Params, lambda: f64, convergence: bool) -> Result<()> {
    let nf = q.nf();
    let c = Check::new(if convergence {
        "Bochner-Riesz convergence"
    } else {
        "Bochner-Riesz block boundedness"
    });
    let critical = (nf - 1.0) / 2.0;
    let lo = q.critical_alpha();
    if lambda > critical || (lambda - critical).abs() < 1e-14 {
        c.require(q.s > 1.0 && q.s.is_finite(), || format!("need 1 < s < inf, got s = {}", q.s))?;
        let hi = q.cz_upper();
        strip(&c, q, lo, hi, convergence)?;
    } else {
        let floor = (nf - 1.0) / (2.0 * (nf + 1.0));
        c.require(lambda > floor, || {
            format!("need lambda > (n-1)/(2(n+1)) = {floor}, got lambda = {lambda}")
        })?;
        let (pl_dual, pl) = bochner_riesz_critical(q.n, lambda);
        c.require(above(q.s, pl_dual), || format!("need s > p'_lambda = {pl_dual}, got s = {}", q.s))?
            .require(below(q.s, pl), || format!("need s < p_lambda = {pl}, got s = {}", q.s))?;
        let hi = nf * (q.p / pl_dual - 1.0);
        strip(&c, q, lo, hi, convergence)?;
    }
    Ok(())
}

/// `0 < p <= s`, `lo <= alpha < hi`; the convergence version makes every
/// inequality strict and adds `alpha <= 0`.
fn strip(c: &Check<'_>, q: &Params, lo: f64, hi: f64, convergence: bool) -> Result<()> {
    if convergence {
        c.require(q.p < q.s, || format!("need p < s, got p = {} s = {}", q.p, q.s))?
            .require(above(q.alpha, lo), || format!("need alpha > n(p/s - 1) = {lo}, got alpha = {}", q.alpha))?
            .require(q.alpha <= 0.0, || format!("need alpha <= 0, got alpha = {}", q.alpha))?;
    } else {
        c.require(q.p <= q.s, || format!("need p <= s, got p = {} s = {}", q.p, q.s))?
            .require(at_least(q.alpha, lo), || {
                format!("need alpha >= n(p/s - 1) = {lo}, got alpha = {}", q.alpha)
            })?;
    }
    c.require(below(q.alpha, hi), || format!("need alpha < {hi}, got alpha = {}", q.alpha))?;
    Ok(())
}

/// Spherical maximal function on `(p, 2, alpha)` blocks:
/// `n >= 3`, `0 < p <= 2`, `n(p/2 - 1) <= alpha < (n-1)p - n`.
pub fn check_spherical(q: &Params) -> Result<()> {
    spherical_regime(q, false)
}

/// Convergence `A_t f -> f` in weighted `L^p` as `t -> 0`.
pub fn check_spherical_convergence(q: &Params) -> Result<()> {
    spherical_regime(q, true)
}

fn spherical_regime(q: &Params, convergence: bool) -> Result<()> {
    let nf = q.nf();
    let c = Check::new(if convergence {
        "spherical-mean convergence"
    } else {
        "spherical maximal block bound"
    });
    c.require(q.n >= 3, || format!("need n >= 3, got n = {}", q.n))?
        .require((q.s - 2.0).abs() < 1e-14, || format!("need s = 2, got s = {}", q.s))?;
    let lo = nf * (q.p / 2.0 - 1.0);
    let hi = (nf - 1.0) * q.p - nf;
    if convergence {
        c.require(q.p < 2.0, || format!("need p < 2, got p = {}", q.p))?
            .require(above(q.alpha, lo), || format!("need alpha > n(p/2 - 1) = {lo}, got alpha = {}", q.alpha))?
            .require(q.alpha <= 0.0, || format!("need alpha <= 0, got alpha = {}", q.alpha))?;
    } else {
        c.require(q.p <= 2.0, || format!("need p <= 2, got p = {}", q.p))?
            .require(at_least(q.alpha, lo), || {
                format!("need alpha >= n(p/2 - 1) = {lo}, got alpha = {}", q.alpha)
            })?;
    }
    c.require(below(q.alpha, hi), || format!("need alpha < (n-1)p - n = {hi}, got alpha = {}", q.alpha))?;
    Ok(())
}

/// Truncated singular integrals, Hilbert transform and partial Fourier sums
/// on blocks: same range as [`check_calderon_zygmund`].
pub fn check_singular_integral(q: &Params) -> Result<()> {
    check_calderon_zygmund(q)
}

/// Convergence `S_N f -> f` in weighted `L^p` (one dimension).
pub fn check_carleson_convergence(q: &Params) -> Result<()> {
    let c = Check::new("partial Fourier sum convergence");
    c.require(q.n == 1, || format!("need n = 1, got n = {}", q.n))?
        .require(q.s > 1.0 && q.s.is_finite(), || format!("need 1 < s < inf, got s = {}", q.s))?;
    strip(&c, q, q.critical_alpha(), q.cz_upper(), true)
}
