use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::grid::{SampledFunction, WeightedMeasure};
use crate::operators::{bochner_riesz_apply, carleson_partial_sum, spherical_mean, Method};
use crate::regime::{
    check_bochner_riesz_convergence, check_carleson_convergence, check_spherical_convergence, Params,
};
use crate::special::RieszParams;

/// One-parameter operator family `T_param` with `T_param f -> f` at the limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvergenceFamily {
    /// `B_R^lambda`, `R -> inf`.
    BochnerRiesz { lambda: f64, method: Method },
    /// `A_t`, `t -> 0`.
    Spherical { method: Method, points: usize },
    /// `S_N`, `N -> inf`.
    Carleson,
}

impl ConvergenceFamily {
    /// Regime check of the convergence theorem for this family.
    pub fn check(&self, q: &Params) -> Result<()> {
        match self {
            ConvergenceFamily::BochnerRiesz { lambda, .. } => check_bochner_riesz_convergence(q, *lambda),
            ConvergenceFamily::Spherical { .. } => check_spherical_convergence(q),
            ConvergenceFamily::Carleson => check_carleson_convergence(q),
        }
    }

    pub fn apply(&self, f: &SampledFunction, param: f64) -> Result<SampledFunction> {
        match self {
            ConvergenceFamily::BochnerRiesz { lambda, method } => {
                bochner_riesz_apply(f, &RieszParams::new(*lambda, param)?, *method)
            }
            ConvergenceFamily::Spherical { method, points } => spherical_mean(f, param, *method, *points),
            ConvergenceFamily::Carleson => carleson_partial_sum(f, param),
        }
    }

    /// Whether the limit is approached by increasing the parameter.
    pub fn ascending(&self) -> bool {
        !matches!(self, ConvergenceFamily::Spherical { .. })
    }
}

impl fmt::Display for ConvergenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvergenceFamily::BochnerRiesz { lambda, method } => {
                write!(f, "bochner_riesz(lambda={lambda},method={method})")
            }
            ConvergenceFamily::Spherical { method, points } => write!(f, "spherical(method={method},points={points})"),
            ConvergenceFamily::Carleson => write!(f, "carleson()"),
        }
    }
}

impl FromStr for ConvergenceFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, body) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            Some(_) => return Err(Error::Config(format!("unbalanced parentheses in family '{s}'"))),
            None => (s, ""),
        };
        let mut lambda = None;
        let mut method = None;
        let mut points = None;
        for kv in body.split(',').map(str::trim).filter(|kv| !kv.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value, got '{kv}'")))?;
            let num = || v.parse::<f64>().map_err(|_| Error::Config(format!("bad number '{v}' for {k}")));
            match k.trim() {
                "lambda" => lambda = Some(num()?),
                "method" => method = Some(v.parse::<Method>()?),
                "points" => {
                    points = Some(v.parse::<usize>().map_err(|_| Error::Config(format!("bad point count '{v}'")))?)
                }
                other => return Err(Error::Config(format!("unknown key '{other}' in family '{s}'"))),
            }
        }
        match name {
            "bochner_riesz" => Ok(ConvergenceFamily::BochnerRiesz {
                lambda: lambda.ok_or_else(|| Error::Config("bochner_riesz family needs lambda".into()))?,
                method: method.unwrap_or(Method::Multiplier),
            }),
            "spherical" => Ok(ConvergenceFamily::Spherical {
                method: method.unwrap_or(Method::Multiplier),
                points: points.unwrap_or(crate::operators::DEFAULT_SPHERE_POINTS),
            }),
            "carleson" => Ok(ConvergenceFamily::Carleson),
            other => Err(Error::Config(format!("unknown convergence family '{other}'"))),
        }
    }
}

/// Outcome of the eventually-decreasing test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorCurve {
    pub family: String,
    pub params: Params,
    pub payload: String,
    pub seed: u64,
    /// Parameter values, ordered toward the limit.
    pub values: Vec<f64>,
    /// `‖T_param f - f‖_{L^p(|x|^alpha)}` per value.
    pub errors: Vec<f64>,
    /// `‖f‖_{L^p(|x|^alpha)}`, the scale of the noise floor.
    pub reference_norm: f64,
}

/// Errors below this multiple of `‖f‖` are treated as converged.
const NOISE_FLOOR: f64 = 1e-12;

impl ErrorCurve {
    /// PASS iff each of the last three errors is at most 1.05 times its
    /// predecessor and the final error is at most 0.2 times the first.
    pub fn verdict(&self) -> Verdict {
        let floor = NOISE_FLOOR * self.reference_norm;
        let e: Vec<f64> = self.errors.iter().map(|v| v.max(floor)).collect();
        if e.len() < 2 {
            return Verdict { pass: false, reason: "curve needs at least two points".into() };
        }
        let start = e.len().saturating_sub(3).max(1);
        for i in start..e.len() {
            if e[i] > 1.05 * e[i - 1] {
                return Verdict {
                    pass: false,
                    reason: format!("error rises at {}: {:.6e} > 1.05 x {:.6e}", self.values[i], e[i], e[i - 1]),
                };
            }
        }
        let last = e[e.len() - 1];
        if last > 0.2 * e[0] && last > floor {
            return Verdict {
                pass: false,
                reason: format!("final/initial error {:.4} exceeds 0.2", last / e[0]),
            };
        }
        Verdict { pass: true, reason: format!("final/initial error {:.4e}", self.final_ratio()) }
    }

    /// `errors.last / errors.first`.
    pub fn final_ratio(&self) -> f64 {
        match (self.errors.first(), self.errors.last()) {
            (Some(&a), Some(&b)) if a > 0.0 => b / a,
            _ => 0.0,
        }
    }
}

/// Regime-checked convergence run; refuses outside the theorem's hypothesis.
pub fn convergence_experiment(
    family: &ConvergenceFamily,
    f: &SampledFunction,
    params: &Params,
    index_grid: &[f64],
    payload: &str,
    seed: u64,
) -> Result<ErrorCurve> {
    family.check(params)?;
    convergence_curve(family, f, params, index_grid, payload, seed)
}

/// The same curve without the regime gate, for exploring outside it.
pub fn convergence_curve(
    family: &ConvergenceFamily,
    f: &SampledFunction,
    params: &Params,
    index_grid: &[f64],
    payload: &str,
    seed: u64,
) -> Result<ErrorCurve> {
    if params.n != f.grid().dim() {
        return usage(format!("params are for n = {} but the payload lives in n = {}", params.n, f.grid().dim()));
    }
    if index_grid.is_empty() {
        return usage("convergence experiment needs a non-empty parameter grid");
    }
    let ordered = index_grid.windows(2).all(|w| if family.ascending() { w[1] > w[0] } else { w[1] < w[0] });
    if !ordered {
        let dir = if family.ascending() { "increasing" } else { "decreasing" };
        return usage(format!("parameter grid for {family} must be strictly {dir}"));
    }
    let measure = WeightedMeasure::new(*f.grid(), params.alpha)?;
    let reference_norm = measure.norm(f, params.p)?;
    let mut errors = Vec::with_capacity(index_grid.len());
    for &v in index_grid {
        let tf = family.apply(f, v)?;
        let e = measure.norm(&tf.sub(f)?, params.p)?;
        if !e.is_finite() {
            return Err(Error::Precision(format!("non-finite error at parameter {v}")));
        }
        errors.push(e);
    }
    Ok(ErrorCurve {
        family: family.to_string(),
        params: *params,
        payload: payload.to_string(),
        seed,
        values: index_grid.to_vec(),
        errors,
        reference_norm,
    })
}
