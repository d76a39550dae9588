//! Operators acting on sampled functions: Bochner–Riesz means and their
//! maximal function, the Hardy–Littlewood maximal operator, spherical means
//! with dyadic pieces, the Hilbert transform family and Carleson partial sums.
//!
//! Operator descriptors use the grammar `name(key=value,...)`. Parameter
//! lists are written `a:b:c`, or `lo..hi` for the powers of two between
//! `lo` and `hi`.

mod bochner;
mod carleson;
mod hilbert;
mod maximal;
pub mod radial;
mod size;
mod spherical;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::special::RieszParams;

pub use bochner::{bochner_riesz_apply, bochner_riesz_maximal};
pub use carleson::{carleson_maximal, carleson_partial_sum};
pub use hilbert::{hilbert, hilbert_maximal, hilbert_truncated};
pub use maximal::{dyadic_radii, hl_maximal, hl_maximal_uncentered};
pub use size::{size_condition_check, SizeConditionReport};
pub use spherical::{
    littlewood_paley_window, spherical_dyadic_piece, spherical_maximal, spherical_mean,
    spherical_mean_at, DEFAULT_SPHERE_POINTS,
};

/// How an operator is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Fourier multiplier through the FFT.
    Multiplier,
    /// Convolution with the sampled kernel.
    Kernel,
    /// Quadrature over sphere or circle points with interpolation.
    Geometric,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "multiplier" => Ok(Method::Multiplier),
            "kernel" => Ok(Method::Kernel),
            "geometric" => Ok(Method::Geometric),
            _ => Err(Error::Config(format!("unknown method {s:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Multiplier => "multiplier",
            Method::Kernel => "kernel",
            Method::Geometric => "geometric",
        })
    }
}

/// A fully parameterised operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum OperatorSpec {
    BochnerRiesz { lambda: f64, radius: f64, method: Method },
    BochnerRieszMaximal { lambda: f64, radii: Vec<f64>, method: Method },
    HlMaximal { radii: Vec<f64> },
    SphericalMean { t: f64, method: Method },
    SphericalMaximal { ts: Vec<f64>, method: Method },
    SphericalDyadic { j: u32, ts: Vec<f64> },
    Hilbert,
    HilbertTruncated { eps: f64 },
    HilbertMaximal { eps: Vec<f64> },
    CarlesonPartial { cutoff: f64 },
    CarlesonMaximal { cutoffs: Vec<f64> },
}

/// Radii `2^{-4}, ..., 2^4`.
pub fn default_dyadic_grid() -> Vec<f64> {
    (-4..=4).map(|k| 2f64.powi(k)).collect()
}

impl OperatorSpec {
    pub fn name(&self) -> &'static str {
        match self {
            OperatorSpec::BochnerRiesz { .. } => "bochner_riesz",
            OperatorSpec::BochnerRieszMaximal { .. } => "bochner_riesz_maximal",
            OperatorSpec::HlMaximal { .. } => "hl_maximal",
            OperatorSpec::SphericalMean { .. } => "spherical_mean",
            OperatorSpec::SphericalMaximal { .. } => "spherical_maximal",
            OperatorSpec::SphericalDyadic { .. } => "spherical_dyadic",
            OperatorSpec::Hilbert => "hilbert",
            OperatorSpec::HilbertTruncated { .. } => "hilbert_truncated",
            OperatorSpec::HilbertMaximal { .. } => "hilbert_maximal",
            OperatorSpec::CarlesonPartial { .. } => "carleson_partial",
            OperatorSpec::CarlesonMaximal { .. } => "carleson_maximal",
        }
    }

    /// Linear operators commute with complex scalars; the others are
    /// sublinear and return `|c|` times the value.
    pub fn is_linear(&self) -> bool {
        matches!(
            self,
            OperatorSpec::BochnerRiesz { .. }
                | OperatorSpec::SphericalMean { .. }
                | OperatorSpec::Hilbert
                | OperatorSpec::HilbertTruncated { .. }
                | OperatorSpec::CarlesonPartial { .. }
        )
    }

    pub fn apply(&self, f: &SampledFunction) -> Result<SampledFunction> {
        match self {
            OperatorSpec::BochnerRiesz { lambda, radius, method } => {
                bochner_riesz_apply(f, &RieszParams::new(*lambda, *radius)?, *method)
            }
            OperatorSpec::BochnerRieszMaximal { lambda, radii, method } => {
                bochner_riesz_maximal(f, *lambda, radii, *method)
            }
            OperatorSpec::HlMaximal { radii } => hl_maximal(f, radii),
            OperatorSpec::SphericalMean { t, method } => {
                spherical_mean(f, *t, *method, DEFAULT_SPHERE_POINTS)
            }
            OperatorSpec::SphericalMaximal { ts, method } => spherical_maximal(f, ts, *method),
            OperatorSpec::SphericalDyadic { j, ts } => spherical_dyadic_piece(f, *j, ts),
            OperatorSpec::Hilbert => hilbert(f),
            OperatorSpec::HilbertTruncated { eps } => hilbert_truncated(f, *eps),
            OperatorSpec::HilbertMaximal { eps } => hilbert_maximal(f, eps),
            OperatorSpec::CarlesonPartial { cutoff } => carleson_partial_sum(f, *cutoff),
            OperatorSpec::CarlesonMaximal { cutoffs } => carleson_maximal(f, cutoffs),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[f64]) -> fmt::Result {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    f.write_str(&parts.join(":"))
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name())?;
        match self {
            OperatorSpec::BochnerRiesz { lambda, radius, method } => {
                write!(f, "lambda={lambda},R={radius},method={method}")?
            }
            OperatorSpec::BochnerRieszMaximal { lambda, radii, method } => {
                write!(f, "lambda={lambda},R=")?;
                write_list(f, radii)?;
                write!(f, ",method={method}")?
            }
            OperatorSpec::HlMaximal { radii } => {
                f.write_str("r=")?;
                write_list(f, radii)?
            }
            OperatorSpec::SphericalMean { t, method } => write!(f, "t={t},method={method}")?,
            OperatorSpec::SphericalMaximal { ts, method } => {
                f.write_str("t=")?;
                write_list(f, ts)?;
                write!(f, ",method={method}")?
            }
            OperatorSpec::SphericalDyadic { j, ts } => {
                write!(f, "j={j},t=")?;
                write_list(f, ts)?
            }
            OperatorSpec::Hilbert => {}
            OperatorSpec::HilbertTruncated { eps } => write!(f, "eps={eps}")?,
            OperatorSpec::HilbertMaximal { eps } => {
                f.write_str("eps=")?;
                write_list(f, eps)?
            }
            OperatorSpec::CarlesonPartial { cutoff } => write!(f, "N={cutoff}")?,
            OperatorSpec::CarlesonMaximal { cutoffs } => {
                f.write_str("N=")?;
                write_list(f, cutoffs)?
            }
        }
        f.write_str(")")
    }
}

fn parse_number(key: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("{key} = {v:?} is not a number")))
}

/// Parameter grid `a:b:c`, or `lo..hi` for the powers of two in `[lo, hi]`;
/// entries must be positive and strictly increasing.
pub fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    let out = if let Some((lo, hi)) = v.split_once("..") {
        let lo = parse_number(key, lo)?;
        let hi = parse_number(key, hi)?;
        if !(lo > 0.0 && hi >= lo) {
            return Err(Error::Config(format!("{key} range {v:?} must satisfy 0 < lo <= hi")));
        }
        let mut xs = Vec::new();
        let mut x = lo;
        while x <= hi * (1.0 + 1e-12) {
            xs.push(x);
            x *= 2.0;
        }
        xs
    } else {
        v.split(':').map(|t| parse_number(key, t)).collect::<Result<Vec<_>>>()?
    };
    check_grid(key, &out)?;
    Ok(out)
}

/// Parameter grids must be non-empty, positive, finite and sorted.
fn check_grid(key: &str, xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::Config(format!("{key} grid is empty")));
    }
    if xs.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(Error::Config(format!("{key} grid entries must be positive and finite")));
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!("{key} grid must be strictly increasing")));
    }
    Ok(())
}

impl FromStr for OperatorSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, body) = match text.find('(') {
            Some(i) if text.ends_with(')') => (&text[..i], &text[i + 1..text.len() - 1]),
            None => (text, ""),
            _ => return Err(Error::Config(format!("malformed operator {text:?}"))),
        };
        let mut kv = std::collections::BTreeMap::new();
        for part in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value, got {part:?}")))?;
            if kv.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Config(format!("duplicate key {k:?}")));
            }
        }
        let mut take = |k: &str| kv.remove(k);
        let method = |v: Option<String>, default: Method| -> Result<Method> {
            v.map_or(Ok(default), |s| s.parse())
        };
        let need = |k: &str, v: Option<String>| -> Result<String> {
            v.ok_or_else(|| Error::Config(format!("operator {name} needs {k}")))
        };
        let spec = match name {
            "bochner_riesz" => OperatorSpec::BochnerRiesz {
                lambda: parse_number("lambda", &need("lambda", take("lambda"))?)?,
                radius: parse_number("R", &need("R", take("R"))?)?,
                method: method(take("method"), Method::Multiplier)?,
            },
            "bochner_riesz_maximal" => OperatorSpec::BochnerRieszMaximal {
                lambda: parse_number("lambda", &need("lambda", take("lambda"))?)?,
                radii: parse_list("R", &need("R", take("R"))?)?,
                method: method(take("method"), Method::Multiplier)?,
            },
            "hl_maximal" => OperatorSpec::HlMaximal {
                radii: match take("r") {
                    Some(v) => parse_list("r", &v)?,
                    None => default_dyadic_grid(),
                },
            },
            "spherical_mean" => OperatorSpec::SphericalMean {
                t: parse_number("t", &need("t", take("t"))?)?,
                method: method(take("method"), Method::Multiplier)?,
            },
            "spherical_maximal" => OperatorSpec::SphericalMaximal {
                ts: parse_list("t", &need("t", take("t"))?)?,
                method: method(take("method"), Method::Multiplier)?,
            },
            "spherical_dyadic" => OperatorSpec::SphericalDyadic {
                j: need("j", take("j"))?
                    .parse()
                    .map_err(|_| Error::Config("j must be a non-negative integer".into()))?,
                ts: parse_list("t", &need("t", take("t"))?)?,
            },
            "hilbert" => OperatorSpec::Hilbert,
            "hilbert_truncated" => OperatorSpec::HilbertTruncated {
                eps: parse_number("eps", &need("eps", take("eps"))?)?,
            },
            "hilbert_maximal" => OperatorSpec::HilbertMaximal {
                eps: parse_list("eps", &need("eps", take("eps"))?)?,
            },
            "carleson_partial" => OperatorSpec::CarlesonPartial {
                cutoff: parse_number("N", &need("N", take("N"))?)?,
            },
            "carleson_maximal" => OperatorSpec::CarlesonMaximal {
                cutoffs: parse_list("N", &need("N", take("N"))?)?,
            },
            _ => return Err(Error::Config(format!("unknown operator {name:?}"))),
        };
        if let Some(k) = kv.keys().next() {
            return Err(Error::Config(format!("operator {name} has no parameter {k:?}")));
        }
        Ok(spec)
    }
}
