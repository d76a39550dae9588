//! Catalogue of analytic test functions and their textual descriptors.
//!
//! Descriptor grammar: `name(key=value,...)`, vectors written with `:`
//! separators, e.g. `mollified(r=1,w=0.25,c=0.5:0)` or
//! `poly(t=1@1:1;-0.5@2:0)` (coefficient `@` exponents, terms split by `;`).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Grid, Point, SampledFunction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FunctionSpec {
    Zero,
    Constant { value: f64 },
    /// Indicator of the closed ball `|x - c| <= r`.
    Ball { radius: f64, center: Point },
    /// Indicator of the closed cube `|x - c|_inf <= half`.
    Cube { half: f64, center: Point },
    /// `exp(-a |x - c|^2)`.
    Gaussian { a: f64, center: Point },
    /// Smooth step equal to 1 on `B(c, r)` and 0 outside `B(c, r + w)`.
    Mollified { radius: f64, width: f64, center: Point },
    /// `Σ coef x^e` with per-axis exponents.
    Polynomial { terms: Vec<(f64, [u32; 3])> },
    /// Piecewise-linear radial profile about the origin, zero past the last radius.
    Radial { radii: Vec<f64>, values: Vec<f64> },
    /// `|x - c|^gamma` on `B(c, r)`; the centre node gets the cell average.
    Power { gamma: f64, radius: f64, center: Point },
    /// The harmonic polynomial `x_0 x_1`.
    Harmonic,
}

/// `C^inf` transition: 0 for `t <= 0`, 1 for `t >= 1`.
pub fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / t).exp();
        let b = (-1.0 / (1.0 - t)).exp();
        a / (a + b)
    }
}

fn dist(x: &Point, c: &Point) -> f64 {
    let d = [x[0] - c[0], x[1] - c[1], x[2] - c[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

/// Relative slack used for closed-set membership of nodes.
const EDGE: f64 = 1e-12;

impl FunctionSpec {
    pub fn ball(radius: f64) -> Self {
        FunctionSpec::Ball { radius, center: [0.0; 3] }
    }

    pub fn mollified(radius: f64, width: f64) -> Self {
        FunctionSpec::Mollified { radius, width, center: [0.0; 3] }
    }

    pub fn gaussian(a: f64) -> Self {
        FunctionSpec::Gaussian { a, center: [0.0; 3] }
    }

    pub fn eval(&self, x: &Point) -> f64 {
        match self {
            FunctionSpec::Zero => 0.0,
            FunctionSpec::Constant { value } => *value,
            FunctionSpec::Ball { radius, center } => {
                if dist(x, center) <= radius * (1.0 + EDGE) {
                    1.0
                } else {
                    0.0
                }
            }
            FunctionSpec::Cube { half, center } => {
                let d = (0..3).fold(0.0f64, |m, i| m.max((x[i] - center[i]).abs()));
                if d <= half * (1.0 + EDGE) {
                    1.0
                } else {
                    0.0
                }
            }
            FunctionSpec::Gaussian { a, center } => {
                let d = dist(x, center);
                (-a * d * d).exp()
            }
            FunctionSpec::Mollified { radius, width, center } => {
                smooth_step((radius + width - dist(x, center)) / width)
            }
            FunctionSpec::Polynomial { terms } => terms
                .iter()
                .map(|(c, e)| c * x[0].powi(e[0] as i32) * x[1].powi(e[1] as i32) * x[2].powi(e[2] as i32))
                .sum(),
            FunctionSpec::Radial { radii, values } => {
                let r = dist(x, &[0.0; 3]);
                radial_profile(radii, values, r)
            }
            FunctionSpec::Power { gamma, radius, center } => {
                let d = dist(x, center);
                if d <= radius * (1.0 + EDGE) && d > 0.0 {
                    d.powf(*gamma)
                } else {
                    0.0
                }
            }
            FunctionSpec::Harmonic => x[0] * x[1],
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        match self {
            FunctionSpec::Ball { radius, .. } if *radius <= 0.0 => bad(format!("ball radius {radius} must be positive")),
            FunctionSpec::Cube { half, .. } if *half <= 0.0 => bad(format!("cube half-side {half} must be positive")),
            FunctionSpec::Gaussian { a, .. } if *a <= 0.0 => bad(format!("gaussian rate {a} must be positive")),
            FunctionSpec::Mollified { radius, width, .. } if *radius < 0.0 || *width <= 0.0 => {
                bad("mollified block needs r >= 0 and w > 0".into())
            }
            FunctionSpec::Radial { radii, values } if radii.len() != values.len() || radii.is_empty() => {
                bad("radial table needs matching, non-empty r and v lists".into())
            }
            FunctionSpec::Radial { radii, .. } if radii.windows(2).any(|w| w[1] <= w[0]) => {
                bad("radial table radii must increase".into())
            }
            FunctionSpec::Power { gamma, radius, .. } if *radius <= 0.0 || *gamma <= -(n as f64) => {
                bad("power payload needs r > 0 and gamma > -n".into())
            }
            FunctionSpec::Harmonic if n < 2 => bad("harmonic polynomial x0*x1 needs n >= 2".into()),
            _ => Ok(()),
        }
    }
}

fn radial_profile(radii: &[f64], values: &[f64], r: f64) -> f64 {
    if r <= radii[0] {
        return values[0];
    }
    for k in 1..radii.len() {
        if r <= radii[k] {
            let t = (r - radii[k - 1]) / (radii[k] - radii[k - 1]);
            return values[k - 1] * (1.0 - t) + values[k] * t;
        }
    }
    0.0
}

/// Samples a descriptor on a grid.
pub fn sample(grid: &Grid, spec: &FunctionSpec) -> Result<SampledFunction> {
    spec.validate(grid.dim())?;
    let mut f = SampledFunction::from_real_fn(*grid, |x| spec.eval(x));
    if let FunctionSpec::Power { gamma, center, .. } = spec {
        // the singular centre node carries the average of |x|^gamma over its cell
        let idx = (0..grid.len()).find(|&i| dist(&grid.node(i), center) < 1e-12 * grid.spacing());
        if let Some(i) = idx {
            let m = super::WeightedMeasure::new(*grid, *gamma)?;
            let w = m.weights()[grid.origin_index()];
            f.values_mut()[i] = Complex64::new(w / grid.cell_volume(), 0.0);
        }
    }
    Ok(f)
}

fn fmt_point(c: &Point) -> String {
    c.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(":")
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Zero => write!(f, "zero()"),
            FunctionSpec::Constant { value } => write!(f, "constant(v={value})"),
            FunctionSpec::Ball { radius, center } => write!(f, "ball(r={radius},c={})", fmt_point(center)),
            FunctionSpec::Cube { half, center } => write!(f, "cube(h={half},c={})", fmt_point(center)),
            FunctionSpec::Gaussian { a, center } => write!(f, "gaussian(a={a},c={})", fmt_point(center)),
            FunctionSpec::Mollified { radius, width, center } => {
                write!(f, "mollified(r={radius},w={width},c={})", fmt_point(center))
            }
            FunctionSpec::Polynomial { terms } => {
                let t: Vec<String> = terms
                    .iter()
                    .map(|(c, e)| format!("{c}@{}:{}:{}", e[0], e[1], e[2]))
                    .collect();
                write!(f, "poly(t={})", t.join(";"))
            }
            FunctionSpec::Radial { radii, values } => {
                let j = |v: &[f64]| v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(":");
                write!(f, "radial(r={},v={})", j(radii), j(values))
            }
            FunctionSpec::Power { gamma, radius, center } => {
                write!(f, "power(g={gamma},r={radius},c={})", fmt_point(center))
            }
            FunctionSpec::Harmonic => write!(f, "harmonic()"),
        }
    }
}

fn parse_num(key: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("value of '{key}' is not a number: '{v}'")))
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(':').map(|x| parse_num(key, x)).collect()
}

fn parse_point(key: &str, v: &str) -> Result<Point> {
    let xs = parse_list(key, v)?;
    if xs.is_empty() || xs.len() > 3 {
        return Err(Error::Config(format!("point '{v}' must have 1 to 3 coordinates")));
    }
    let mut p = [0.0; 3];
    p[..xs.len()].copy_from_slice(&xs);
    Ok(p)
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, body) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            None => (s, ""),
            _ => return Err(Error::Config(format!("malformed function descriptor '{s}'"))),
        };
        let mut args: Vec<(String, String)> = Vec::new();
        for part in body.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("argument '{part}' is not key=value")))?;
            args.push((k.trim().to_string(), v.trim().to_string()));
        }
        let allowed: &[&str] = match name {
            "zero" | "harmonic" => &[],
            "constant" => &["v"],
            "ball" => &["r", "c"],
            "cube" => &["h", "c"],
            "gaussian" => &["a", "c"],
            "mollified" => &["r", "w", "c"],
            "poly" => &["t"],
            "radial" => &["r", "v"],
            "power" => &["g", "r", "c"],
            _ => return Err(Error::Config(format!("unknown function descriptor '{name}'"))),
        };
        for (k, _) in &args {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::Config(format!("unknown key '{k}' for descriptor '{name}'")));
            }
        }
        let get = |k: &str| args.iter().find(|(a, _)| a == k).map(|(_, v)| v.as_str());
        let num = |k: &str, default: Option<f64>| -> Result<f64> {
            match (get(k), default) {
                (Some(v), _) => parse_num(k, v),
                (None, Some(d)) => Ok(d),
                (None, None) => Err(Error::Config(format!("descriptor '{name}' needs '{k}'"))),
            }
        };
        let center = || -> Result<Point> { get("c").map_or(Ok([0.0; 3]), |v| parse_point("c", v)) };
        Ok(match name {
            "zero" => FunctionSpec::Zero,
            "harmonic" => FunctionSpec::Harmonic,
            "constant" => FunctionSpec::Constant { value: num("v", Some(1.0))? },
            "ball" => FunctionSpec::Ball { radius: num("r", Some(1.0))?, center: center()? },
            "cube" => FunctionSpec::Cube { half: num("h", Some(0.5))?, center: center()? },
            "gaussian" => FunctionSpec::Gaussian { a: num("a", Some(1.0))?, center: center()? },
            "mollified" => FunctionSpec::Mollified {
                radius: num("r", Some(1.0))?,
                width: num("w", Some(0.25))?,
                center: center()?,
            },
            "power" => FunctionSpec::Power {
                gamma: num("g", None)?,
                radius: num("r", Some(1.0))?,
                center: center()?,
            },
            "radial" => FunctionSpec::Radial {
                radii: parse_list("r", get("r").ok_or_else(|| Error::Config("radial needs 'r'".into()))?)?,
                values: parse_list("v", get("v").ok_or_else(|| Error::Config("radial needs 'v'".into()))?)?,
            },
            "poly" => {
                let t = get("t").ok_or_else(|| Error::Config("poly needs 't'".into()))?;
                let mut terms = Vec::new();
                for term in t.split(';') {
                    let (c, e) = term
                        .split_once('@')
                        .ok_or_else(|| Error::Config(format!("poly term '{term}' needs coef@exponents")))?;
                    let mut exps = [0u32; 3];
                    for (i, x) in e.split(':').enumerate() {
                        if i >= 3 {
                            return Err(Error::Config(format!("poly term '{term}' has too many exponents")));
                        }
                        exps[i] = x
                            .trim()
                            .parse()
                            .map_err(|_| Error::Config(format!("bad exponent in '{term}'")))?;
                    }
                    terms.push((parse_num("t", c)?, exps));
                }
                FunctionSpec::Polynomial { terms }
            }
            _ => unreachable!(),
        })
    }
}
