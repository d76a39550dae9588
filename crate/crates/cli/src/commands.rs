use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use blocklab::blockspace::{
    decompose_annuli, decompose_maximal_whitney, decompose_schwartz, decompose_simple, decompose_tail, write_manifest,
    write_sidecar, SimpleTerm,
};
use blocklab::experiments::{
    boundedness_sweep, convergence_experiment, format_float, sweep_stability, write_curve_csv, write_sweep_csv, BlockFamily,
    ConvergenceFamily, SweepMode, CSV_VERSION_LINE,
};
use blocklab::grid::{sample, FunctionSpec};
use blocklab::operators::{dyadic_radii, parse_list, OperatorSpec};
use blocklab::special::{bessel_j, bochner_riesz_kernel, RieszParams};
use blocklab::{Error, Grid, Result};
use serde::Serialize;

use crate::config::{as_config, Settings};

/// Property verdict of a finished command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

/// Margins above this count as a broken block.
const MARGIN_TOL: f64 = 1e-9;

pub const DECOMPOSE_KEYS: &[&str] =
    &["n", "N", "L", "p", "s", "alpha", "algo", "payload", "cubes", "certificate", "out", "sidecar", "jobs"];
pub const CONVERGE_KEYS: &[&str] =
    &["n", "N", "L", "p", "s", "alpha", "family", "grid", "payload", "seed", "out", "json", "jobs"];
pub const SWEEP_KEYS: &[&str] = &[
    "n", "N", "L", "p", "s", "alpha", "op", "radii", "offset", "random", "seed", "contrast", "stability", "out",
    "json", "jobs",
];
pub const BESSEL_KEYS: &[&str] = &["order", "t_min", "t_max", "points", "lambda", "dim", "out", "jobs"];

/// Runs `body` against the named file, or stdout when no path is given.
fn with_output<F>(path: Option<&str>, body: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn write_json<T: Serialize>(path: &str, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn payload_spec(cfg: &Settings, default: &str) -> Result<FunctionSpec> {
    cfg.string("payload", default).parse()
}

/// `coef@x:y:z@side` terms separated by `;`.
fn parse_cubes(text: &str, n: usize) -> Result<Vec<SimpleTerm>> {
    let bad = |t: &str| Error::Config(format!("cube term {t:?} must read coef@lo@side with lo = x:y:z"));
    text.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let parts: Vec<&str> = t.split('@').collect();
            let [c, lo, side] = parts[..] else { return Err(bad(t)) };
            let coefficient = c.trim().parse().map_err(|_| bad(t))?;
            let side = side.trim().parse().map_err(|_| bad(t))?;
            let coords = lo.split(':').map(|v| v.trim().parse::<f64>()).collect::<std::result::Result<Vec<_>, _>>();
            let coords = coords.map_err(|_| bad(t))?;
            if coords.len() != n {
                return Err(Error::Config(format!("cube corner {lo:?} needs {n} coordinates")));
            }
            let mut lo = [0.0; 3];
            lo[..n].copy_from_slice(&coords);
            Ok(SimpleTerm { coefficient, lo, side })
        })
        .collect()
}

pub fn decompose(cfg: &Settings) -> Result<Outcome> {
    let q = cfg.params(1)?;
    let grid = cfg.grid(q.n, 1024, 16.0)?;
    let algo = cfg.require("algo")?;
    let d = match algo {
        "simple" => {
            let terms = parse_cubes(cfg.require("cubes")?, q.n)?;
            decompose_simple(&grid, &terms, &q)?
        }
        "annuli" | "tail" | "schwartz" | "maximal_whitney" => {
            let spec = payload_spec(cfg, "zero")?;
            // the regime gate comes before any sampling
            let f = || sample(&grid, &spec).map_err(as_config);
            match algo {
                "annuli" => {
                    blocklab::regime::check_annuli(&q)?;
                    decompose_annuli(&f()?, &q)?
                }
                "tail" => {
                    blocklab::regime::check_tail(&q)?;
                    decompose_tail(&f()?, &q)?
                }
                "schwartz" => {
                    blocklab::regime::check_schwartz(&q)?;
                    let cert = cfg.get("certificate").map(|_| cfg.f64_or("certificate", None)).transpose()?;
                    decompose_schwartz(&f()?, &q, cert)?
                }
                _ => {
                    blocklab::regime::check_maximal_whitney(&q)?;
                    decompose_maximal_whitney(&f()?, &q)?
                }
            }
        }
        other => {
            return Err(Error::Config(format!(
                "unknown algo {other:?}; expected simple, annuli, tail, schwartz or maximal_whitney"
            )))
        }
    };
    let out = cfg.string("out", "manifest.json");
    write_manifest(&d, Path::new(&out))?;
    if let Some(side) = cfg.get("sidecar") {
        write_sidecar(&d, Path::new(side))?;
    }
    let margin = d.max_margin();
    println!("terms={} quasinorm_bound={} max_margin={} manifest={out}", d.len(), d.quasinorm_bound(), margin);
    Ok(if margin <= 1.0 + MARGIN_TOL { Outcome::Pass } else { Outcome::Fail })
}

pub fn converge(cfg: &Settings) -> Result<Outcome> {
    let q = cfg.params(1)?;
    let family: ConvergenceFamily = cfg.require("family")?.parse()?;
    family.check(&q)?;
    let grid = cfg.grid(q.n, 1024, 16.0)?;
    let mut values = parse_list("grid", cfg.require("grid")?)?;
    if !family.ascending() {
        values.reverse();
    }
    let descriptor = cfg.string("payload", "mollified(r=1,w=0.5)");
    let f = sample(&grid, &descriptor.parse()?).map_err(as_config)?;
    let seed = cfg.seed()?;
    let curve = convergence_experiment(&family, &f, &q, &values, &descriptor, seed).map_err(as_config)?;
    with_output(cfg.get("out"), |w| write_curve_csv(&curve, w))?;
    if let Some(path) = cfg.get("json") {
        write_json(path, &curve)?;
    }
    let verdict = curve.verdict();
    eprintln!(
        "verdict={} final_error={} initial_error={} reason={}",
        if verdict.pass { "PASS" } else { "FAIL" },
        curve.errors.last().copied().unwrap_or(0.0),
        curve.errors.first().copied().unwrap_or(0.0),
        verdict.reason
    );
    Ok(if verdict.pass { Outcome::Pass } else { Outcome::Fail })
}

/// `hl_maximal` without radii follows the grid: dyadic radii from the
/// spacing up to the half-width.
fn operator_for(text: &str) -> Result<Box<dyn Fn(&Grid) -> OperatorSpec>> {
    let t = text.trim();
    if t == "hl_maximal" || t == "hl_maximal()" {
        return Ok(Box::new(|g: &Grid| OperatorSpec::HlMaximal { radii: dyadic_radii(g.spacing(), g.extent()) }));
    }
    let op: OperatorSpec = t.parse()?;
    Ok(Box::new(move |_: &Grid| op.clone()))
}

#[derive(Serialize)]
struct SweepJson<'a> {
    report: &'a blocklab::experiments::SweepReport,
    stability: Option<&'a blocklab::experiments::SweepStability>,
}

pub fn sweep(cfg: &Settings) -> Result<Outcome> {
    let q = cfg.params(1)?;
    let grid = cfg.grid(q.n, 1024, 64.0)?;
    let op_for = operator_for(&cfg.string("op", "hl_maximal"))?;
    let mode = if cfg.flag("contrast")? { SweepMode::Contrast } else { SweepMode::Positive };
    let family = BlockFamily {
        radii: parse_list("radii", &cfg.string("radii", "0.5..4"))?,
        offset: cfg.flag("offset")?,
        random: cfg.flag("random")?,
        seed: cfg.seed()?,
    };
    let report = boundedness_sweep(&op_for(&grid), &family, &[q], &grid, mode).map_err(as_config)?;
    let stability = match cfg.get("stability") {
        Some(_) if !cfg.flag("stability")? => None,
        _ => Some(sweep_stability(&op_for, &family, &[q], &grid, mode)?),
    };
    with_output(cfg.get("out"), |w| write_sweep_csv(&report, w))?;
    if let Some(path) = cfg.get("json") {
        write_json(path, &SweepJson { report: &report, stability: stability.as_ref() })?;
    }
    match &stability {
        Some(st) => {
            eprintln!(
                "verdict={} max_ratio={} range_doubled={} resolution_doubled={} growth={}",
                if st.pass { "PASS" } else { "FAIL" },
                st.base,
                st.range,
                st.resolution.map_or("-".to_string(), |r| r.to_string()),
                st.growth
            );
            Ok(if st.pass { Outcome::Pass } else { Outcome::Fail })
        }
        None => {
            eprintln!("max_ratio={}", report.max_ratio);
            Ok(Outcome::Pass)
        }
    }
}

pub fn bessel(cfg: &Settings) -> Result<Outcome> {
    let order = cfg.f64_or("order", None)?;
    let t_min = cfg.f64_or("t_min", None)?;
    let t_max = cfg.f64_or("t_max", None)?;
    let points = cfg.usize_or("points", None)?;
    if !(t_min >= 0.0 && t_max > t_min && points >= 2) {
        return Err(Error::Config("bessel table needs 0 <= t-min < t-max and at least 2 points".into()));
    }
    let kernel = match cfg.get("lambda") {
        Some(_) => {
            let lambda = cfg.f64_or("lambda", None)?;
            let dim = cfg.usize_or("dim", Some(1))?;
            Some((dim, RieszParams::new(lambda, 1.0).map_err(as_config)?))
        }
        None => None,
    };
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let t = t_min + (t_max - t_min) * i as f64 / (points - 1) as f64;
        let j = bessel_j(order, t).map_err(as_config)?;
        let k = match &kernel {
            Some((dim, rp)) => Some(bochner_riesz_kernel(*dim, rp, t).map_err(as_config)?),
            None => None,
        };
        rows.push((t, j, k));
    }
    with_output(cfg.get("out"), |w| {
        writeln!(w, "{CSV_VERSION_LINE}")?;
        let mut csv = csv::Writer::from_writer(w);
        if kernel.is_some() {
            csv.write_record(["order", "t", "value", "kernel"])?;
        } else {
            csv.write_record(["order", "t", "value"])?;
        }
        for (t, j, k) in &rows {
            let mut rec = vec![format_float(order), format_float(*t), format_float(*j)];
            if let Some(k) = k {
                rec.push(format_float(*k));
            }
            csv.write_record(&rec)?;
        }
        csv.flush()?;
        Ok(())
    })?;
    Ok(Outcome::Pass)
}
