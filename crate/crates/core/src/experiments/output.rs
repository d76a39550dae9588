use std::io::Write;

use super::{ErrorCurve, SweepReport};
use crate::error::Result;
use crate::regime::Params;

/// First line of every CSV file; the header row follows it.
pub const CSV_VERSION_LINE: &str = "# format_version=1";

/// Shortest round-trip text; scientific notation for very small or large
/// magnitudes, `inf` for infinity.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x.is_infinite() && x > 0.0 {
        "inf".into()
    } else if a == 0.0 || (1e-4..1e15).contains(&a) || !a.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn s_field(q: &Params) -> String {
    format_float(q.s)
}

/// Columns `param,error,p,s,alpha,n,payload,seed`, one row per parameter.
pub fn write_curve_csv<W: Write>(curve: &ErrorCurve, mut out: W) -> Result<()> {
    writeln!(out, "{CSV_VERSION_LINE}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["param", "error", "p", "s", "alpha", "n", "payload", "seed"])?;
    let q = &curve.params;
    for (v, e) in curve.values.iter().zip(&curve.errors) {
        w.write_record([
            format_float(*v),
            format_float(*e),
            q.p.to_string(),
            s_field(q),
            q.alpha.to_string(),
            q.n.to_string(),
            curve.payload.clone(),
            curve.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `radius,center,restrict,p,s,alpha,n,witness,output_norm,ratio,seed`.
pub fn write_sweep_csv<W: Write>(report: &SweepReport, mut out: W) -> Result<()> {
    writeln!(out, "{CSV_VERSION_LINE}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "radius", "center", "restrict", "p", "s", "alpha", "n", "witness", "output_norm", "ratio", "seed",
    ])?;
    for r in &report.records {
        let center: Vec<String> = r.center.iter().map(|c| c.to_string()).collect();
        w.write_record([
            format_float(r.radius),
            center.join(":"),
            r.restrict.to_string(),
            r.params.p.to_string(),
            s_field(&r.params),
            r.params.alpha.to_string(),
            r.params.n.to_string(),
            r.witness.to_string(),
            format_float(r.output_norm),
            format_float(r.ratio),
            report.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
