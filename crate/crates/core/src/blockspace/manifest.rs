//! JSON manifests of decompositions and the binary payload sidecar.
//!
//! The sidecar is a flat stream of little-endian `f64`: the header
//! `n, N, L, term count`, then each payload densely in row-major order as
//! interleaved `(re, im)` pairs.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Decomposition, Shape};
use crate::error::{Error, Result};
use crate::grid::{Grid, SampledFunction};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestParams {
    pub n: usize,
    pub p: f64,
    /// A number, or the string `"inf"`.
    pub s: serde_json::Value,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestGrid {
    pub n: usize,
    pub extent: f64,
    pub points_per_axis: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestTerm {
    pub lambda: [f64; 2],
    pub center: Vec<f64>,
    pub radius: f64,
    pub shape: Shape,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub kind: String,
    pub params: ManifestParams,
    pub grid: ManifestGrid,
    pub quasinorm_bound: f64,
    pub max_margin: f64,
    pub diagnostics: BTreeMap<String, f64>,
    pub terms: Vec<ManifestTerm>,
}

impl Manifest {
    pub fn from_decomposition(d: &Decomposition) -> Self {
        let n = d.params.n;
        let s = if d.params.s.is_infinite() {
            serde_json::Value::String("inf".into())
        } else {
            serde_json::json!(d.params.s)
        };
        Manifest {
            format_version: FORMAT_VERSION,
            kind: d.kind.clone(),
            params: ManifestParams { n, p: d.params.p, s, alpha: d.params.alpha },
            grid: ManifestGrid {
                n: d.grid.dim(),
                extent: d.grid.extent(),
                points_per_axis: d.grid.size(),
            },
            quasinorm_bound: d.quasinorm_bound(),
            max_margin: d.max_margin(),
            diagnostics: d.diagnostics.clone(),
            terms: d
                .terms
                .iter()
                .map(|t| ManifestTerm {
                    lambda: [t.coefficient.re, t.coefficient.im],
                    center: t.block.center[..n].to_vec(),
                    radius: t.block.radius,
                    shape: t.block.shape,
                    margin: t.margin,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn write_manifest(d: &Decomposition, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(Manifest::from_decomposition(d).to_json()?.as_bytes())?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn write_sidecar(d: &Decomposition, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let g = d.grid;
    for v in [g.dim() as f64, g.size() as f64, g.extent(), d.terms.len() as f64] {
        w.write_all(&v.to_le_bytes())?;
    }
    for t in &d.terms {
        for v in t.payload.to_dense().values() {
            w.write_all(&v.re.to_le_bytes())?;
            w.write_all(&v.im.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a sidecar back into its grid and dense payloads.
pub fn read_sidecar(path: &Path) -> Result<(Grid, Vec<SampledFunction>)> {
    let mut bytes = Vec::new();
    BufReader::new(File::open(path)?).read_to_end(&mut bytes)?;
    if bytes.len() % 8 != 0 || bytes.len() < 32 {
        return Err(Error::Io(format!("sidecar {} is truncated", path.display())));
    }
    let words: Vec<f64> = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let grid = Grid::new(words[0] as usize, words[2], words[1] as usize)?;
    let count = words[3] as usize;
    let len = grid.len();
    if words.len() != 4 + count * 2 * len {
        return Err(Error::Io(format!("sidecar {} has an inconsistent length", path.display())));
    }
    let mut out = Vec::with_capacity(count);
    for t in 0..count {
        let base = 4 + t * 2 * len;
        let vals = (0..len)
            .map(|i| Complex64::new(words[base + 2 * i], words[base + 2 * i + 1]))
            .collect();
        out.push(SampledFunction::new(grid, vals)?);
    }
    Ok((grid, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockspace::decompose_annuli;
    use crate::grid::{sample, FunctionSpec};
    use crate::regime::Params;

    #[test]
    fn manifest_and_sidecar_round_trip() {
        let g = Grid::new(1, 8.0, 64).unwrap();
        let q = Params::new(1, 1.0, 2.0, -0.75).unwrap();
        let f = sample(&g, &FunctionSpec::gaussian(0.5)).unwrap();
        let d = decompose_annuli(&f, &q).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let mp = dir.path().join("d.json");
        let sp = dir.path().join("d.bin");
        write_manifest(&d, &mp).unwrap();
        write_sidecar(&d, &sp).unwrap();
        let m: Manifest = serde_json::from_str(&std::fs::read_to_string(&mp).unwrap()).unwrap();
        assert_eq!(m, Manifest::from_decomposition(&d));
        let (g2, payloads) = read_sidecar(&sp).unwrap();
        assert_eq!(g2, g);
        assert_eq!(payloads.len(), d.len());
        for (p, t) in payloads.iter().zip(&d.terms) {
            assert_eq!(p, &t.payload.to_dense());
        }
    }

    #[test]
    fn infinite_s_is_a_string() {
        let g = Grid::new(1, 8.0, 64).unwrap();
        let q = Params::new(1, 1.0, f64::INFINITY, -1.5 + 0.7).unwrap();
        let d = Decomposition::empty("none", q, g);
        let json = Manifest::from_decomposition(&d).to_json().unwrap();
        assert!(json.contains("\"s\": \"inf\""));
    }
}
