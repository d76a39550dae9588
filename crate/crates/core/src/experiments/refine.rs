use std::collections::BTreeMap;

use serde::Serialize;

use super::sweep::relative_drift;
use crate::error::{usage, Result};
use crate::grid::Grid;

/// How the second run differs from the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Refinement {
    /// Same box, half the spacing.
    Resolution,
    /// Same spacing, twice the box.
    Extent,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub refinement: Refinement,
    pub base: BTreeMap<String, f64>,
    pub refined: BTreeMap<String, f64>,
    /// `|refined/base - 1|` per statistic present in both runs.
    pub drift: BTreeMap<String, f64>,
    /// Set when the refined run would exceed the node cap.
    pub skipped: Option<String>,
}

impl StabilityReport {
    /// Largest drift, 0 if nothing was compared.
    pub fn max_drift(&self) -> f64 {
        self.drift.values().copied().fold(0.0, f64::max)
    }
}

/// Runs `run` on `grid` and on its refinement and reports the relative
/// drift of every summary statistic. Refined runs above `max_nodes` nodes
/// are skipped with the reason recorded.
pub fn refine_and_compare<F>(grid: &Grid, how: Refinement, max_nodes: usize, run: F) -> Result<StabilityReport>
where
    F: Fn(&Grid) -> Result<BTreeMap<String, f64>>,
{
    let fine = match how {
        Refinement::Resolution => grid.refined(),
        Refinement::Extent => grid.extended(),
    };
    let base = run(grid)?;
    if base.is_empty() {
        return usage("experiment reported no statistics");
    }
    let fine = match fine {
        Ok(g) if g.len() <= max_nodes => g,
        Ok(g) => {
            return Ok(StabilityReport {
                refinement: how,
                base,
                refined: BTreeMap::new(),
                drift: BTreeMap::new(),
                skipped: Some(format!("refined grid has {} nodes, above the cap of {max_nodes}", g.len())),
            })
        }
        Err(e) => {
            return Ok(StabilityReport {
                refinement: how,
                base,
                refined: BTreeMap::new(),
                drift: BTreeMap::new(),
                skipped: Some(e.to_string()),
            })
        }
    };
    let refined = run(&fine)?;
    let drift = base
        .iter()
        .filter_map(|(k, a)| refined.get(k).map(|b| (k.clone(), relative_drift(*a, *b))))
        .collect();
    Ok(StabilityReport { refinement: how, base, refined, drift, skipped: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{sample, FunctionSpec};
    use crate::operators::Method;
    use crate::special::RieszParams;

    #[test]
    fn mass_statistic_does_not_drift() {
        let g = Grid::new(1, 16.0, 512).unwrap();
        let rep = refine_and_compare(&g, Refinement::Resolution, 1 << 20, |grid| {
            let f = sample(grid, &FunctionSpec::mollified(1.0, 0.5))?;
            let b = crate::operators::bochner_riesz_apply(&f, &RieszParams::new(1.0, 4.0)?, Method::Multiplier)?;
            let mut m = BTreeMap::new();
            m.insert("mass_ratio".to_string(), b.integral().re / f.integral().re);
            Ok(m)
        })
        .unwrap();
        assert!(rep.skipped.is_none());
        assert!(rep.max_drift() <= 1e-10);
    }

    #[test]
    fn oversized_refinement_is_skipped() {
        let g = Grid::new(1, 16.0, 512).unwrap();
        let rep = refine_and_compare(&g, Refinement::Extent, 600, |_| Ok(BTreeMap::from([("x".to_string(), 1.0)])))
            .unwrap();
        assert!(rep.skipped.is_some());
    }
}
