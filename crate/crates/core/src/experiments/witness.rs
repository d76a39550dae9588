use serde::Serialize;

use crate::blockspace::{molecule_ratio, molecule_to_blocks, BlockSpec, Decomposition, Molecule, MoleculeExponents};
use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::operators::{size_condition_check, OperatorSpec, SizeConditionReport};
use crate::regime::{check_calderon_zygmund, Params};

#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub size: SizeConditionReport,
    /// `R(Op b)` with the block centre as molecule centre.
    pub molecule_ratio: f64,
    pub decomposition: Decomposition,
}

#[derive(Serialize)]
struct Summary<'a> {
    size: &'a SizeConditionReport,
    molecule_ratio: f64,
    quasinorm_bound: f64,
    max_margin: f64,
    terms: usize,
}

impl WitnessReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&Summary {
            size: &self.size,
            molecule_ratio: self.molecule_ratio,
            quasinorm_bound: self.decomposition.quasinorm_bound(),
            max_margin: self.decomposition.max_margin(),
            terms: self.decomposition.len(),
        })?)
    }
}

/// Treats `Op b` as a molecule about the block centre with exponents
/// `a = 1 - 1/p - alpha/(np) - eps`, `b = 1 - 1/s - eps`, after checking the
/// size condition with `delta = n` out to `far_radius`, and returns the
/// block decomposition that witnesses `‖Op b‖` in the block space.
pub fn block_image_witness(
    op: &OperatorSpec,
    b: &SampledFunction,
    block: &BlockSpec,
    params: &Params,
    eps: f64,
    far_radius: f64,
) -> Result<WitnessReport> {
    check_calderon_zygmund(params)?;
    let exponents = MoleculeExponents::standard(params, eps)?;
    let b_limit = 1.0 - params.inv_s();
    if !(eps > 0.0 && eps < b_limit) {
        return Err(Error::Hypothesis(format!(
            "molecule exponents need 0 < eps < min(A_0, 1 - 1/s) = {}, got eps = {eps}",
            exponents.a0.min(b_limit)
        )));
    }
    let size = size_condition_check(op, b, block, params.nf(), far_radius)?;
    let image = op.apply(b)?;
    let molecule = Molecule::new(image, block.center, *params, exponents);
    let ratio = molecule_ratio(&molecule)?;
    let decomposition = molecule_to_blocks(&molecule)?;
    Ok(WitnessReport { size, molecule_ratio: ratio, decomposition })
}
