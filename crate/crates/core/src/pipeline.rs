//! Runs the full computation on one model: validation, pages, the `E_2`
//! tensor check, transgression, and the abutment comparison.

use std::collections::BTreeMap;

use crate::model::{validate_model, EquivariantModel};
use crate::qlinalg::{cohomology_dims, Matrix};
use crate::scalar::Field;
use crate::specseq::{abutment_check, cartan_filtration, AbutmentReport, SpectralSequence};
use crate::validation::ValidationReport;
use crate::verify::{basic_cohomology, d2_transgression, e2_tensor_check, E2Check, VerifyError};

pub struct Analysis<F> {
    pub validation: ValidationReport,
    pub sequence: SpectralSequence<F>,
    pub e2: E2Check<F>,
    pub transgression: Result<BTreeMap<(usize, usize), Matrix<F>>, VerifyError>,
    pub abutment: AbutmentReport,
    pub basic_cohomology: Vec<usize>,
    pub lie_cohomology: Vec<usize>,
    pub total_cohomology: Vec<usize>,
}

impl<F: Field> Analysis<F> {
    pub fn stabilized_at(&self) -> usize {
        self.sequence.stabilized_at()
    }

    /// `d_2` entry at `cell` in tensor bases, when the cell is 1x1.
    pub fn transgression_entry(&self, cell: (usize, usize)) -> Option<F> {
        let t = self.transgression.as_ref().ok()?.get(&cell)?;
        (t.rows() == 1 && t.cols() == 1).then(|| t[(0, 0)].clone())
    }
}

/// Returns the validation report as the error when the model is inconsistent.
pub fn analyze<F: Field>(model: &EquivariantModel<F>) -> Result<Analysis<F>, ValidationReport> {
    let validation = validate_model(model);
    if !validation.passed() {
        return Err(validation);
    }
    let sequence = SpectralSequence::compute(&cartan_filtration(model));
    let e2 = e2_tensor_check(model, sequence.page(2)).expect("page 2 is computed");
    let transgression = d2_transgression(&e2, sequence.page(2));
    let abutment = abutment_check(model, &sequence);
    Ok(Analysis {
        validation,
        abutment,
        basic_cohomology: cohomology_dims(&basic_cohomology(model)),
        lie_cohomology: cohomology_dims(&model.lie().lie_cohomology()),
        total_cohomology: cohomology_dims(&model.total_cohomology()),
        sequence,
        e2,
        transgression,
    })
}
