//! Jacobi, Poisson and Jacobi–Nijenhuis structures: validators, derived
//! structures and the identities relating them.

mod algebroid;
mod compat;
mod homogeneous;
mod identities;
pub mod random;
mod report;
mod structures;
mod types;

use std::sync::Arc;

use crate::error::Result;
use crate::num::Coeff;
use crate::scalar::{Chart, ScalarField};
use crate::tensor::{DifferentialForm, MultivectorField};

pub use algebroid::{algebroid_bracket, anchor, recursion_operator_check, star_bracket, tilde_anchor};
pub use compat::{check_compatibility, check_theorem_rec, concomitant, form_bracket, hierarchy, DEFAULT_KMAX};
pub use homogeneous::{check_homogeneous_pn, is_homogeneous_poisson, verify_conformal_morphism};
pub use identities::{verify_identity, IdentityInputs, IDENTITIES};
pub use report::{CheckReport, Clause, Status};
pub use structures::{
    depoissonize, invert_matrix, is_jacobi, is_jacobi_pencil, is_poisson, jacobi_bracket, lcs_endomorphism,
    lcs_to_jacobi, poissonize, poissonize_with,
};
pub use types::{FieldPair, JacobiPair, RecursionOperator, SectionPair};

pub(crate) fn basis_forms<C: Coeff>(chart: &Arc<Chart>) -> Vec<DifferentialForm<C>> {
    (0..chart.dim()).map(|i| DifferentialForm::basis(chart, &[i]).expect("index in range")).collect()
}

pub(crate) fn basis_vectors<C: Coeff>(chart: &Arc<Chart>) -> Vec<MultivectorField<C>> {
    (0..chart.dim()).map(|i| MultivectorField::basis(chart, &[i]).expect("index in range")).collect()
}

pub(crate) fn dx(chart: &Chart, i: usize) -> String {
    format!("d{}", chart.name(i))
}

pub(crate) fn scalar_residual<C: Coeff>(prefix: &str, s: &ScalarField<C>) -> Vec<String> {
    if s.is_zero() {
        Vec::new()
    } else {
        vec![format!("{prefix}: {s}")]
    }
}

/// Runs `body` on a fresh report; an error becomes status `Error`.
pub fn run_check(name: &str, body: impl FnOnce(&mut CheckReport) -> Result<()>) -> CheckReport {
    let mut report = CheckReport::new(name);
    if let Err(e) = body(&mut report) {
        report.flag_error(e.to_string());
    }
    report
}
