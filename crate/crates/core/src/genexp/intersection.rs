//! Empirical check of the common-eigenspace dimension count for random
//! conjugates of a class tuple.

use serde::Serialize;

use super::montecarlo::sample_rng;
use crate::classdata::{eigenspace_intersection_lower_bound, ClassTuple};
use crate::error::{Error, Result};
use crate::gflinalg::{assign_eigenvalues, random_conjugate, representative_matrix, FieldMatrix, GaloisField};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntersectionReport {
    /// `Σγ_i − n(e−1)`.
    pub lower_bound: u64,
    pub samples: u64,
    /// Samples whose intersection fell below the bound; always 0 unless the
    /// implementation is wrong.
    pub violations: u64,
    pub equalities: u64,
    pub min_dimension: u64,
    pub max_dimension: u64,
    pub equality_fraction: f64,
}

/// For each sample, conjugates every class by an independent random element
/// of `SL_n(q)` and computes the dimension of the intersection of the chosen
/// largest eigenspaces as the kernel of the stacked `x_i − λ_i I`.
///
/// The largest eigenspace of each class is that of its canonically first
/// label with the maximal number of blocks.
pub fn verify_intersection_formula(
    tuple: &ClassTuple,
    field: &GaloisField,
    samples: u64,
    seed: u64,
) -> Result<IntersectionReport> {
    let t = eigenspace_intersection_lower_bound(tuple);
    if t < 1 {
        return Err(Error::precondition(
            "the eigenspace intersection bound",
            format!("Σγ − n(e−1) = {} − {} must be at least 1", tuple.gamma_sum(), tuple.eigenspace_budget()),
        ));
    }
    let mut shifted = Vec::new();
    for spec in tuple.classes() {
        let spec = assign_eigenvalues(spec, field)?;
        let x = representative_matrix(&spec, field)?;
        let gamma = spec.gamma();
        let mut labels: Vec<_> = spec
            .profile()
            .entries()
            .iter()
            .filter(|e| e.blocks().len() as u32 == gamma)
            .collect();
        labels.sort_by(|a, b| b.blocks().cmp(a.blocks()).then_with(|| a.label().cmp(b.label())));
        let values = spec.concrete_values().expect("values were assigned");
        let lambda = field.parse_element(&values[labels[0].label()])?;
        shifted.push(x.sub_scalar(lambda)?);
    }
    let mut report = IntersectionReport {
        lower_bound: t,
        samples,
        violations: 0,
        equalities: 0,
        min_dimension: u64::MAX,
        max_dimension: 0,
        equality_fraction: 0.0,
    };
    for i in 0..samples {
        let mut rng = sample_rng(seed, i);
        let parts: Vec<FieldMatrix> = shifted.iter().map(|m| random_conjugate(m, &mut rng)).collect();
        let dim = FieldMatrix::vstack(field, &parts)?.nullity() as u64;
        report.min_dimension = report.min_dimension.min(dim);
        report.max_dimension = report.max_dimension.max(dim);
        if dim < t {
            report.violations += 1;
        } else if dim == t {
            report.equalities += 1;
        }
    }
    if samples > 0 {
        report.equality_fraction = report.equalities as f64 / samples as f64;
    } else {
        report.min_dimension = 0;
    }
    Ok(report)
}
