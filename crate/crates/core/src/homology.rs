//! Contraction of a finite complex onto its homology.
//!
//! Over the rational field every finite complex splits. Column reduction
//! of each differential block (pivot columns in label order) produces, per
//! degree, a basis of boundaries with chosen preimages, homology
//! representatives, and a complement mapped isomorphically onto the
//! boundaries below. The contraction operators are read off that
//! splitting.

use crate::complex::ChainComplex;
use crate::error::CoreError;
use crate::graded::{GradedMap, GradedModule, SparseVec};
use crate::linalg::{PairedEchelon, PairedOutcome};
use crate::scalar::Scalar;
use crate::structures::{Contraction, WeakContraction};
use std::collections::BTreeMap;

struct DegreeSplit {
    /// Boundary vectors in this degree with their preimages one degree up.
    boundaries: Vec<(SparseVec, SparseVec)>,
    /// Kernel vectors of d in this degree, in pivot-column order.
    cycles: Vec<SparseVec>,
    /// Complement vectors: preimage companions of the boundaries below.
    complement: Vec<SparseVec>,
}

/// Contraction of `c` onto a complex with zero differential whose
/// degree-j dimension is the j-th Betti number.
pub fn homology_contraction(c: &ChainComplex) -> Result<Contraction, CoreError> {
    let complex_report = c.validate();
    if !complex_report.passed() {
        return Err(CoreError::ContractViolation {
            context: "homology_contraction".to_string(),
            detail: complex_report.failure_summary(),
        });
    }
    let module = c.module();
    let d = c.d();

    // One reduction of the block d_j per degree j, tracking source
    // combinations: dependent columns witness cycles, independent columns
    // produce boundary/preimage pairs in degree j-1 and complement
    // vectors in degree j.
    let mut splits: BTreeMap<i64, DegreeSplit> = module
        .support()
        .map(|degree| {
            (
                degree,
                DegreeSplit {
                    boundaries: Vec::new(),
                    cycles: Vec::new(),
                    complement: Vec::new(),
                },
            )
        })
        .collect();

    for degree in module.support() {
        let mut ech = PairedEchelon::new();
        let mut pairs = Vec::new();
        let mut cycles = Vec::new();
        for col in 0..module.dim(degree) {
            let mut companion = SparseVec::new();
            companion.insert(col, Scalar::one());
            match ech.insert(d.column(degree, col), companion) {
                PairedOutcome::Added(_) => {}
                PairedOutcome::Dependent(witness) => cycles.push(witness),
            }
        }
        for (vector, companion) in ech.vectors().iter().zip(ech.companions()) {
            pairs.push((vector.clone(), companion.clone()));
        }
        if let Some(split) = splits.get_mut(&degree) {
            split.cycles = cycles;
            split.complement = pairs.iter().map(|(_, q)| q.clone()).collect();
        }
        if !pairs.is_empty() {
            let below = splits.get_mut(&(degree - 1)).ok_or_else(|| {
                CoreError::Internal("boundary lands outside the module support".to_string())
            })?;
            below.boundaries = pairs;
        }
    }

    // Homology representatives per degree: extend the boundary basis to
    // the cycles; the inserted residuals are the representatives.
    let mut reps: BTreeMap<i64, Vec<SparseVec>> = BTreeMap::new();
    let mut homology_parts: Vec<(i64, Vec<String>)> = Vec::new();
    for (&degree, split) in &splits {
        let mut ech = PairedEchelon::new();
        for (boundary, _) in &split.boundaries {
            ech.insert(boundary.clone(), SparseVec::new());
        }
        let mut labels = Vec::new();
        let mut degree_reps = Vec::new();
        for cycle in &split.cycles {
            if let PairedOutcome::Added(index) = ech.insert(cycle.clone(), SparseVec::new()) {
                let stored = ech.vectors()[index].clone();
                let pivot = ech.pivots()[index];
                labels.push(module.label(degree, pivot).to_string());
                degree_reps.push(stored);
            }
        }
        if !degree_reps.is_empty() {
            homology_parts.push((degree, labels));
        }
        reps.insert(degree, degree_reps);
    }
    let homology_module = GradedModule::build(homology_parts)?;
    let homology = ChainComplex::zero_complex(homology_module.clone());

    // Change of basis [boundaries | representatives | complement] per
    // degree, then read off h, pi, nabla.
    let mut h = GradedMap::zero(module.clone(), module.clone(), 1);
    let mut pi = GradedMap::zero(module.clone(), homology_module.clone(), 0);
    let mut nabla = GradedMap::zero(homology_module.clone(), module.clone(), 0);

    for (&degree, split) in &splits {
        let degree_reps = &reps[&degree];
        let n_boundaries = split.boundaries.len();
        let n_reps = degree_reps.len();
        let dim = module.dim(degree);
        if dim == 0 {
            continue;
        }
        if n_boundaries + n_reps + split.complement.len() != dim {
            return Err(CoreError::Internal(format!(
                "splitting of degree {degree} does not fill the module"
            )));
        }

        let mut basis = PairedEchelon::new();
        let mut position = 0usize;
        for v in split
            .boundaries
            .iter()
            .map(|(b, _)| b)
            .chain(degree_reps.iter())
            .chain(split.complement.iter())
        {
            let mut companion = SparseVec::new();
            companion.insert(position, Scalar::one());
            match basis.insert(v.clone(), companion) {
                PairedOutcome::Added(_) => position += 1,
                PairedOutcome::Dependent(_) => {
                    return Err(CoreError::Internal(format!(
                        "splitting of degree {degree} is not direct"
                    )))
                }
            }
        }

        for col in 0..dim {
            let mut unit = SparseVec::new();
            unit.insert(col, Scalar::one());
            let (residual, coords) = basis.reduce(unit, SparseVec::new());
            if !residual.is_empty() {
                return Err(CoreError::Internal(format!(
                    "basis of degree {degree} does not span"
                )));
            }
            // `reduce` subtracted the expressed combination, so the
            // original coordinates flip sign
            for (index, value) in coords {
                let value = -value;
                if index < n_boundaries {
                    // boundary coordinate: h maps it to the recorded preimage
                    let preimage = &split.boundaries[index].1;
                    for (&row, coeff) in preimage {
                        h.add_term(degree, row, col, &value * coeff)?;
                    }
                } else if index < n_boundaries + n_reps {
                    pi.add_term(degree, index - n_boundaries, col, value)?;
                }
            }
        }

        for (k, rep) in degree_reps.iter().enumerate() {
            for (&row, coeff) in rep {
                nabla.add_term(degree, row, k, coeff.clone())?;
            }
        }
    }

    let contraction = Contraction::new(WeakContraction::new(
        homology,
        c.clone(),
        pi,
        nabla,
        h,
    )?);
    let report = contraction.validate();
    if !report.passed() {
        return Err(CoreError::Internal(report.failure_summary()));
    }
    Ok(contraction)
}
