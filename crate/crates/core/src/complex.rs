//! Chain complexes and the operations that produce new complexes from
//! old: image subcomplexes of chain idempotent-like maps and exact
//! Neumann inversion of nilpotent degree-zero endomorphisms.

use crate::error::CoreError;
use crate::graded::{compose, GradedMap, GradedModule};
use crate::linalg::Echelon;
use crate::report::Report;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Finitely supported chain complex: a graded module together with a
/// degree `-1` endomorphism. Construction checks shape only; square-zero
/// is verified by [`ChainComplex::validate`] (so that defective inputs can
/// be represented and reported on) and enforced by [`ChainComplex::checked`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    module: GradedModule,
    d: GradedMap,
}

impl ChainComplex {
    pub fn new(module: GradedModule, d: GradedMap) -> Result<Self, CoreError> {
        if d.degree() != -1 {
            return Err(CoreError::BadInput(format!(
                "differential must have degree -1, got {}",
                d.degree()
            )));
        }
        if d.source() != &module || d.target() != &module {
            return Err(CoreError::BadInput(
                "differential must be an endomorphism of the underlying module".to_string(),
            ));
        }
        Ok(ChainComplex { module, d })
    }

    /// Construct and insist on `d . d = 0`.
    pub fn checked(module: GradedModule, d: GradedMap) -> Result<Self, CoreError> {
        let complex = ChainComplex::new(module, d)?;
        let report = complex.validate();
        if !report.passed() {
            return Err(CoreError::ContractViolation {
                context: "chain complex".to_string(),
                detail: report.failure_summary(),
            });
        }
        Ok(complex)
    }

    pub fn zero_complex(module: GradedModule) -> Self {
        let d = GradedMap::zero(module.clone(), module.clone(), -1);
        ChainComplex { module, d }
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn d(&self) -> &GradedMap {
        &self.d
    }

    /// Check `d . d = 0` exactly, reporting each violating degree with its
    /// first offending entry.
    pub fn validate(&self) -> Report {
        let mut report = Report::new("chain complex");
        let dd = compose(&self.d, &self.d).expect("endomorphism composes with itself");
        if dd.is_zero() {
            report.pass("d2", "d.d = 0 in every degree");
        } else {
            let mut by_degree: BTreeMap<i64, (usize, usize, Scalar)> = BTreeMap::new();
            for (degree, row, col, value) in dd.entries() {
                by_degree
                    .entry(degree)
                    .or_insert((row, col, value.clone()));
            }
            for (degree, (row, col, value)) in by_degree {
                report.fail(
                    "d2",
                    format!("d.d = 0 at degree {degree}"),
                    format!(
                        "({}, {}) = {value}",
                        self.module.label(degree - 2, row),
                        self.module.label(degree, col)
                    ),
                );
            }
        }
        report
    }
}

/// Validate the square-zero contract of a complex.
pub fn validate_complex(complex: &ChainComplex) -> Report {
    complex.validate()
}

/// Image of a degree-zero chain map as a subcomplex. Carries the basis
/// echelons so that maps into the image can be corestricted exactly.
#[derive(Debug, Clone)]
pub struct Subcomplex {
    pub complex: ChainComplex,
    /// Inclusion of the image into the ambient complex.
    pub inclusion: GradedMap,
    echelons: BTreeMap<i64, Echelon>,
}

impl Subcomplex {
    /// Express a map `X -> N` whose values lie in the image as a map
    /// `X -> M` in the chosen image basis.
    pub fn corestrict(&self, f: &GradedMap) -> Result<GradedMap, CoreError> {
        let mut out = GradedMap::zero(
            f.source().clone(),
            self.complex.module().clone(),
            f.degree(),
        );
        for src_degree in f.source().support() {
            let tgt_degree = src_degree + f.degree();
            for col in 0..f.source().dim(src_degree) {
                let v = f.column(src_degree, col);
                if v.is_empty() {
                    continue;
                }
                let Some(ech) = self.echelons.get(&tgt_degree) else {
                    return Err(CoreError::ContractViolation {
                        context: "corestriction".to_string(),
                        detail: format!(
                            "value of basis element {} lands outside the image (degree {tgt_degree} empty)",
                            f.source().label(src_degree, col)
                        ),
                    });
                };
                let (coeffs, residual) = ech.reduce(v);
                if !residual.is_empty() {
                    return Err(CoreError::ContractViolation {
                        context: "corestriction".to_string(),
                        detail: format!(
                            "value of basis element {} does not lie in the image",
                            f.source().label(src_degree, col)
                        ),
                    });
                }
                for (row, coeff) in coeffs.into_iter().enumerate() {
                    out.add_term(src_degree, row, col, coeff)?;
                }
            }
        }
        Ok(out)
    }
}

/// Compute the image `t(N)` of a degree-zero chain map as a subcomplex of
/// `N`: a basis per degree by column reduction (pivot columns in label
/// order), the inclusion, and the restricted differential.
pub fn image_subcomplex(ambient: &ChainComplex, t: &GradedMap) -> Result<Subcomplex, CoreError> {
    if t.degree() != 0 || t.source() != ambient.module() || t.target() != ambient.module() {
        return Err(CoreError::BadInput(
            "image is defined for degree-zero endomorphisms of the ambient complex".to_string(),
        ));
    }
    let dt = compose(ambient.d(), t)?;
    let td = compose(t, ambient.d())?;
    if let Some(diff) = dt.first_difference(&td) {
        return Err(CoreError::NotChainMap {
            context: "image_subcomplex".to_string(),
            detail: diff,
        });
    }

    let module = ambient.module();
    let mut echelons: BTreeMap<i64, Echelon> = BTreeMap::new();
    let mut parts: Vec<(i64, Vec<String>)> = Vec::new();
    for degree in module.support() {
        let mut ech = Echelon::new();
        for col in 0..module.dim(degree) {
            ech.insert(t.column(degree, col));
        }
        if ech.rank() > 0 {
            let labels = ech
                .pivots()
                .iter()
                .map(|&pivot| module.label(degree, pivot).to_string())
                .collect();
            parts.push((degree, labels));
            echelons.insert(degree, ech);
        }
    }
    let image_module = GradedModule::build(parts)?;

    let mut inclusion = GradedMap::zero(image_module.clone(), module.clone(), 0);
    for (&degree, ech) in &echelons {
        for (k, vector) in ech.vectors().iter().enumerate() {
            for (&row, value) in vector {
                inclusion.add_term(degree, row, k, value.clone())?;
            }
        }
    }

    // restricted differential: express d(basis vector) in the image basis
    let mut d_restricted = GradedMap::zero(image_module.clone(), image_module.clone(), -1);
    for (&degree, ech) in &echelons {
        for (k, vector) in ech.vectors().iter().enumerate() {
            let image = ambient.d().apply(degree, vector);
            if image.is_empty() {
                continue;
            }
            let below = echelons.get(&(degree - 1)).ok_or_else(|| {
                CoreError::Internal(format!(
                    "image of d leaves the subcomplex at degree {degree}"
                ))
            })?;
            let (coeffs, residual) = below.reduce(image);
            if !residual.is_empty() {
                return Err(CoreError::Internal(format!(
                    "image of d leaves the subcomplex at degree {degree}"
                )));
            }
            for (row, coeff) in coeffs.into_iter().enumerate() {
                d_restricted.add_term(degree, row, k, coeff)?;
            }
        }
    }

    let complex = ChainComplex::checked(image_module, d_restricted)?;
    Ok(Subcomplex {
        complex,
        inclusion,
        echelons,
    })
}

/// Default iteration cap for Neumann series: a filtration-lowering
/// operator on a finite complex is nilpotent with index at most the total
/// dimension.
pub fn default_cap(module: &GradedModule) -> usize {
    module.total_dim() + 1
}

/// Exact inverse of `1 + u` by the terminating series `sum (-u)^n`. The
/// result is verified to be a two-sided inverse before it is returned.
/// A series that has not terminated after `cap` iterations yields
/// [`CoreError::NonNilpotent`] with the iteration count.
pub fn neumann_inverse(u: &GradedMap, cap: usize) -> Result<GradedMap, CoreError> {
    if u.degree() != 0 || !u.is_endomorphism() {
        return Err(CoreError::BadInput(
            "Neumann inversion needs a degree-zero endomorphism".to_string(),
        ));
    }
    let id = GradedMap::identity(u.source());
    let minus_u = u.neg();
    let mut sum = id.clone();
    let mut term = minus_u.clone();
    let mut n = 1usize;
    while !term.is_zero() {
        if n > cap {
            return Err(CoreError::NonNilpotent { iterations: cap });
        }
        sum = sum.add(&term)?;
        term = compose(&minus_u, &term)?;
        n += 1;
    }
    let one_plus_u = id.add(u)?;
    if compose(&one_plus_u, &sum)? != id || compose(&sum, &one_plus_u)? != id {
        return Err(CoreError::Internal(
            "Neumann series terminated but is not a two-sided inverse".to_string(),
        ));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn standard_module() -> GradedModule {
        GradedModule::build([(0, vec!["a", "c"]), (1, vec!["b"])]).unwrap()
    }

    pub(crate) fn standard_complex() -> ChainComplex {
        let m = standard_module();
        let mut d = GradedMap::zero(m.clone(), m.clone(), -1);
        d.add_term(1, 1, 0, Scalar::one()).unwrap(); // d(b) = c
        ChainComplex::checked(m, d).unwrap()
    }

    #[test]
    fn zero_differential_validates() {
        let c = ChainComplex::zero_complex(standard_module());
        assert!(c.validate().passed());
    }

    #[test]
    fn standard_example_validates() {
        assert!(standard_complex().validate().passed());
    }

    #[test]
    fn failing_complex_reports_degree() {
        // d(e2) = e1, d(e1) = e0: d.d(e2) = e0 != 0, fails at degree 2
        let m = GradedModule::build([(0, vec!["e0"]), (1, vec!["e1"]), (2, vec!["e2"])]).unwrap();
        let mut d = GradedMap::zero(m.clone(), m.clone(), -1);
        d.add_term(2, 0, 0, Scalar::one()).unwrap();
        d.add_term(1, 0, 0, Scalar::one()).unwrap();
        let c = ChainComplex::new(m, d).unwrap();
        let report = c.validate();
        assert!(!report.passed());
        let line = report.first_failure().unwrap();
        assert!(line.what.contains("degree 2"), "{}", line.what);
        assert!(ChainComplex::checked(
            c.module().clone(),
            c.d().clone()
        )
        .is_err());
    }

    #[test]
    fn image_of_identity_is_everything() {
        let c = standard_complex();
        let id = GradedMap::identity(c.module());
        let sub = image_subcomplex(&c, &id).unwrap();
        assert_eq!(sub.complex.module(), c.module());
        assert_eq!(sub.inclusion, id);
    }

    #[test]
    fn image_of_zero_is_empty() {
        let c = standard_complex();
        let z = GradedMap::zero(c.module().clone(), c.module().clone(), 0);
        let sub = image_subcomplex(&c, &z).unwrap();
        assert!(sub.complex.module().is_empty());
    }

    #[test]
    fn image_of_projection_is_span_a() {
        // t = nabla.pi projects onto span{a}
        let c = standard_complex();
        let m = c.module().clone();
        let mut t = GradedMap::zero(m.clone(), m.clone(), 0);
        t.add_term(0, 0, 0, Scalar::one()).unwrap(); // t(a) = a
        let sub = image_subcomplex(&c, &t).unwrap();
        assert_eq!(sub.complex.module().labels(0), ["a".to_string()]);
        assert_eq!(sub.complex.module().total_dim(), 1);
        assert!(sub.complex.d().is_zero());
    }

    #[test]
    fn image_rejects_non_chain_maps() {
        let c = standard_complex();
        let m = c.module().clone();
        let mut t = GradedMap::zero(m.clone(), m.clone(), 0);
        t.add_term(1, 0, 0, Scalar::one()).unwrap(); // t(b) = b, t(c) = 0: d t(b) = c, t d(b) = 0
        assert!(matches!(
            image_subcomplex(&c, &t),
            Err(CoreError::NotChainMap { .. })
        ));
    }

    #[test]
    fn neumann_of_zero_is_identity() {
        let m = standard_module();
        let z = GradedMap::zero(m.clone(), m.clone(), 0);
        let inv = neumann_inverse(&z, default_cap(&m)).unwrap();
        assert_eq!(inv, GradedMap::identity(&m));
    }

    #[test]
    fn neumann_of_two_step_nilpotent() {
        // u(c) = 2a, otherwise 0: u^2 = 0 so the inverse is 1 - u
        let m = standard_module();
        let mut u = GradedMap::zero(m.clone(), m.clone(), 0);
        u.add_term(0, 0, 1, Scalar::from_int(2)).unwrap();
        let inv = neumann_inverse(&u, default_cap(&m)).unwrap();
        let expected = GradedMap::identity(&m).sub(&u).unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn neumann_rejects_non_nilpotent() {
        let m = GradedModule::build([(0, vec!["e"])]).unwrap();
        let u = GradedMap::identity(&m); // (-1)^n e never vanishes
        match neumann_inverse(&u, 50) {
            Err(CoreError::NonNilpotent { iterations }) => assert_eq!(iterations, 50),
            other => panic!("expected non-nilpotence, got {other:?}"),
        }
    }
}
