//! The perturbation engine: given a structure on `N` and a perturbation
//! of the differential, certify invertibility of `1 + h.del` and
//! `1 + del.h` by terminating Neumann series, assemble the perturbed
//! operators, and verify the full identity suite exactly.

use crate::complex::{image_subcomplex, neumann_inverse, ChainComplex};
use crate::error::CoreError;
use crate::graded::{compose, compose_chain, GradedMap};
use crate::report::Report;
use crate::structures::{Contraction, Pseudocontraction, WeakContraction};

/// A degree `-1` operator `del` such that `d + del` squares to zero.
/// Construction checks shape only; [`Perturbation::check`] reports on the
/// square-zero contract.
#[derive(Debug, Clone)]
pub struct Perturbation {
    pub base: ChainComplex,
    pub del: GradedMap,
}

impl Perturbation {
    pub fn new(base: ChainComplex, del: GradedMap) -> Result<Self, CoreError> {
        if del.degree() != -1 || del.source() != base.module() || del.target() != base.module() {
            return Err(CoreError::BadInput(
                "a perturbation is a degree -1 endomorphism of the base complex".to_string(),
            ));
        }
        Ok(Perturbation { base, del })
    }

    pub fn zero(base: ChainComplex) -> Self {
        let del = GradedMap::zero(base.module().clone(), base.module().clone(), -1);
        Perturbation { base, del }
    }

    /// `(d + del)^2 = 0`, equivalently `d.del + del.d + del.del = 0`.
    pub fn check(&self) -> Report {
        let mut report = Report::new("perturbation");
        let perturbed = self.base.d().add(&self.del).unwrap();
        let square = compose(&perturbed, &perturbed).unwrap();
        match square.first_difference(&GradedMap::zero(
            self.base.module().clone(),
            self.base.module().clone(),
            -2,
        )) {
            None => report.pass("perturb-sq", "(d + del)^2 = 0"),
            Some(detail) => report.fail("perturb-sq", "(d + del)^2 = 0", detail),
        }
        report
    }

    pub fn perturbed_d(&self) -> GradedMap {
        self.base.d().add(&self.del).unwrap()
    }

    /// The complex `(N, d + del)`; errors when the square-zero contract
    /// fails.
    pub fn perturbed_complex(&self) -> Result<ChainComplex, CoreError> {
        ChainComplex::checked(self.base.module().clone(), self.perturbed_d())
    }
}

/// Check the square-zero contract of a perturbation.
pub fn check_perturbation(p: &Perturbation) -> Report {
    p.check()
}

/// Borrowed small-side data of a structure that has one.
pub struct MSide<'a> {
    pub m: &'a ChainComplex,
    pub pi: &'a GradedMap,
    pub nabla: &'a GradedMap,
}

/// Structures the perturbation lemma applies to. `tau_map` is the
/// pseudocontraction endomorphism (`1 - nabla.pi` when a small side
/// exists).
pub trait PerturbInput {
    fn n(&self) -> &ChainComplex;
    fn homotopy(&self) -> &GradedMap;
    fn tau_map(&self) -> GradedMap;
    fn m_side(&self) -> Option<MSide<'_>>;
    fn validate_input(&self) -> Report;
}

impl PerturbInput for Pseudocontraction {
    fn n(&self) -> &ChainComplex {
        &self.n
    }

    fn homotopy(&self) -> &GradedMap {
        &self.h
    }

    fn tau_map(&self) -> GradedMap {
        self.tau.clone()
    }

    fn m_side(&self) -> Option<MSide<'_>> {
        None
    }

    fn validate_input(&self) -> Report {
        self.validate()
    }
}

impl PerturbInput for WeakContraction {
    fn n(&self) -> &ChainComplex {
        &self.n
    }

    fn homotopy(&self) -> &GradedMap {
        &self.h
    }

    fn tau_map(&self) -> GradedMap {
        GradedMap::identity(self.n.module())
            .sub(&compose(&self.nabla, &self.pi).unwrap())
            .unwrap()
    }

    fn m_side(&self) -> Option<MSide<'_>> {
        Some(MSide {
            m: &self.m,
            pi: &self.pi,
            nabla: &self.nabla,
        })
    }

    fn validate_input(&self) -> Report {
        self.validate()
    }
}

impl PerturbInput for Contraction {
    fn n(&self) -> &ChainComplex {
        &self.weak.n
    }

    fn homotopy(&self) -> &GradedMap {
        &self.weak.h
    }

    fn tau_map(&self) -> GradedMap {
        self.weak.tau_map()
    }

    fn m_side(&self) -> Option<MSide<'_>> {
        self.weak.m_side()
    }

    fn validate_input(&self) -> Report {
        self.validate()
    }
}

/// Operators present only when the input has a small side.
#[derive(Debug, Clone)]
pub struct KitMSide {
    /// `pi.del.alpha.nabla`, the induced perturbation on `M`.
    pub dcal: GradedMap,
    /// `alpha.nabla`.
    pub nabla_del: GradedMap,
    /// `pi.beta`.
    pub pi_del: GradedMap,
}

/// The perturbed operator family. `alpha = (1 + h.del)^-1` and
/// `beta = (1 + del.h)^-1` are exact inverses certified by terminating
/// Neumann series.
#[derive(Debug, Clone)]
pub struct PerturbedKit {
    pub alpha: GradedMap,
    pub beta: GradedMap,
    /// `alpha.t.beta` where `t = 1 - tau`.
    pub t_del: GradedMap,
    /// `alpha.h = h.beta`.
    pub h_del: GradedMap,
    pub m_side: Option<KitMSide>,
}

/// Build the perturbed operator kit. Fails with
/// [`CoreError::NonNilpotent`] when either Neumann series does not
/// terminate within `cap` iterations, in which case invertibility of the
/// degree-zero endomorphisms is not established.
pub fn build_kit(
    input: &dyn PerturbInput,
    p: &Perturbation,
    cap: usize,
) -> Result<PerturbedKit, CoreError> {
    if p.base.module() != input.n().module() || p.base.d() != input.n().d() {
        return Err(CoreError::BadInput(
            "perturbation base does not match the structure's complex".to_string(),
        ));
    }
    let h = input.homotopy();
    let alpha = neumann_inverse(&compose(h, &p.del)?, cap)?;
    let beta = neumann_inverse(&compose(&p.del, h)?, cap)?;

    let t = GradedMap::identity(input.n().module()).sub(&input.tau_map())?;
    let t_del = compose_chain(&[&alpha, &t, &beta])?;
    let h_del = compose(&alpha, h)?;
    let h_beta = compose(h, &beta)?;
    if h_del != h_beta {
        return Err(CoreError::Internal(
            "alpha.h and h.beta disagree".to_string(),
        ));
    }

    let m_side = match input.m_side() {
        None => None,
        Some(side) => {
            let dcal = compose_chain(&[side.pi, &p.del, &alpha, side.nabla])?;
            let dcal_alt = compose_chain(&[side.pi, &beta, &p.del, side.nabla])?;
            if dcal != dcal_alt {
                return Err(CoreError::Internal(
                    "pi.del.alpha.nabla and pi.beta.del.nabla disagree".to_string(),
                ));
            }
            Some(KitMSide {
                dcal,
                nabla_del: compose(&alpha, side.nabla)?,
                pi_del: compose(side.pi, &beta)?,
            })
        }
    };

    Ok(PerturbedKit {
        alpha,
        beta,
        t_del,
        h_del,
        m_side,
    })
}

fn require_valid(input: &dyn PerturbInput, p: &Perturbation, context: &str) -> Result<(), CoreError> {
    let structure = input.validate_input();
    if !structure.passed() {
        return Err(CoreError::ContractViolation {
            context: context.to_string(),
            detail: structure.failure_summary(),
        });
    }
    let perturbation = p.check();
    if !perturbation.passed() {
        return Err(CoreError::ContractViolation {
            context: context.to_string(),
            detail: perturbation.failure_summary(),
        });
    }
    Ok(())
}

/// Perturbed pseudocontraction `(N_del, 1 - t_del, h_del)`.
pub fn perturb_pseudo(
    s: &Pseudocontraction,
    p: &Perturbation,
    cap: usize,
) -> Result<Pseudocontraction, CoreError> {
    require_valid(s, p, "perturb_pseudo")?;
    let kit = build_kit(s, p, cap)?;
    let n_del = p.perturbed_complex()?;
    let tau = GradedMap::identity(n_del.module()).sub(&kit.t_del)?;
    let out = Pseudocontraction::new(n_del, tau, kit.h_del)?;
    let report = out.validate();
    if !report.passed() {
        return Err(CoreError::Internal(report.failure_summary()));
    }
    Ok(out)
}

/// Perturbed weak contraction `(M_dcal <-> N_del, h_del)` together with
/// the induced perturbation `dcal` of the differential on `M`. The
/// intertwining identities `pi_del.(d + del) = (d + dcal).pi_del` and
/// `(d + del).nabla_del = nabla_del.(d + dcal)` are asserted before the
/// result is returned.
pub fn perturb_weak(
    w: &WeakContraction,
    p: &Perturbation,
    cap: usize,
) -> Result<(WeakContraction, GradedMap), CoreError> {
    require_valid(w, p, "perturb_weak")?;
    let kit = build_kit(w, p, cap)?;
    let side = kit.m_side.as_ref().expect("weak contraction has a small side");
    let n_del = p.perturbed_complex()?;
    let d_m_perturbed = w.m.d().add(&side.dcal)?;
    let m_dcal = ChainComplex::checked(w.m.module().clone(), d_m_perturbed.clone())?;

    let perturbed_d = p.perturbed_d();
    let tech1_lhs = compose(&side.pi_del, &perturbed_d)?;
    let tech1_rhs = compose(&d_m_perturbed, &side.pi_del)?;
    if let Some(diff) = tech1_lhs.first_difference(&tech1_rhs) {
        return Err(CoreError::Internal(format!("tech1 fails: {diff}")));
    }
    let tech2_lhs = compose(&perturbed_d, &side.nabla_del)?;
    let tech2_rhs = compose(&side.nabla_del, &d_m_perturbed)?;
    if let Some(diff) = tech2_lhs.first_difference(&tech2_rhs) {
        return Err(CoreError::Internal(format!("tech2 fails: {diff}")));
    }

    let out = WeakContraction::new(
        m_dcal,
        n_del,
        side.pi_del.clone(),
        side.nabla_del.clone(),
        kit.h_del.clone(),
    )?;
    let report = out.validate();
    if !report.passed() {
        return Err(CoreError::Internal(report.failure_summary()));
    }
    Ok((out, side.dcal.clone()))
}

/// Perturbed contraction: the weak-contraction output additionally
/// satisfies `pi_del.nabla_del = 1` and the annihilation properties.
pub fn perturb_contraction(
    c: &Contraction,
    p: &Perturbation,
    cap: usize,
) -> Result<(Contraction, GradedMap), CoreError> {
    let input = c.validate();
    if !input.passed() {
        return Err(CoreError::ContractViolation {
            context: "perturb_contraction".to_string(),
            detail: input.failure_summary(),
        });
    }
    let (weak, dcal) = perturb_weak(&c.weak, p, cap)?;
    let out = Contraction::new(weak);
    let report = out.validate();
    if !report.passed() {
        return Err(CoreError::Internal(report.failure_summary()));
    }
    Ok((out, dcal))
}

fn push_map_check(report: &mut Report, label: &str, what: &str, lhs: &GradedMap, rhs: &GradedMap) {
    match lhs.first_difference(rhs) {
        None => report.pass(label, what),
        Some(detail) => report.fail(label, what, detail),
    }
}

/// Verify, as exact operator identities on `N`, the algebraic identities
/// the kit is built on. Each line carries the identity's label.
pub fn verify_kit_identities(
    kit: &PerturbedKit,
    input: &dyn PerturbInput,
    p: &Perturbation,
) -> Report {
    let mut report = Report::new("kit identities");
    let n = input.n();
    let id = GradedMap::identity(n.module());
    let d = n.d();
    let del = &p.del;
    let h = input.homotopy();
    let tau = input.tau_map();
    let t = id.sub(&tau).unwrap();

    // beta + del.alpha.h = 1
    let lhs = kit
        .beta
        .add(&compose_chain(&[del, &kit.alpha, h]).unwrap())
        .unwrap();
    push_map_check(&mut report, "insp3", "beta + del.alpha.h = 1", &lhs, &id);

    // alpha + h.beta.del = 1
    let lhs = kit
        .alpha
        .add(&compose_chain(&[h, &kit.beta, del]).unwrap())
        .unwrap();
    push_map_check(&mut report, "insp4", "alpha + h.beta.del = 1", &lhs, &id);

    // d.alpha - alpha.d = -alpha.(tau.del + h.del.del).alpha
    let lhs = compose(d, &kit.alpha)
        .unwrap()
        .sub(&compose(&kit.alpha, d).unwrap())
        .unwrap();
    let inner = compose(&tau, del)
        .unwrap()
        .add(&compose_chain(&[h, del, del]).unwrap())
        .unwrap();
    let rhs = compose_chain(&[&kit.alpha, &inner, &kit.alpha])
        .unwrap()
        .neg();
    push_map_check(
        &mut report,
        "dif1",
        "d.alpha - alpha.d = -alpha.(tau.del + h.del^2).alpha",
        &lhs,
        &rhs,
    );

    // d.beta - beta.d = beta.(del.tau + del.del.h).beta
    let lhs = compose(d, &kit.beta)
        .unwrap()
        .sub(&compose(&kit.beta, d).unwrap())
        .unwrap();
    let inner = compose(del, &tau)
        .unwrap()
        .add(&compose_chain(&[del, del, h]).unwrap())
        .unwrap();
    let rhs = compose_chain(&[&kit.beta, &inner, &kit.beta]).unwrap();
    push_map_check(
        &mut report,
        "dif2",
        "d.beta - beta.d = beta.(del.tau + del^2.h).beta",
        &lhs,
        &rhs,
    );

    // del.alpha = beta.del
    push_map_check(
        &mut report,
        "comm",
        "del.alpha = beta.del",
        &compose(del, &kit.alpha).unwrap(),
        &compose(&kit.beta, del).unwrap(),
    );

    // alpha.h = h.beta
    push_map_check(
        &mut report,
        "comm2",
        "alpha.h = h.beta",
        &compose(&kit.alpha, h).unwrap(),
        &compose(h, &kit.beta).unwrap(),
    );

    // t_del is alpha.t.beta by construction; restate it and the kit's
    // structural consequences against the perturbed differential
    let perturbed_d = p.perturbed_d();
    push_map_check(
        &mut report,
        "hdel-sq",
        "h_del.h_del = 0",
        &compose(&kit.h_del, &kit.h_del).unwrap(),
        &GradedMap::zero(n.module().clone(), n.module().clone(), 2),
    );
    push_map_check(
        &mut report,
        "tdel-chain",
        "(d + del).t_del = t_del.(d + del)",
        &compose(&perturbed_d, &kit.t_del).unwrap(),
        &compose(&kit.t_del, &perturbed_d).unwrap(),
    );
    let lhs = compose(&perturbed_d, &kit.h_del)
        .unwrap()
        .add(&compose(&kit.h_del, &perturbed_d).unwrap())
        .unwrap();
    let rhs = id.sub(&kit.t_del).unwrap();
    push_map_check(
        &mut report,
        "dh-perturbed",
        "(d + del).h_del + h_del.(d + del) = 1 - t_del",
        &lhs,
        &rhs,
    );

    if let (Some(kit_side), Some(side)) = (&kit.m_side, input.m_side()) {
        push_map_check(
            &mut report,
            "plainly",
            "alpha.t.beta = nabla_del.pi_del",
            &compose_chain(&[&kit.alpha, &t, &kit.beta]).unwrap(),
            &compose(&kit_side.nabla_del, &kit_side.pi_del).unwrap(),
        );
        let d_m_perturbed = side.m.d().add(&kit_side.dcal).unwrap();
        push_map_check(
            &mut report,
            "tech1",
            "pi_del.(d + del) = (d + dcal).pi_del",
            &compose(&kit_side.pi_del, &perturbed_d).unwrap(),
            &compose(&d_m_perturbed, &kit_side.pi_del).unwrap(),
        );
        push_map_check(
            &mut report,
            "tech2",
            "(d + del).nabla_del = nabla_del.(d + dcal)",
            &compose(&perturbed_d, &kit_side.nabla_del).unwrap(),
            &compose(&kit_side.nabla_del, &d_m_perturbed).unwrap(),
        );
    }

    report
}

fn series_left(op: &GradedMap, seed: &GradedMap, cap: usize) -> Result<GradedMap, CoreError> {
    let mut sum = seed.clone();
    let mut term = compose(op, seed)?;
    let mut n = 1usize;
    while !term.is_zero() {
        if n > cap {
            return Err(CoreError::NonNilpotent { iterations: cap });
        }
        sum = sum.add(&term)?;
        term = compose(op, &term)?;
        n += 1;
    }
    Ok(sum)
}

fn series_right(seed: &GradedMap, op: &GradedMap, cap: usize) -> Result<GradedMap, CoreError> {
    let mut sum = seed.clone();
    let mut term = compose(seed, op)?;
    let mut n = 1usize;
    while !term.is_zero() {
        if n > cap {
            return Err(CoreError::NonNilpotent { iterations: cap });
        }
        sum = sum.add(&term)?;
        term = compose(&term, op)?;
        n += 1;
    }
    Ok(sum)
}

/// Recompute the perturbed operators as explicit truncated sums and
/// assert exact agreement with the inverse-based kit values.
pub fn series_formulas_check(
    kit: &PerturbedKit,
    input: &dyn PerturbInput,
    p: &Perturbation,
    cap: usize,
) -> Result<Report, CoreError> {
    let mut report = Report::new("series formulas");
    let h = input.homotopy();
    let del = &p.del;
    let minus_h_del = compose(h, del)?.neg();
    let minus_del_h = compose(del, h)?.neg();

    // h_del = sum (-h.del)^n h
    let h_series = series_left(&minus_h_del, h, cap)?;
    push_map_check(
        &mut report,
        "series-h",
        "h_del = sum (-h.del)^n.h",
        &h_series,
        &kit.h_del,
    );

    if let (Some(kit_side), Some(side)) = (&kit.m_side, input.m_side()) {
        // nabla_del = sum (-h.del)^n nabla
        let nabla_series = series_left(&minus_h_del, side.nabla, cap)?;
        push_map_check(
            &mut report,
            "series-nabla",
            "nabla_del = sum (-h.del)^n.nabla",
            &nabla_series,
            &kit_side.nabla_del,
        );

        // pi_del = sum pi (-del.h)^n
        let pi_series = series_right(side.pi, &minus_del_h, cap)?;
        push_map_check(
            &mut report,
            "series-pi",
            "pi_del = sum pi.(-del.h)^n",
            &pi_series,
            &kit_side.pi_del,
        );

        // dcal = sum pi.del.(-h.del)^n.nabla, and the mirrored expression
        let dcal_series = compose_chain(&[side.pi, del, &nabla_series])?;
        push_map_check(
            &mut report,
            "series-dcal",
            "dcal = sum pi.del.(-h.del)^n.nabla",
            &dcal_series,
            &kit_side.dcal,
        );
        let dcal_mirror = compose_chain(&[&pi_series, del, side.nabla])?;
        push_map_check(
            &mut report,
            "series-dcal-alt",
            "dcal = sum pi.(-del.h)^n.del.nabla",
            &dcal_mirror,
            &kit_side.dcal,
        );
    }

    Ok(report)
}

/// The content of the perturbed pseudocontraction: the values of
/// `nabla_del` land in `t_del(N)` and corestriction gives an isomorphism
/// of complexes `M_dcal -> (t_del N, (d + del)|)`.
pub fn remark_content_check(
    kit: &PerturbedKit,
    input: &dyn PerturbInput,
    p: &Perturbation,
) -> Result<Report, CoreError> {
    let mut report = Report::new("perturbed image content");
    let side = kit
        .m_side
        .as_ref()
        .ok_or_else(|| CoreError::BadInput("check requires a small side".to_string()))?;
    let input_side = input
        .m_side()
        .ok_or_else(|| CoreError::BadInput("check requires a small side".to_string()))?;
    let n_del = p.perturbed_complex()?;
    let sub = image_subcomplex(&n_del, &kit.t_del)?;

    match sub.corestrict(&side.nabla_del) {
        Err(_) => {
            report.fail(
                "tech3-image",
                "image of nabla_del lies in t_del(N)",
                "a value of nabla_del falls outside the image",
            );
        }
        Ok(cores) => {
            report.pass("tech3-image", "image of nabla_del lies in t_del(N)");
            let m_module = input_side.m.module();
            let sub_module = sub.complex.module();
            let mut iso = true;
            let mut detail = String::new();
            for degree in m_module.support().chain(sub_module.support()) {
                let dim_m = m_module.dim(degree);
                let dim_sub = sub_module.dim(degree);
                let mut ech = crate::linalg::Echelon::new();
                for col in 0..dim_m {
                    ech.insert(cores.column(degree, col));
                }
                if dim_m != dim_sub || ech.rank() != dim_m {
                    iso = false;
                    detail = format!(
                        "degree {degree}: dim M = {dim_m}, dim t_del(N) = {dim_sub}, rank = {}",
                        ech.rank()
                    );
                    break;
                }
            }
            report.push(
                "tech3-iso",
                "nabla_del: M_dcal -> t_del(N) is bijective",
                iso,
                (!iso).then_some(detail),
            );

            let d_m_perturbed = input_side.m.d().add(&side.dcal)?;
            push_map_check(
                &mut report,
                "tech3-chain",
                "d_sub.nabla_del = nabla_del.(d + dcal)",
                &compose(sub.complex.d(), &cores)?,
                &compose(&cores, &d_m_perturbed)?,
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::default_cap;
    use crate::graded::GradedModule;
    use crate::scalar::Scalar;
    use crate::structures::weak_to_pseudo;

    fn standard_contraction() -> Contraction {
        let n_module = GradedModule::build([(0, vec!["a", "c"]), (1, vec!["b"])]).unwrap();
        let mut d = GradedMap::zero(n_module.clone(), n_module.clone(), -1);
        d.add_term(1, 1, 0, Scalar::one()).unwrap();
        let n = ChainComplex::checked(n_module.clone(), d).unwrap();
        let m_module = GradedModule::build([(0, vec!["a"])]).unwrap();
        let m = ChainComplex::zero_complex(m_module.clone());
        let mut pi = GradedMap::zero(n_module.clone(), m_module.clone(), 0);
        pi.add_term(0, 0, 0, Scalar::one()).unwrap();
        let mut nabla = GradedMap::zero(m_module.clone(), n_module.clone(), 0);
        nabla.add_term(0, 0, 0, Scalar::one()).unwrap();
        let mut h = GradedMap::zero(n_module.clone(), n_module.clone(), 1);
        h.add_term(0, 0, 1, Scalar::one()).unwrap();
        Contraction::new(WeakContraction::new(m, n, pi, nabla, h).unwrap())
    }

    /// del(b) = 2a on the standard example.
    fn standard_perturbation(c: &Contraction) -> Perturbation {
        let module = c.n().module().clone();
        let mut del = GradedMap::zero(module.clone(), module, -1);
        del.add_term(1, 0, 0, Scalar::from_int(2)).unwrap();
        Perturbation::new(c.n().clone(), del).unwrap()
    }

    #[test]
    fn zero_perturbation_checks_out() {
        let c = standard_contraction();
        let p = Perturbation::zero(c.n().clone());
        assert!(p.check().passed());
    }

    #[test]
    fn standard_perturbation_checks_out() {
        let c = standard_contraction();
        let p = standard_perturbation(&c);
        assert!(p.check().passed());
    }

    #[test]
    fn square_nonzero_perturbation_fails() {
        // d = 0, del(e2) = e1, del(e1) = e0: del^2(e2) = e0 != 0
        let module =
            GradedModule::build([(0, vec!["e0"]), (1, vec!["e1"]), (2, vec!["e2"])]).unwrap();
        let base = ChainComplex::zero_complex(module.clone());
        let mut del = GradedMap::zero(module.clone(), module, -1);
        del.add_term(2, 0, 0, Scalar::one()).unwrap();
        del.add_term(1, 0, 0, Scalar::one()).unwrap();
        let p = Perturbation::new(base, del).unwrap();
        assert!(!p.check().passed());
    }

    #[test]
    fn zero_perturbation_kit_is_the_identity_kit() {
        let c = standard_contraction();
        let p = Perturbation::zero(c.n().clone());
        let kit = build_kit(&c, &p, default_cap(c.n().module())).unwrap();
        let id = GradedMap::identity(c.n().module());
        assert_eq!(kit.alpha, id);
        assert_eq!(kit.beta, id);
        assert_eq!(kit.h_del, *c.h());
        let side = kit.m_side.as_ref().unwrap();
        assert!(side.dcal.is_zero());
        assert_eq!(side.nabla_del, *c.nabla());
        assert_eq!(side.pi_del, *c.pi());
    }

    #[test]
    fn standard_kit_matches_hand_computation() {
        let c = standard_contraction();
        let p = standard_perturbation(&c);
        let kit = build_kit(&c, &p, default_cap(c.n().module())).unwrap();
        let id = GradedMap::identity(c.n().module());
        assert_eq!(kit.alpha, id, "h.del = 0 so alpha = 1");
        // beta = 1 - del.h: beta(c) = c - 2a
        assert_eq!(kit.beta.entry(0, 1, 1), Scalar::one());
        assert_eq!(kit.beta.entry(0, 0, 1), Scalar::from_int(-2));
        assert_eq!(kit.h_del, *c.h());
        let side = kit.m_side.as_ref().unwrap();
        assert!(side.dcal.is_zero());
        assert_eq!(side.nabla_del, *c.nabla());
        // pi_del(c) = -2a
        assert_eq!(side.pi_del.entry(0, 0, 1), Scalar::from_int(-2));
        // t_del(c) = -2a, t_del(a) = a
        assert_eq!(kit.t_del.entry(0, 0, 1), Scalar::from_int(-2));
        assert_eq!(kit.t_del.entry(0, 0, 0), Scalar::one());
        assert!(kit.t_del.entry(0, 1, 1).is_zero());
    }

    #[test]
    fn cone_perturbation_is_rejected_as_non_nilpotent() {
        // d(e1) = e0, h(e0) = e1, del(e1) = e0: h.del(e1) = e1
        let module = GradedModule::build([(0, vec!["e0"]), (1, vec!["e1"])]).unwrap();
        let mut d = GradedMap::zero(module.clone(), module.clone(), -1);
        d.add_term(1, 0, 0, Scalar::one()).unwrap();
        let n = ChainComplex::checked(module.clone(), d).unwrap();
        let mut h = GradedMap::zero(module.clone(), module.clone(), 1);
        h.add_term(0, 0, 0, Scalar::one()).unwrap();
        let tau = GradedMap::identity(&module);
        let cone = Pseudocontraction::new(n.clone(), tau, h).unwrap();
        let mut del = GradedMap::zero(module.clone(), module, -1);
        del.add_term(1, 0, 0, Scalar::one()).unwrap();
        let p = Perturbation::new(n, del).unwrap();
        assert!(p.check().passed(), "lambda = 1 cone perturbation is square-zero");
        match build_kit(&cone, &p, 50) {
            Err(CoreError::NonNilpotent { iterations }) => assert_eq!(iterations, 50),
            other => panic!("expected non-nilpotence, got {other:?}"),
        }
    }

    #[test]
    fn perturb_pseudo_zero_is_identity() {
        let c = standard_contraction();
        let s = weak_to_pseudo(&c.weak).unwrap();
        let p = Perturbation::zero(c.n().clone());
        let out = perturb_pseudo(&s, &p, default_cap(c.n().module())).unwrap();
        assert_eq!(out.tau, s.tau);
        assert_eq!(out.h, s.h);
        assert_eq!(out.n.d(), s.n.d());
    }

    #[test]
    fn perturb_pseudo_standard_example() {
        let c = standard_contraction();
        let s = weak_to_pseudo(&c.weak).unwrap();
        let p = standard_perturbation(&c);
        let out = perturb_pseudo(&s, &p, default_cap(c.n().module())).unwrap();
        // tau'(c) = c + 2a
        assert_eq!(out.tau.entry(0, 1, 1), Scalar::one());
        assert_eq!(out.tau.entry(0, 0, 1), Scalar::from_int(2));
        assert!(out.validate().passed());
    }

    #[test]
    fn perturb_weak_standard_example() {
        let c = standard_contraction();
        let p = standard_perturbation(&c);
        let (weak, dcal) = perturb_weak(&c.weak, &p, default_cap(c.n().module())).unwrap();
        assert!(dcal.is_zero());
        assert!(weak.validate().passed());
        // (d + del).h_del + h_del.(d + del) on c: c + 2a
        let perturbed_d = p.perturbed_d();
        let dh = compose(&perturbed_d, &weak.h)
            .unwrap()
            .add(&compose(&weak.h, &perturbed_d).unwrap())
            .unwrap();
        assert_eq!(dh.entry(0, 1, 1), Scalar::one());
        assert_eq!(dh.entry(0, 0, 1), Scalar::from_int(2));
    }

    #[test]
    fn perturb_contraction_standard_example() {
        let c = standard_contraction();
        let p = standard_perturbation(&c);
        let (out, _) = perturb_contraction(&c, &p, default_cap(c.n().module())).unwrap();
        assert!(out.validate().passed());
        // pi_del.nabla_del(a) = a; pi_del.h_del(c) = 0; h_del.nabla_del(a) = 0
        let pn = compose(out.pi(), out.nabla()).unwrap();
        assert_eq!(pn, GradedMap::identity(out.m().module()));
        assert!(compose(out.pi(), out.h()).unwrap().is_zero());
        assert!(compose(out.h(), out.nabla()).unwrap().is_zero());
    }

    #[test]
    fn perturb_contraction_zero_is_identity() {
        let c = standard_contraction();
        let p = Perturbation::zero(c.n().clone());
        let (out, dcal) = perturb_contraction(&c, &p, default_cap(c.n().module())).unwrap();
        assert!(dcal.is_zero());
        assert_eq!(out.pi(), c.pi());
        assert_eq!(out.nabla(), c.nabla());
        assert_eq!(out.h(), c.h());
        assert_eq!(out.n().d(), c.n().d());
    }

    #[test]
    fn kit_identities_pass_on_the_standard_example() {
        let c = standard_contraction();
        for p in [Perturbation::zero(c.n().clone()), standard_perturbation(&c)] {
            let kit = build_kit(&c, &p, default_cap(c.n().module())).unwrap();
            let report = verify_kit_identities(&kit, &c, &p);
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn series_formulas_match_the_inverses() {
        let c = standard_contraction();
        for p in [Perturbation::zero(c.n().clone()), standard_perturbation(&c)] {
            let kit = build_kit(&c, &p, default_cap(c.n().module())).unwrap();
            let report =
                series_formulas_check(&kit, &c, &p, default_cap(c.n().module())).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn remark_content_holds_on_the_standard_example() {
        let c = standard_contraction();
        let p = standard_perturbation(&c);
        let kit = build_kit(&c, &p, default_cap(c.n().module())).unwrap();
        let report = remark_content_check(&kit, &c, &p).unwrap();
        assert!(report.passed(), "{report}");
    }
}
