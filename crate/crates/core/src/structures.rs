//! The four contraction-flavored structures on chain complexes, their
//! exact validators, and the equivalences among them.
//!
//! A pseudocontraction `(N, tau, h)` satisfies `dh + hd = tau` and
//! `h.h = 0` with no idempotence or annihilation requirements. A weak
//! contraction adds a small side `M` with `dh + hd = 1 - nabla.pi`; a
//! contraction further imposes `pi.nabla = 1` and the side conditions
//! `pi.h = 0`, `h.nabla = 0`. Hodge data packages the equivalent
//! idempotent form `(t, h)`.

use crate::complex::{image_subcomplex, ChainComplex};
use crate::error::CoreError;
use crate::graded::{compose, GradedMap, SparseVec};
use crate::linalg::{kernel_of_columns, Echelon};
use crate::report::Report;

fn cmp(f: &GradedMap, g: &GradedMap) -> GradedMap {
    compose(f, g).expect("shapes checked at construction")
}

/// Push an equality check `lhs = rhs` with the first differing entry as
/// failure detail.
fn check_eq(report: &mut Report, label: &str, what: &str, lhs: &GradedMap, rhs: &GradedMap) {
    match lhs.first_difference(rhs) {
        None => report.pass(label, what),
        Some(detail) => report.fail(label, what, detail),
    }
}

fn check_zero(report: &mut Report, label: &str, what: &str, map: &GradedMap) {
    let zero = GradedMap::zero(map.source().clone(), map.target().clone(), map.degree());
    check_eq(report, label, what, map, &zero);
}

/// rank(f restricted to each degree) must equal `dim` of the small module.
fn check_full_rank(report: &mut Report, label: &str, what: &str, f: &GradedMap, small_is_source: bool) {
    let small = if small_is_source { f.source() } else { f.target() };
    for degree in small.support() {
        let src_degree = degree; // degree-zero maps only
        let mut ech = Echelon::new();
        for col in 0..f.source().dim(src_degree) {
            ech.insert(f.column(src_degree, col));
        }
        let expect = small.dim(degree);
        if ech.rank() != expect {
            report.fail(
                label,
                what,
                format!("degree {degree}: rank {} != {expect}", ech.rank()),
            );
            return;
        }
    }
    report.pass(label, what);
}

/// `(N, tau, h)` with `dh + hd = tau`, `h.h = 0`.
#[derive(Debug, Clone)]
pub struct Pseudocontraction {
    pub n: ChainComplex,
    pub tau: GradedMap,
    pub h: GradedMap,
}

impl Pseudocontraction {
    pub fn new(n: ChainComplex, tau: GradedMap, h: GradedMap) -> Result<Self, CoreError> {
        for (map, name, degree) in [(&tau, "tau", 0), (&h, "h", 1)] {
            if map.degree() != degree || map.source() != n.module() || map.target() != n.module() {
                return Err(CoreError::BadInput(format!(
                    "{name} must be a degree-{degree} endomorphism of N"
                )));
            }
        }
        Ok(Pseudocontraction { n, tau, h })
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new("pseudocontraction");
        report.merge(self.n.validate());
        let d = self.n.d();
        let dh_hd = cmp(d, &self.h).add(&cmp(&self.h, d)).unwrap();
        check_eq(&mut report, "pc1", "d.h + h.d = tau", &dh_hd, &self.tau);
        check_zero(&mut report, "pc2", "h.h = 0", &cmp(&self.h, &self.h));
        check_eq(
            &mut report,
            "tau-chain",
            "d.tau = tau.d",
            &cmp(d, &self.tau),
            &cmp(&self.tau, d),
        );
        report
    }
}

/// `(M <-> N, h)` with chain maps `pi` (onto) and `nabla` (into),
/// `dh + hd = 1 - nabla.pi` and `h.h = 0`.
#[derive(Debug, Clone)]
pub struct WeakContraction {
    pub m: ChainComplex,
    pub n: ChainComplex,
    pub pi: GradedMap,
    pub nabla: GradedMap,
    pub h: GradedMap,
}

impl WeakContraction {
    pub fn new(
        m: ChainComplex,
        n: ChainComplex,
        pi: GradedMap,
        nabla: GradedMap,
        h: GradedMap,
    ) -> Result<Self, CoreError> {
        if pi.degree() != 0 || pi.source() != n.module() || pi.target() != m.module() {
            return Err(CoreError::BadInput(
                "pi must be a degree-0 map N -> M".to_string(),
            ));
        }
        if nabla.degree() != 0 || nabla.source() != m.module() || nabla.target() != n.module() {
            return Err(CoreError::BadInput(
                "nabla must be a degree-0 map M -> N".to_string(),
            ));
        }
        if h.degree() != 1 || h.source() != n.module() || h.target() != n.module() {
            return Err(CoreError::BadInput(
                "h must be a degree-1 endomorphism of N".to_string(),
            ));
        }
        Ok(WeakContraction { m, n, pi, nabla, h })
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new("weak contraction");
        let mut n_report = self.n.validate();
        for line in &mut n_report.lines {
            line.label = format!("{}-N", line.label);
        }
        report.merge(n_report);
        let mut m_report = self.m.validate();
        for line in &mut m_report.lines {
            line.label = format!("{}-M", line.label);
        }
        report.merge(m_report);

        let d_n = self.n.d();
        let d_m = self.m.d();
        check_eq(
            &mut report,
            "pi-chain",
            "d.pi = pi.d",
            &cmp(d_m, &self.pi),
            &cmp(&self.pi, d_n),
        );
        check_eq(
            &mut report,
            "nabla-chain",
            "d.nabla = nabla.d",
            &cmp(d_n, &self.nabla),
            &cmp(&self.nabla, d_m),
        );
        check_full_rank(&mut report, "pi-onto", "pi is surjective", &self.pi, false);
        check_full_rank(
            &mut report,
            "nabla-into",
            "nabla is injective",
            &self.nabla,
            true,
        );
        let dh_hd = cmp(d_n, &self.h).add(&cmp(&self.h, d_n)).unwrap();
        let rhs = GradedMap::identity(self.n.module())
            .sub(&cmp(&self.nabla, &self.pi))
            .unwrap();
        check_eq(&mut report, "co1", "d.h + h.d = 1 - nabla.pi", &dh_hd, &rhs);
        check_zero(&mut report, "side1", "h.h = 0", &cmp(&self.h, &self.h));
        report
    }
}

/// Weak contraction that additionally satisfies `pi.nabla = 1` and the
/// annihilation properties `pi.h = 0`, `h.nabla = 0`.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub weak: WeakContraction,
}

impl Contraction {
    pub fn new(weak: WeakContraction) -> Self {
        Contraction { weak }
    }

    pub fn m(&self) -> &ChainComplex {
        &self.weak.m
    }

    pub fn n(&self) -> &ChainComplex {
        &self.weak.n
    }

    pub fn pi(&self) -> &GradedMap {
        &self.weak.pi
    }

    pub fn nabla(&self) -> &GradedMap {
        &self.weak.nabla
    }

    pub fn h(&self) -> &GradedMap {
        &self.weak.h
    }

    pub fn validate(&self) -> Report {
        let mut report = self.weak.validate();
        report.context = "contraction".to_string();
        check_eq(
            &mut report,
            "co0",
            "pi.nabla = 1",
            &cmp(&self.weak.pi, &self.weak.nabla),
            &GradedMap::identity(self.weak.m.module()),
        );
        check_zero(
            &mut report,
            "side-ph",
            "pi.h = 0",
            &cmp(&self.weak.pi, &self.weak.h),
        );
        check_zero(
            &mut report,
            "side-hn",
            "h.nabla = 0",
            &cmp(&self.weak.h, &self.weak.nabla),
        );
        report
    }
}

/// Idempotent form `(t, h)`: `h.h = 0`, `dh + hd = 1 - t`, `dt = td`,
/// `t.t = t`, `t.h = h.t = 0`.
#[derive(Debug, Clone)]
pub struct HodgeData {
    pub x: ChainComplex,
    pub t: GradedMap,
    pub h: GradedMap,
}

impl HodgeData {
    pub fn new(x: ChainComplex, t: GradedMap, h: GradedMap) -> Result<Self, CoreError> {
        for (map, name, degree) in [(&t, "t", 0), (&h, "h", 1)] {
            if map.degree() != degree || map.source() != x.module() || map.target() != x.module() {
                return Err(CoreError::BadInput(format!(
                    "{name} must be a degree-{degree} endomorphism"
                )));
            }
        }
        Ok(HodgeData { x, t, h })
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new("hodge data");
        report.merge(self.x.validate());
        let d = self.x.d();
        check_zero(&mut report, "h2", "h.h = 0", &cmp(&self.h, &self.h));
        let dh_hd = cmp(d, &self.h).add(&cmp(&self.h, d)).unwrap();
        let rhs = GradedMap::identity(self.x.module()).sub(&self.t).unwrap();
        check_eq(&mut report, "dh", "d.h + h.d = 1 - t", &dh_hd, &rhs);
        check_eq(
            &mut report,
            "dt",
            "d.t = t.d",
            &cmp(d, &self.t),
            &cmp(&self.t, d),
        );
        check_eq(
            &mut report,
            "ah4",
            "t.t = t",
            &cmp(&self.t, &self.t),
            &self.t,
        );
        check_zero(&mut report, "ah5-th", "t.h = 0", &cmp(&self.t, &self.h));
        check_zero(&mut report, "ah5-ht", "h.t = 0", &cmp(&self.h, &self.t));
        report
    }
}

/// Tagged union over the four structure kinds, used for I/O and runtime
/// dispatch.
#[derive(Debug, Clone)]
pub enum Structure {
    Pseudo(Pseudocontraction),
    Weak(WeakContraction),
    Full(Contraction),
    Hodge(HodgeData),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Pseudo(_) => "pseudocontraction",
            Structure::Weak(_) => "weak",
            Structure::Full(_) => "contraction",
            Structure::Hodge(_) => "hodge",
        }
    }

    pub fn validate(&self) -> Report {
        match self {
            Structure::Pseudo(p) => p.validate(),
            Structure::Weak(w) => w.validate(),
            Structure::Full(c) => c.validate(),
            Structure::Hodge(h) => h.validate(),
        }
    }
}

/// Validate whichever structure kind is claimed.
pub fn validate_structure(s: &Structure) -> Report {
    s.validate()
}

/// A weak contraction determines the pseudocontraction
/// `(N, 1 - nabla.pi, h)`.
pub fn weak_to_pseudo(w: &WeakContraction) -> Result<Pseudocontraction, CoreError> {
    let input = w.validate();
    if !input.passed() {
        return Err(CoreError::ContractViolation {
            context: "weak_to_pseudo".to_string(),
            detail: input.failure_summary(),
        });
    }
    let tau = GradedMap::identity(w.n.module())
        .sub(&cmp(&w.nabla, &w.pi))
        .unwrap();
    let out = Pseudocontraction::new(w.n.clone(), tau, w.h.clone())?;
    let report = out.validate();
    if !report.passed() {
        return Err(CoreError::Internal(report.failure_summary()));
    }
    Ok(out)
}

/// A pseudocontraction determines a weak contraction onto the image of
/// `t = 1 - tau`, with `pi` the corestriction of `t` and `nabla` the
/// inclusion. The image basis is the deterministic pivot-column basis.
pub fn pseudo_to_weak(p: &Pseudocontraction) -> Result<WeakContraction, CoreError> {
    let input = p.validate();
    if !input.passed() {
        return Err(CoreError::ContractViolation {
            context: "pseudo_to_weak".to_string(),
            detail: input.failure_summary(),
        });
    }
    let t = GradedMap::identity(p.n.module()).sub(&p.tau).unwrap();
    let sub = image_subcomplex(&p.n, &t)?;
    let pi = sub.corestrict(&t)?;
    let out = WeakContraction::new(
        sub.complex.clone(),
        p.n.clone(),
        pi,
        sub.inclusion.clone(),
        p.h.clone(),
    )?;
    let report = out.validate();
    if !report.passed() {
        return Err(CoreError::Internal(report.failure_summary()));
    }
    Ok(out)
}

/// The three equivalent ways a pseudocontraction can be an honest
/// contraction, evaluated independently.
#[derive(Debug, Clone)]
pub struct Classification {
    /// The common verdict of the three conditions.
    pub all_hold: bool,
    /// (i) full Hodge-data axioms for `(1 - tau, h)`.
    pub hodge_axioms: Report,
    /// (ii) idempotence and annihilation only.
    pub idempotent_annihilation: Report,
    /// (iii) side conditions `t.h = 0` and `h.j = 0` for the inclusion
    /// `j` of the image of `t`.
    pub side_conditions: Report,
}

/// Evaluate conditions (i)-(iii) and insist that their verdicts agree;
/// disagreement would contradict their proven equivalence and therefore
/// raises an internal error rather than a report line.
pub fn compar_classify(p: &Pseudocontraction) -> Result<Classification, CoreError> {
    let input = p.validate();
    if !input.passed() {
        return Err(CoreError::ContractViolation {
            context: "compar_classify".to_string(),
            detail: input.failure_summary(),
        });
    }
    let t = GradedMap::identity(p.n.module()).sub(&p.tau).unwrap();

    let hodge = HodgeData::new(p.n.clone(), t.clone(), p.h.clone())?;
    let hodge_axioms = hodge.validate();

    let mut idem = Report::new("idempotence and annihilation");
    check_eq(&mut idem, "ah4", "t.t = t", &cmp(&t, &t), &t);
    check_zero(&mut idem, "ah5-th", "t.h = 0", &cmp(&t, &p.h));
    check_zero(&mut idem, "ah5-ht", "h.t = 0", &cmp(&p.h, &t));

    let mut side = Report::new("side conditions against the image of t");
    check_zero(&mut side, "side-th", "t.h = 0", &cmp(&t, &p.h));
    let sub = image_subcomplex(&p.n, &t)?;
    check_zero(
        &mut side,
        "side-hj",
        "h.j = 0 for the inclusion j of tN",
        &cmp(&p.h, &sub.inclusion),
    );

    let verdicts = [
        hodge_axioms.passed(),
        idem.passed(),
        side.passed(),
    ];
    if verdicts.iter().any(|&v| v != verdicts[0]) {
        return Err(CoreError::Internal(format!(
            "equivalent classification conditions disagree (hodge {}, idempotence {}, side {})",
            verdicts[0], verdicts[1], verdicts[2]
        )));
    }
    Ok(Classification {
        all_hold: verdicts[0],
        hodge_axioms,
        idempotent_annihilation: idem,
        side_conditions: side,
    })
}

/// Three-way splitting check for a contraction onto its homology: in each
/// degree `j`, `N_j` must decompose as `dN_{j+1} + H_j + h(dN_j)` with the
/// three summands independent, where `H = ker h  x  ker d`.
pub fn hodge_decomposition_check(c: &Contraction) -> Result<Report, CoreError> {
    if !c.m().d().is_zero() {
        return Err(CoreError::BadInput(
            "hodge decomposition check expects a contraction onto a complex with zero differential"
                .to_string(),
        ));
    }
    let n = c.n();
    let module = n.module();
    let d = n.d();
    let h = c.h();
    let mut report = Report::new("hodge decomposition");
    for degree in module.support() {
        let dim = module.dim(degree);

        // boundaries from above
        let mut boundary_columns = Vec::new();
        for col in 0..module.dim(degree + 1) {
            let v = d.column(degree + 1, col);
            if !v.is_empty() {
                boundary_columns.push(v);
            }
        }

        // harmonic part: kernel of d stacked with h
        let offset = module.dim(degree - 1);
        let mut stacked = Vec::new();
        for col in 0..dim {
            let mut v = SparseVec::new();
            for (row, value) in d.column(degree, col) {
                v.insert(row, value);
            }
            for (row, value) in h.column(degree, col) {
                v.insert(offset + row, value);
            }
            stacked.push(v);
        }
        let harmonic = kernel_of_columns(&stacked);

        // h applied to boundaries from this degree
        let hd = cmp(h, d);
        let mut hd_columns = Vec::new();
        for col in 0..dim {
            let v = hd.column(degree, col);
            if !v.is_empty() {
                hd_columns.push(v);
            }
        }

        let b_dim = crate::linalg::rank_of_columns(boundary_columns.iter());
        let h_dim = harmonic.len();
        let hd_dim = crate::linalg::rank_of_columns(hd_columns.iter());

        let mut union = Echelon::new();
        let mut direct = true;
        for v in boundary_columns
            .iter()
            .chain(harmonic.iter())
            .chain(hd_columns.iter())
        {
            if union.insert(v.clone()).is_none() {
                direct = false;
            }
        }
        let total = b_dim + h_dim + hd_dim;
        let pass = total == dim && direct && union.rank() == dim;
        report.push(
            "hodge",
            format!("degree {degree}: N = dN + H + h(dN)"),
            pass,
            Some(format!(
                "dim dN = {b_dim}, dim H = {h_dim}, dim h(dN) = {hd_dim}, dim N = {dim}, span rank = {}",
                union.rank()
            )),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedModule;
    use crate::scalar::Scalar;

    pub(crate) fn standard_contraction() -> Contraction {
        let n_module = GradedModule::build([(0, vec!["a", "c"]), (1, vec!["b"])]).unwrap();
        let mut d = GradedMap::zero(n_module.clone(), n_module.clone(), -1);
        d.add_term(1, 1, 0, Scalar::one()).unwrap(); // d(b) = c
        let n = ChainComplex::checked(n_module.clone(), d).unwrap();

        let m_module = GradedModule::build([(0, vec!["a"])]).unwrap();
        let m = ChainComplex::zero_complex(m_module.clone());

        let mut pi = GradedMap::zero(n_module.clone(), m_module.clone(), 0);
        pi.add_term(0, 0, 0, Scalar::one()).unwrap(); // pi(a) = a
        let mut nabla = GradedMap::zero(m_module.clone(), n_module.clone(), 0);
        nabla.add_term(0, 0, 0, Scalar::one()).unwrap(); // nabla(a) = a
        let mut h = GradedMap::zero(n_module.clone(), n_module.clone(), 1);
        h.add_term(0, 0, 1, Scalar::one()).unwrap(); // h(c) = b

        Contraction::new(WeakContraction::new(m, n, pi, nabla, h).unwrap())
    }

    pub(crate) fn cone_pseudocontraction() -> Pseudocontraction {
        let module = GradedModule::build([(0, vec!["e0"]), (1, vec!["e1"])]).unwrap();
        let mut d = GradedMap::zero(module.clone(), module.clone(), -1);
        d.add_term(1, 0, 0, Scalar::one()).unwrap();
        let n = ChainComplex::checked(module.clone(), d).unwrap();
        let mut h = GradedMap::zero(module.clone(), module.clone(), 1);
        h.add_term(0, 0, 0, Scalar::one()).unwrap();
        let tau = GradedMap::identity(&module);
        Pseudocontraction::new(n, tau, h).unwrap()
    }

    /// d(e1) = 2 e0, h(e0) = e1, tau = 2.
    pub(crate) fn doubled_pseudocontraction() -> Pseudocontraction {
        let module = GradedModule::build([(0, vec!["e0"]), (1, vec!["e1"])]).unwrap();
        let mut d = GradedMap::zero(module.clone(), module.clone(), -1);
        d.add_term(1, 0, 0, Scalar::from_int(2)).unwrap();
        let n = ChainComplex::checked(module.clone(), d).unwrap();
        let mut h = GradedMap::zero(module.clone(), module.clone(), 1);
        h.add_term(0, 0, 0, Scalar::one()).unwrap();
        let tau = GradedMap::identity(&module).scale(&Scalar::from_int(2));
        Pseudocontraction::new(n, tau, h).unwrap()
    }

    #[test]
    fn cone_is_a_valid_pseudocontraction() {
        assert!(cone_pseudocontraction().validate().passed());
    }

    #[test]
    fn doubled_example_is_pseudo_but_not_hodge() {
        let p = doubled_pseudocontraction();
        assert!(p.validate().passed());
        let t = GradedMap::identity(p.n.module()).sub(&p.tau).unwrap();
        let hodge = HodgeData::new(p.n.clone(), t, p.h.clone()).unwrap();
        let report = hodge.validate();
        assert!(!report.passed());
        assert!(report.lines.iter().any(|l| l.label == "ah4" && !l.pass));
    }

    #[test]
    fn standard_example_is_a_contraction() {
        assert!(standard_contraction().validate().passed());
    }

    #[test]
    fn weak_to_pseudo_on_the_standard_example() {
        let c = standard_contraction();
        let p = weak_to_pseudo(&c.weak).unwrap();
        // tau picks out everything except a: tau(a) = 0, tau(c) = c, tau(b) = b
        assert!(p.tau.entry(0, 0, 0).is_zero());
        assert_eq!(p.tau.entry(0, 1, 1), Scalar::one());
        assert_eq!(p.tau.entry(1, 0, 0), Scalar::one());
    }

    #[test]
    fn weak_to_pseudo_identity_and_cone_cases() {
        // nabla.pi = 1 (M = N): tau = 0
        let module = GradedModule::build([(0, vec!["e"])]).unwrap();
        let n = ChainComplex::zero_complex(module.clone());
        let id = GradedMap::identity(&module);
        let h = GradedMap::zero(module.clone(), module.clone(), 1);
        let w = WeakContraction::new(n.clone(), n.clone(), id.clone(), id, h).unwrap();
        let p = weak_to_pseudo(&w).unwrap();
        assert!(p.tau.is_zero());

        // M = 0: tau = identity (cone case)
        let cone = cone_pseudocontraction();
        let empty = GradedModule::empty();
        let m = ChainComplex::zero_complex(empty.clone());
        let pi = GradedMap::zero(cone.n.module().clone(), empty.clone(), 0);
        let nabla = GradedMap::zero(empty, cone.n.module().clone(), 0);
        let w = WeakContraction::new(m, cone.n.clone(), pi, nabla, cone.h.clone()).unwrap();
        let p = weak_to_pseudo(&w).unwrap();
        assert_eq!(p.tau, GradedMap::identity(cone.n.module()));
    }

    #[test]
    fn pseudo_to_weak_trivial_cases() {
        // tau = identity: t = 0, image empty
        let cone = cone_pseudocontraction();
        let w = pseudo_to_weak(&cone).unwrap();
        assert!(w.m.module().is_empty());

        // tau = 0 needs dh + hd = 0; zero differential and zero h works
        let module = GradedModule::build([(0, vec!["e"])]).unwrap();
        let n = ChainComplex::zero_complex(module.clone());
        let tau = GradedMap::zero(module.clone(), module.clone(), 0);
        let h = GradedMap::zero(module.clone(), module.clone(), 1);
        let p = Pseudocontraction::new(n, tau, h).unwrap();
        let w = pseudo_to_weak(&p).unwrap();
        assert_eq!(w.m.module(), w.n.module());
        assert_eq!(w.pi, GradedMap::identity(w.n.module()));
        assert_eq!(w.nabla, GradedMap::identity(w.n.module()));
    }

    #[test]
    fn pseudo_to_weak_doubled_example() {
        // tau = 2: t = -1, image is all of N, pi = -identity in the monic basis
        let p = doubled_pseudocontraction();
        let w = pseudo_to_weak(&p).unwrap();
        assert_eq!(w.m.module().total_dim(), 2);
        assert_eq!(
            w.pi,
            GradedMap::identity(w.n.module()).neg()
        );
        assert_eq!(w.nabla, GradedMap::identity(w.n.module()));
        assert!(w.validate().passed());
    }

    #[test]
    fn round_trip_recovers_the_image_of_nabla() {
        let c = standard_contraction();
        let p = weak_to_pseudo(&c.weak).unwrap();
        let w = pseudo_to_weak(&p).unwrap();
        // the produced M is the image of the original nabla, and pi
        // restricted there inverts the corestricted nabla
        assert_eq!(w.m.module().labels(0), ["a".to_string()]);
        let pn = cmp(&w.pi, &c.weak.nabla);
        let np = cmp(&c.weak.pi, &w.nabla);
        assert_eq!(pn, GradedMap::identity(w.m.module()));
        assert_eq!(np, GradedMap::identity(c.m().module()));
    }

    #[test]
    fn compar_classification_cases() {
        // cone: all three hold
        let cone = cone_pseudocontraction();
        assert!(compar_classify(&cone).unwrap().all_hold);

        // doubled example: all three fail
        let doubled = doubled_pseudocontraction();
        let class = compar_classify(&doubled).unwrap();
        assert!(!class.all_hold);
        assert!(!class.hodge_axioms.passed());
        assert!(!class.side_conditions.passed());

        // any contraction converted through weak_to_pseudo: all hold
        let c = standard_contraction();
        let p = weak_to_pseudo(&c.weak).unwrap();
        assert!(compar_classify(&p).unwrap().all_hold);
    }

    #[test]
    fn hodge_validate_agrees_with_compar_condition_one() {
        for p in [
            cone_pseudocontraction(),
            doubled_pseudocontraction(),
            weak_to_pseudo(&standard_contraction().weak).unwrap(),
        ] {
            let t = GradedMap::identity(p.n.module()).sub(&p.tau).unwrap();
            let hodge = HodgeData::new(p.n.clone(), t, p.h.clone()).unwrap();
            let class = compar_classify(&p).unwrap();
            assert_eq!(hodge.validate().passed(), class.hodge_axioms.passed());
        }
    }

    #[test]
    fn tau_commutes_with_d_whenever_axioms_hold() {
        for p in [cone_pseudocontraction(), doubled_pseudocontraction()] {
            let report = p.validate();
            assert!(report
                .lines
                .iter()
                .any(|l| l.label == "tau-chain" && l.pass));
        }
    }

    #[test]
    fn hodge_decomposition_on_the_standard_example() {
        let c = standard_contraction();
        let report = hodge_decomposition_check(&c).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn hodge_decomposition_trivial_and_two_term() {
        // zero differential: N = 0 + N + 0
        let module = GradedModule::build([(0, vec!["u", "v"]), (2, vec!["w"])]).unwrap();
        let n = ChainComplex::zero_complex(module.clone());
        let m = n.clone();
        let id = GradedMap::identity(&module);
        let h = GradedMap::zero(module.clone(), module.clone(), 1);
        let c = Contraction::new(
            WeakContraction::new(m, n, id.clone(), id, h).unwrap(),
        );
        assert!(hodge_decomposition_check(&c).unwrap().passed());

        // d(e1) = e0 cone: degree 0 all boundary, degree 1 all h(dN)
        let module = GradedModule::build([(0, vec!["e0"]), (1, vec!["e1"])]).unwrap();
        let mut d = GradedMap::zero(module.clone(), module.clone(), -1);
        d.add_term(1, 0, 0, Scalar::one()).unwrap();
        let n = ChainComplex::checked(module.clone(), d).unwrap();
        let empty = GradedModule::empty();
        let m = ChainComplex::zero_complex(empty.clone());
        let pi = GradedMap::zero(module.clone(), empty.clone(), 0);
        let nabla = GradedMap::zero(empty, module.clone(), 0);
        let mut h = GradedMap::zero(module.clone(), module.clone(), 1);
        h.add_term(0, 0, 0, Scalar::one()).unwrap();
        let c = Contraction::new(WeakContraction::new(m, n, pi, nabla, h).unwrap());
        let report = hodge_decomposition_check(&c).unwrap();
        assert!(report.passed(), "{report}");
    }
}
