//! Structure of the degree-zero part of the free algebra.
//!
//! With `u = s.x` and `v = x.s`, every nonzero degree-zero normal word is
//! a monomial in `tau`, a monomial `p(u, tau)` involving `u`, a monomial
//! `q(v, tau)` involving `v`, or a juxtaposition `p(u, tau).q(v, tau)`.
//! [`enumerate_a0_basis`] produces the basis with that classification and
//! cross-checks it against the direct enumeration; [`rank_oracle_count`]
//! independently counts the basis as the rank of the reduction map on raw
//! words; [`check_a0_products`] verifies the juxtaposition and vanishing
//! laws for products of the four shapes.

use super::element::{nf_multiply, FreeElement};
use super::{normal_words, raw_words, Gen, Word};
use crate::error::CoreError;
use crate::linalg::Echelon;
use crate::report::Report;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Letter of a `p`/`q`-family monomial: the family's length-two main
/// block (`u` or `v`) or a `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PqLetter {
    Main,
    Tau,
}

/// Monomial over `{main, tau}`; the family decides whether `main` is `u`
/// or `v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(pub Vec<PqLetter>);

impl Monomial {
    pub fn letter_length(&self) -> usize {
        self.0
            .iter()
            .map(|l| match l {
                PqLetter::Main => 2,
                PqLetter::Tau => 1,
            })
            .sum()
    }

    pub fn involves_main(&self) -> bool {
        self.0.contains(&PqLetter::Main)
    }

    /// Expand over the generator alphabet; `main` becomes `s.x` for the
    /// `u` family and `x.s` for the `v` family.
    pub fn to_word(&self, main: [Gen; 2]) -> Word {
        let mut letters = Vec::new();
        for l in &self.0 {
            match l {
                PqLetter::Main => letters.extend_from_slice(&main),
                PqLetter::Tau => letters.push(Gen::Tau),
            }
        }
        Word(letters)
    }

    fn render(&self, main: &str) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| match l {
                PqLetter::Main => main,
                PqLetter::Tau => "tau",
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

const U: [Gen; 2] = [Gen::S, Gen::X];
const V: [Gen; 2] = [Gen::X, Gen::S];

/// Shape classification of a degree-zero basis word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum A0Shape {
    TauPower(usize),
    P(Monomial),
    Q(Monomial),
    PQ(Monomial, Monomial),
}

impl fmt::Display for A0Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            A0Shape::TauPower(0) => write!(f, "1"),
            A0Shape::TauPower(a) => write!(f, "tau^{a}"),
            A0Shape::P(p) => write!(f, "p: {}", p.render("u")),
            A0Shape::Q(q) => write!(f, "q: {}", q.render("v")),
            A0Shape::PQ(p, q) => write!(f, "p.q: {} . {}", p.render("u"), q.render("v")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct A0Word {
    pub word: Word,
    pub shape: A0Shape,
}

/// All `{main, tau}` monomials of letter length at most `bound` that
/// involve `main`, in a deterministic order.
fn family_monomials(bound: usize) -> Vec<Monomial> {
    fn extend(prefix: &mut Vec<PqLetter>, remaining: usize, out: &mut Vec<Monomial>) {
        if prefix.contains(&PqLetter::Main) {
            out.push(Monomial(prefix.clone()));
        }
        if remaining >= 1 {
            prefix.push(PqLetter::Tau);
            extend(prefix, remaining - 1, out);
            prefix.pop();
        }
        if remaining >= 2 {
            prefix.push(PqLetter::Main);
            extend(prefix, remaining - 2, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), bound, &mut out);
    out.sort_by_key(|m| (m.letter_length(), m.0.clone()));
    out
}

fn normal_image(word: Word) -> Option<Word> {
    word.reduce()
}

/// Enumerate the degree-zero basis up to letter length `bound`, classified
/// by shape. The directly enumerated normal words and the union of the
/// four shape families are required to agree exactly; any discrepancy is
/// an internal error because it would falsify the degree-zero structure
/// the toolkit relies on.
pub fn enumerate_a0_basis(bound: usize) -> Result<Vec<A0Word>, CoreError> {
    let direct: Vec<Word> = normal_words(bound)
        .into_iter()
        .filter(|w| w.degree() == 0)
        .collect();

    let mut classified: BTreeMap<Word, A0Shape> = BTreeMap::new();
    let mut insert = |word: Option<Word>, shape: A0Shape| -> Result<(), CoreError> {
        let word = word.ok_or_else(|| {
            CoreError::Internal(format!("shape {shape} reduces to zero"))
        })?;
        if let Some(previous) = classified.insert(word.clone(), shape.clone()) {
            return Err(CoreError::Internal(format!(
                "word {word} produced by two shapes: {previous} and {shape}"
            )));
        }
        Ok(())
    };

    for a in 0..=bound {
        insert(
            normal_image(Word(vec![Gen::Tau; a])),
            A0Shape::TauPower(a),
        )?;
    }
    for p in family_monomials(bound) {
        insert(normal_image(p.to_word(U)), A0Shape::P(p))?;
    }
    for q in family_monomials(bound) {
        insert(normal_image(q.to_word(V)), A0Shape::Q(q))?;
    }
    // Mixed monomials: all `u` letters before all `v` letters, with the
    // interior `tau` run split canonically at the first `v` (otherwise
    // `u.tau.v` would be produced twice, as `(u.tau).v` and `u.(tau.v)`).
    for p in family_monomials(bound) {
        for q in family_monomials(bound.saturating_sub(p.letter_length())) {
            if q.0.first() != Some(&PqLetter::Main) {
                continue;
            }
            let word = p.to_word(U).concat(&q.to_word(V));
            insert(normal_image(word), A0Shape::PQ(p.clone(), q.clone()))?;
        }
    }

    if classified.len() != direct.len() || !direct.iter().all(|w| classified.contains_key(w)) {
        return Err(CoreError::Internal(format!(
            "shape families cover {} words but the degree-zero basis has {}",
            classified.len(),
            direct.len()
        )));
    }

    Ok(direct
        .into_iter()
        .map(|word| {
            let shape = classified.remove(&word).expect("covered above");
            A0Word { word, shape }
        })
        .collect())
}

/// Independent count of the degree-zero basis: span all raw degree-zero
/// words of length at most `bound` and compute the rank of the
/// reduction-to-normal-form map by column reduction.
pub fn rank_oracle_count(bound: usize) -> usize {
    let index: BTreeMap<Word, usize> = normal_words(bound)
        .into_iter()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let mut ech = Echelon::new();
    for raw in raw_words(bound) {
        if raw.degree() != 0 {
            continue;
        }
        if let Some(normal) = raw.reduce() {
            let mut column = crate::graded::SparseVec::new();
            column.insert(index[&normal], Scalar::one());
            ech.insert(column);
        }
    }
    ech.rank()
}

fn element_of(word: &Word) -> FreeElement {
    FreeElement::from_word(word.clone())
}

fn check_juxtaposition(report: &mut Report, label: &str, what: &str, cases: Vec<(Word, Word)>) {
    let count = cases.len();
    let mut failure = None;
    for (left, right) in cases {
        let product = nf_multiply(&element_of(&left), &element_of(&right));
        let expected = FreeElement::from_word(left.concat(&right));
        if product != expected || expected.is_zero() {
            failure = Some(format!("({left}).({right}) = {product}"));
            break;
        }
    }
    report.push(
        label,
        format!("{what} ({count} products)"),
        failure.is_none(),
        failure,
    );
}

fn check_vanishing(report: &mut Report, label: &str, what: &str, cases: Vec<(Word, Word)>) {
    let count = cases.len();
    let mut failure = None;
    for (left, right) in cases {
        let product = nf_multiply(&element_of(&left), &element_of(&right));
        if !product.is_zero() {
            failure = Some(format!("({left}).({right}) = {product}"));
            break;
        }
    }
    report.push(
        label,
        format!("{what} ({count} products)"),
        failure.is_none(),
        failure,
    );
}

fn pairs(lefts: &[Word], rights: &[Word]) -> Vec<(Word, Word)> {
    let mut out = Vec::with_capacity(lefts.len() * rights.len());
    for l in lefts {
        for r in rights {
            out.push((l.clone(), r.clone()));
        }
    }
    out
}

/// Verify the product laws of the degree-zero basis monomials up to
/// letter length `bound` per factor: juxtaposition realizes the mixed
/// products, the reversed products vanish, squares of `p.q` words vanish,
/// and `v.tau^j.u = 0`.
pub fn check_a0_products(bound: usize) -> Report {
    let mut report = Report::new(format!("degree-zero product laws (length <= {bound})"));
    let ps: Vec<Word> = family_monomials(bound).iter().map(|m| m.to_word(U)).collect();
    let qs: Vec<Word> = family_monomials(bound).iter().map(|m| m.to_word(V)).collect();
    let taus: Vec<Word> = (1..=bound).map(|a| Word(vec![Gen::Tau; a])).collect();
    let pqs: Vec<Word> = ps
        .iter()
        .flat_map(|p| qs.iter().map(move |q| p.concat(q)))
        .collect();

    let mut two_sided = pairs(&ps, &taus);
    two_sided.extend(pairs(&taus, &ps));
    check_juxtaposition(
        &mut report,
        "a0-ii-ptau",
        "p.tau^j and tau^j.p are juxtapositions",
        two_sided,
    );
    let mut two_sided = pairs(&qs, &taus);
    two_sided.extend(pairs(&taus, &qs));
    check_juxtaposition(
        &mut report,
        "a0-ii-qtau",
        "q.tau^j and tau^j.q are juxtapositions",
        two_sided,
    );
    check_juxtaposition(&mut report, "a0-ii-pq", "p.q is a juxtaposition", pairs(&ps, &qs));
    check_juxtaposition(
        &mut report,
        "a0-ii-p2p1q",
        "p2.(p1 q) is a juxtaposition",
        pairs(&ps, &pqs),
    );
    check_juxtaposition(
        &mut report,
        "a0-ii-pq1q2",
        "(p q1).q2 is a juxtaposition",
        pairs(&pqs, &qs),
    );

    check_vanishing(&mut report, "a0-iii-qp", "q.p = 0", pairs(&qs, &ps));
    check_vanishing(
        &mut report,
        "a0-iii-p1qp2",
        "(p1 q).p2 = 0",
        pairs(&pqs, &ps),
    );
    check_vanishing(
        &mut report,
        "a0-iii-q2pq1",
        "q2.(p q1) = 0",
        pairs(&qs, &pqs),
    );

    let squares: Vec<(Word, Word)> = pqs
        .iter()
        .filter(|pq| pq.len() <= bound)
        .map(|pq| (pq.clone(), pq.clone()))
        .collect();
    check_vanishing(&mut report, "a0-iv-pq-square", "(p q)^2 = 0", squares);

    let relations: Vec<(Word, Word)> = (0..=bound)
        .map(|j| {
            let mut left = Word(vec![Gen::X, Gen::S]);
            left.0.extend(vec![Gen::Tau; j]);
            (left, Word(vec![Gen::S, Gen::X]))
        })
        .collect();
    check_vanishing(&mut report, "a0-v-vtau-u", "v.tau^j.u = 0", relations);

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_at_length_one() {
        let basis = enumerate_a0_basis(1).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0].shape, A0Shape::TauPower(0));
        assert_eq!(basis[1].shape, A0Shape::TauPower(1));
    }

    #[test]
    fn basis_at_length_three_has_ten_words() {
        let basis = enumerate_a0_basis(3).unwrap();
        let rendered: Vec<String> = basis.iter().map(|b| b.word.to_string()).collect();
        assert_eq!(basis.len(), 10, "{rendered:?}");
        // hand enumeration: 1, tau, tau^2, u, v, tau^3, tau.u, u.tau, tau.v, v.tau
        assert_eq!(
            rendered,
            vec![
                "1", "tau", "x.s", "s.x", "tau^2", "x.tau.s", "s.x.tau", "tau.x.s", "tau.s.x",
                "tau^3"
            ]
        );
        assert_eq!(rank_oracle_count(3), 10);
    }

    #[test]
    fn rank_oracle_confirms_the_enumeration_up_to_length_six() {
        for bound in 0..=6 {
            assert_eq!(
                enumerate_a0_basis(bound).unwrap().len(),
                rank_oracle_count(bound),
                "bound {bound}"
            );
        }
    }

    #[test]
    fn uv_is_a_basis_word_and_squares_to_zero() {
        let basis = enumerate_a0_basis(4).unwrap();
        let uv = Word(vec![Gen::S, Gen::X, Gen::X, Gen::S]);
        let entry = basis.iter().find(|b| b.word == uv).expect("u.v in basis");
        assert!(matches!(entry.shape, A0Shape::PQ(_, _)));
        let e = FreeElement::from_word(uv);
        assert!(nf_multiply(&e, &e).is_zero());
    }

    #[test]
    fn product_laws_hold_up_to_length_four() {
        let report = check_a0_products(4);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn tau_u_is_juxtaposition_and_vu_vanishes() {
        let tau = FreeElement::gen(Gen::Tau);
        let u = FreeElement::from_word(Word(vec![Gen::S, Gen::X]));
        let v = FreeElement::from_word(Word(vec![Gen::X, Gen::S]));
        let tu = nf_multiply(&tau, &u);
        assert_eq!(
            tu,
            FreeElement::from_word(Word(vec![Gen::Tau, Gen::S, Gen::X]))
        );
        assert!(nf_multiply(&v, &u).is_zero());
    }
}
