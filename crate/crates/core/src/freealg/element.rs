//! Exact linear combinations of normal-form words, with the graded
//! Leibniz differential and the twisted differential.

use super::{Gen, Word};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Finite linear combination of normal-form words. No zero coefficients
/// are stored and every stored word is in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, Scalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement::default()
    }

    pub fn one() -> Self {
        FreeElement::from_word(Word::empty())
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut e = FreeElement::zero();
        e.add_term(Word::empty(), c);
        e
    }

    pub fn gen(g: Gen) -> Self {
        FreeElement::from_word(Word::single(g))
    }

    /// Reduces the word; a word that dies under the rules contributes
    /// nothing.
    pub fn from_word(word: Word) -> Self {
        let mut e = FreeElement::zero();
        e.add_term(word, Scalar::one());
        e
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let Some(normal) = word.reduce() else {
            return;
        };
        match self.terms.get_mut(&normal) {
            Some(slot) => {
                *slot += &coeff;
                if slot.is_zero() {
                    self.terms.remove(&normal);
                }
            }
            None => {
                self.terms.insert(normal, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Constant term; the augmentation.
    pub fn augmentation(&self) -> Scalar {
        self.coeff(&Word::empty())
    }

    /// Minimal letter length of a nonzero term.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).min()
    }

    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// Drop every term longer than `bound`.
    pub fn truncate(&self, bound: usize) -> FreeElement {
        FreeElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= bound)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> FreeElement {
        if c.is_zero() {
            return FreeElement::zero();
        }
        FreeElement {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v * c))
                .collect(),
        }
    }

    /// Split into homogeneous parts by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<i64, FreeElement> {
        let mut parts: BTreeMap<i64, FreeElement> = BTreeMap::new();
        for (word, coeff) in &self.terms {
            parts
                .entry(word.degree())
                .or_default()
                .add_term(word.clone(), coeff.clone());
        }
        parts
    }

    /// Degree when homogeneous. Zero is homogeneous of every degree.
    pub fn degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(Word::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn pow(&self, n: usize) -> FreeElement {
        let mut acc = FreeElement::one();
        for _ in 0..n {
            acc = nf_multiply(&acc, self);
        }
        acc
    }

    /// Graded commutator `self.other - (-1)^(|self||other|) other.self`
    /// for homogeneous operands.
    pub fn commutator(&self, other: &FreeElement) -> FreeElement {
        let a_deg = self.degree().expect("homogeneous left operand");
        let b_deg = other.degree().expect("homogeneous right operand");
        let sign = if (a_deg * b_deg).rem_euclid(2) == 1 {
            -Scalar::one()
        } else {
            Scalar::one()
        };
        &nf_multiply(self, other) - &nf_multiply(other, self).scale(&sign)
    }
}

impl Add for &FreeElement {
    type Output = FreeElement;
    fn add(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (word, coeff) in &rhs.terms {
            out.add_term(word.clone(), coeff.clone());
        }
        out
    }
}

impl Sub for &FreeElement {
    type Output = FreeElement;
    fn sub(self, rhs: &FreeElement) -> FreeElement {
        self + &rhs.neg()
    }
}

impl Neg for &FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        self.scale(&-Scalar::one())
    }
}

impl FreeElement {
    pub fn neg(&self) -> FreeElement {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: &FreeElement) -> FreeElement {
        nf_multiply(self, rhs)
    }
}

/// Concatenate and renormalize, bilinearly.
pub fn nf_multiply(a: &FreeElement, b: &FreeElement) -> FreeElement {
    let mut out = FreeElement::zero();
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            out.add_term(wa.concat(wb), ca * cb);
        }
    }
    out
}

/// `D` on a single raw word by the graded Leibniz rule, with the sign of
/// the prefix parity. Public to the parent module so that rule
/// compatibility can be phrased against unreduced words.
pub(super) fn differential_of_raw_word(word: &Word) -> FreeElement {
    let mut out = FreeElement::zero();
    let mut sign = Scalar::one();
    for (i, &g) in word.letters().iter().enumerate() {
        let replacement: Option<(Vec<Gen>, Scalar)> = match g {
            Gen::S => Some((vec![Gen::Tau], Scalar::one())),
            Gen::Tau => None,
            Gen::X => Some((vec![Gen::X, Gen::X], -Scalar::one())),
        };
        if let Some((letters, coeff)) = replacement {
            let mut spliced = word.letters()[..i].to_vec();
            spliced.extend_from_slice(&letters);
            spliced.extend_from_slice(&word.letters()[i + 1..]);
            out.add_term(Word(spliced), &sign * &coeff);
        }
        if g.is_odd() {
            sign = -sign;
        }
    }
    out
}

/// The differential, extended linearly. `D(s) = tau`, `D(tau) = 0`,
/// `D(x) = -x.x`, graded Leibniz on products.
pub fn apply_differential(a: &FreeElement) -> FreeElement {
    let mut out = FreeElement::zero();
    for (word, coeff) in &a.terms {
        out = &out + &differential_of_raw_word(word).scale(coeff);
    }
    out
}

/// Twisted differential `a -> D(a) + x.a - (-1)^|a| a.x`, applied to each
/// homogeneous part separately.
pub fn twist_differential(a: &FreeElement) -> FreeElement {
    let x = FreeElement::gen(Gen::X);
    let mut out = apply_differential(a);
    for (degree, part) in a.homogeneous_parts() {
        let left = nf_multiply(&x, &part);
        let right = nf_multiply(&part, &x);
        let sign = if degree.rem_euclid(2) == 1 {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        out = &out + &left;
        out = &out + &right.scale(&sign);
    }
    out
}

/// Which factor a word's first maximal block belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FirstFactor {
    /// Leading block over `{x}`.
    P,
    /// Leading block over `{s, tau}`.
    H,
}

fn factor_of(g: Gen) -> FirstFactor {
    match g {
        Gen::X => FirstFactor::P,
        Gen::S | Gen::Tau => FirstFactor::H,
    }
}

/// Maximal alternating blocks of a word.
pub(crate) fn blocks_of(word: &Word) -> Vec<(FirstFactor, Word)> {
    let mut blocks: Vec<(FirstFactor, Word)> = Vec::new();
    for &g in word.letters() {
        let factor = factor_of(g);
        match blocks.last_mut() {
            Some((f, block)) if *f == factor => block.0.push(g),
            _ => blocks.push((factor, Word::single(g))),
        }
    }
    blocks
}

/// Components of the free-product decomposition: the scalar part plus,
/// for each block count and leading factor, the span of the words with
/// that block pattern. Components always sum back to the input.
#[derive(Debug, Clone)]
pub struct FreeProductParts {
    pub scalar: Scalar,
    pub components: BTreeMap<(usize, FirstFactor), FreeElement>,
}

impl FreeProductParts {
    pub fn total(&self) -> FreeElement {
        let mut out = FreeElement::scalar(self.scalar.clone());
        for part in self.components.values() {
            out = &out + part;
        }
        out
    }
}

/// Split an element by maximal-block alternation.
pub fn decompose_free_product(a: &FreeElement) -> FreeProductParts {
    let mut parts = FreeProductParts {
        scalar: a.augmentation(),
        components: BTreeMap::new(),
    };
    for (word, coeff) in a.terms() {
        if word.is_empty() {
            continue;
        }
        let blocks = blocks_of(word);
        let key = (blocks.len(), blocks[0].0);
        parts
            .components
            .entry(key)
            .or_insert_with(FreeElement::zero)
            .add_term(word.clone(), coeff.clone());
    }
    parts
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (word, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            let magnitude = if negative { -coeff } else { coeff.clone() };
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if word.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{word}")?;
            } else {
                write!(f, "{magnitude}*{word}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> FreeElement {
        FreeElement::gen(Gen::X)
    }

    fn s() -> FreeElement {
        FreeElement::gen(Gen::S)
    }

    fn tau() -> FreeElement {
        FreeElement::gen(Gen::Tau)
    }

    #[test]
    fn s_times_s_is_zero() {
        assert!(nf_multiply(&s(), &s()).is_zero());
    }

    #[test]
    fn s_times_tau_normalizes_to_tau_s() {
        let prod = nf_multiply(&s(), &tau());
        let expected = nf_multiply(&tau(), &s());
        assert_eq!(prod, expected);
        assert_eq!(prod.to_string(), "tau.s");
    }

    #[test]
    fn v_tau_u_is_zero() {
        // (x.s).(tau).(s.x) = x.s.tau.s.x -> x.tau.s.s.x -> 0
        let v = nf_multiply(&x(), &s());
        let u = nf_multiply(&s(), &x());
        let prod = nf_multiply(&nf_multiply(&v, &tau()), &u);
        assert!(prod.is_zero());
    }

    #[test]
    fn differential_of_generators() {
        assert_eq!(apply_differential(&s()), tau());
        assert!(apply_differential(&tau()).is_zero());
        let dx = apply_differential(&x());
        assert_eq!(dx, nf_multiply(&x(), &x()).neg());
    }

    #[test]
    fn differential_of_x_squared_vanishes() {
        let x2 = nf_multiply(&x(), &x());
        assert!(apply_differential(&x2).is_zero());
    }

    #[test]
    fn differential_of_ss_vanishes_both_ways() {
        // s.s is already zero; D of the raw word tau.s - s.tau collapses too
        let ss = nf_multiply(&s(), &s());
        assert!(apply_differential(&ss).is_zero());
        let commutator = &nf_multiply(&tau(), &s()) - &nf_multiply(&s(), &tau());
        assert!(commutator.is_zero());
    }

    #[test]
    fn d_squared_vanishes_up_to_length_eight() {
        for word in super::super::normal_words(8) {
            let e = FreeElement::from_word(word.clone());
            let dd = apply_differential(&apply_differential(&e));
            assert!(dd.is_zero(), "D^2 != 0 on {word}");
        }
    }

    #[test]
    fn twisted_differential_on_generators() {
        // Dx(x) = x^2
        let x2 = nf_multiply(&x(), &x());
        assert_eq!(twist_differential(&x()), x2);
        // Dx(s) = tau + x.s + s.x
        let expected = &(&tau() + &nf_multiply(&x(), &s())) + &nf_multiply(&s(), &x());
        assert_eq!(twist_differential(&s()), expected);
        // Dx(1) = 0
        assert!(twist_differential(&FreeElement::one()).is_zero());
    }

    #[test]
    fn twisted_differential_squares_to_zero_up_to_length_six() {
        for word in super::super::normal_words(6) {
            let e = FreeElement::from_word(word.clone());
            let dd = twist_differential(&twist_differential(&e));
            assert!(dd.is_zero(), "Dx^2 != 0 on {word}");
        }
    }

    #[test]
    fn decomposition_splits_by_blocks() {
        // tau^3 is a single block on the H side
        let t3 = tau().pow(3);
        let parts = decompose_free_product(&t3);
        assert_eq!(parts.components.len(), 1);
        assert!(parts.components.contains_key(&(1, FirstFactor::H)));

        // x.tau.s (the normal form of x.s.tau times nothing) has blocks x | tau.s
        let word = nf_multiply(&x(), &nf_multiply(&s(), &tau()));
        let parts = decompose_free_product(&word);
        assert_eq!(parts.components.len(), 1);
        assert!(parts.components.contains_key(&(2, FirstFactor::P)));

        // 1 + x + s: a scalar plus one single-block component per side
        let e = &(&FreeElement::one() + &x()) + &s();
        let parts = decompose_free_product(&e);
        assert_eq!(parts.scalar, Scalar::one());
        assert_eq!(parts.components.len(), 2);
        assert_eq!(parts.total(), e);
    }

    #[test]
    fn decomposition_sums_back_and_degrees_add() {
        for word in super::super::normal_words(5) {
            let e = FreeElement::from_word(word.clone());
            let parts = decompose_free_product(&e);
            assert_eq!(parts.total(), e);
            if !word.is_empty() {
                let blocks = blocks_of(&word);
                let sum: i64 = blocks.iter().map(|(_, b)| b.degree()).sum();
                assert_eq!(sum, word.degree());
            }
        }
    }

    #[test]
    fn associativity_on_triples_up_to_combined_length_nine() {
        let words = super::super::normal_words(7);
        for a in &words {
            for b in &words {
                if a.len() + b.len() > 9 {
                    continue;
                }
                for c in &words {
                    if a.len() + b.len() + c.len() > 9 {
                        continue;
                    }
                    let ea = FreeElement::from_word(a.clone());
                    let eb = FreeElement::from_word(b.clone());
                    let ec = FreeElement::from_word(c.clone());
                    let left = nf_multiply(&nf_multiply(&ea, &eb), &ec);
                    let right = nf_multiply(&ea, &nf_multiply(&eb, &ec));
                    assert_eq!(left, right, "({a}).({b}).({c})");
                }
            }
        }
    }

    #[test]
    fn multiplication_is_unital() {
        for word in super::super::normal_words(4) {
            let e = FreeElement::from_word(word);
            assert_eq!(nf_multiply(&FreeElement::one(), &e), e);
            assert_eq!(nf_multiply(&e, &FreeElement::one()), e);
        }
    }
}
