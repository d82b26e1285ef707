//! The presented free graded noncommutative differential algebra on the
//! generators `x` (degree -1), `s` (degree +1) and `tau` (degree 0),
//! subject to the rewrite rules
//!
//! ```text
//!   s.s   -> 0
//!   s.tau -> tau.s
//! ```
//!
//! These relations present the degree-0/1 commuting pair (`tau`, `s`) and
//! leave `x` free, so the quotient is the free product of the algebra
//! generated by `x` with the algebra generated by `s`, `tau`. The
//! differential is determined by `D(s) = tau`, `D(tau) = 0` and
//! `D(x) = -x.x`, extended by the graded Leibniz rule.
//!
//! Words are kept in normal form at all times: no `s.s` factor and, within
//! every maximal `{s, tau}` run, all `tau` letters before the `s`. Normal
//! form uniqueness is not asserted in general; it is verified exhaustively
//! up to bounded length by exploring every reduction order (see the
//! tests), which is all the downstream checks rely on.

mod a0;
mod element;
mod text;

pub use a0::{check_a0_products, enumerate_a0_basis, rank_oracle_count, A0Shape, A0Word};
pub use element::{
    apply_differential, decompose_free_product, nf_multiply, twist_differential, FirstFactor,
    FreeElement, FreeProductParts,
};
pub use text::{parse_element, ParseError};

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Generator of the free algebra with its fixed degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X,
    S,
    Tau,
}

impl Gen {
    pub fn degree(self) -> i64 {
        match self {
            Gen::X => -1,
            Gen::S => 1,
            Gen::Tau => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gen::X => "x",
            Gen::S => "s",
            Gen::Tau => "tau",
        }
    }

    /// Parity governing Koszul signs.
    pub fn is_odd(self) -> bool {
        self.degree().rem_euclid(2) == 1
    }

    pub const ALL: [Gen; 3] = [Gen::X, Gen::S, Gen::Tau];
}

/// One rewrite applied during normalization, for reduction traces.
#[derive(Debug, Clone)]
pub struct RewriteStep {
    pub rule: &'static str,
    pub position: usize,
    pub before: Word,
    /// `None` when the rule killed the word.
    pub after: Option<Word>,
}

/// A word in the generators, ordered by length first and then
/// lexicographically, so that series displays are graded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: Gen) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|g| g.degree()).sum()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Is the word already in normal form?
    pub fn is_normal(&self) -> bool {
        self.0
            .windows(2)
            .all(|w| !(w[0] == Gen::S && (w[1] == Gen::S || w[1] == Gen::Tau)))
    }

    fn first_redex(&self) -> Option<(usize, &'static str)> {
        self.0.windows(2).enumerate().find_map(|(i, w)| {
            if w[0] == Gen::S && w[1] == Gen::S {
                Some((i, RULE_SS))
            } else if w[0] == Gen::S && w[1] == Gen::Tau {
                Some((i, RULE_STAU))
            } else {
                None
            }
        })
    }

    /// Reduce to normal form, leftmost redex first. Returns `None` when
    /// the word reduces to zero. When a trace sink is installed (see
    /// [`with_rewrite_trace`]) every applied rule is recorded.
    pub fn reduce(&self) -> Option<Word> {
        if self.is_normal() {
            return Some(self.clone());
        }
        if trace_active() {
            let (normal, steps) = self.reduce_trace();
            record_steps(steps);
            return normal;
        }
        let mut word = self.clone();
        loop {
            match word.first_redex() {
                None => return Some(word),
                Some((i, rule)) => {
                    if rule == RULE_SS {
                        return None;
                    }
                    word.0.swap(i, i + 1);
                }
            }
        }
    }

    /// Reduce to normal form recording every rewrite step.
    pub fn reduce_trace(&self) -> (Option<Word>, Vec<RewriteStep>) {
        let mut word = self.clone();
        let mut steps = Vec::new();
        loop {
            match word.first_redex() {
                None => return (Some(word), steps),
                Some((i, rule)) => {
                    let before = word.clone();
                    if rule == RULE_SS {
                        steps.push(RewriteStep {
                            rule,
                            position: i,
                            before,
                            after: None,
                        });
                        return (None, steps);
                    }
                    word.0.swap(i, i + 1);
                    steps.push(RewriteStep {
                        rule,
                        position: i,
                        before,
                        after: Some(word.clone()),
                    });
                }
            }
        }
    }

    /// All normal forms reachable by applying the rules in every possible
    /// order. Confluence evidence: this set has exactly one element (or
    /// the word dies under every order, represented as the empty set).
    pub fn reduce_all_orders(&self) -> BTreeSet<Option<Word>> {
        fn explore(word: &Word, seen: &mut BTreeSet<Word>, out: &mut BTreeSet<Option<Word>>) {
            if !seen.insert(word.clone()) {
                return;
            }
            let mut any = false;
            for i in 0..word.0.len().saturating_sub(1) {
                if word.0[i] == Gen::S && word.0[i + 1] == Gen::S {
                    any = true;
                    out.insert(None);
                } else if word.0[i] == Gen::S && word.0[i + 1] == Gen::Tau {
                    any = true;
                    let mut next = word.clone();
                    next.0.swap(i, i + 1);
                    explore(&next, seen, out);
                }
            }
            if !any {
                out.insert(Some(word.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = BTreeSet::new();
        explore(self, &mut seen, &mut out);
        out
    }
}

const RULE_SS: &str = "s.s -> 0";
const RULE_STAU: &str = "s.tau -> tau.s";

thread_local! {
    static REWRITE_TRACE: std::cell::RefCell<Option<Vec<RewriteStep>>> =
        const { std::cell::RefCell::new(None) };
}

fn trace_active() -> bool {
    REWRITE_TRACE.with(|t| t.borrow().is_some())
}

fn record_steps(steps: Vec<RewriteStep>) {
    REWRITE_TRACE.with(|t| {
        if let Some(sink) = t.borrow_mut().as_mut() {
            sink.extend(steps);
        }
    });
}

/// Run `f` with a rewrite-trace sink installed; every rule application
/// performed by any reduction on this thread is collected.
pub fn with_rewrite_trace<T>(f: impl FnOnce() -> T) -> (T, Vec<RewriteStep>) {
    REWRITE_TRACE.with(|t| *t.borrow_mut() = Some(Vec::new()));
    let value = f();
    let steps = REWRITE_TRACE.with(|t| t.borrow_mut().take().unwrap_or_default());
    (value, steps)
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        // compress runs of a single generator as powers
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == g {
                run += 1;
            }
            if !first {
                write!(f, ".")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{}", g.name())?;
            } else {
                write!(f, "{}^{}", g.name(), run)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// All normal-form words of letter length at most `bound`, in word order.
pub fn normal_words(bound: usize) -> Vec<Word> {
    normal_words_over(&Gen::ALL, bound)
}

/// Normal-form words over a restricted alphabet, in word order.
pub fn normal_words_over(alphabet: &[Gen], bound: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for word in &frontier {
            for &g in alphabet {
                if let Some(&last) = word.0.last() {
                    if last == Gen::S && (g == Gen::S || g == Gen::Tau) {
                        continue;
                    }
                }
                let mut extended = word.clone();
                extended.0.push(g);
                next.push(extended);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out
}

/// The fixed presentation, with mechanical checks of its coherence: the
/// differential descends through the rewrite rules and the augmentation
/// is a map of algebras killing boundaries. All checks are exhaustive up
/// to the given letter length.
pub struct Presentation;

impl Presentation {
    pub fn generators() -> [Gen; 3] {
        Gen::ALL
    }

    pub fn check_coherence(bound: usize) -> crate::report::Report {
        let mut report = crate::report::Report::new("presentation coherence");

        // D commutes with reduction on every raw word
        let mut ok = true;
        let mut detail = None;
        for raw in raw_words(bound) {
            let reduced_first = match raw.reduce() {
                None => FreeElement::zero(),
                Some(word) => FreeElement::from_word(word),
            };
            let d_then = apply_differential(&reduced_first);
            let d_raw = element::differential_of_raw_word(&raw);
            if d_then != d_raw {
                ok = false;
                detail = Some(format!("word {raw}"));
                break;
            }
        }
        report.push(
            "rules-d",
            format!("D descends through the rewrite rules (length <= {bound})"),
            ok,
            detail,
        );

        // augmentation is multiplicative and kills boundaries
        let words = normal_words(bound);
        let mut ok = true;
        let mut detail = None;
        'outer: for a in &words {
            for b in &words {
                if a.len() + b.len() > bound {
                    continue;
                }
                let ea = FreeElement::from_word(a.clone());
                let eb = FreeElement::from_word(b.clone());
                let prod = nf_multiply(&ea, &eb);
                let lhs = prod.augmentation();
                let rhs = &ea.augmentation() * &eb.augmentation();
                if lhs != rhs {
                    ok = false;
                    detail = Some(format!("({a}).({b})"));
                    break 'outer;
                }
            }
        }
        report.push(
            "aug-mult",
            format!("augmentation is an algebra map (length <= {bound})"),
            ok,
            detail,
        );

        let mut ok = true;
        let mut detail = None;
        for word in &words {
            let boundary = apply_differential(&FreeElement::from_word(word.clone()));
            if !boundary.augmentation().is_zero() {
                ok = false;
                detail = Some(format!("word {word}"));
                break;
            }
        }
        report.push(
            "aug-d",
            format!("augmentation kills boundaries (length <= {bound})"),
            ok,
            detail,
        );
        report
    }
}

/// Every raw (not necessarily normal) word up to the given length.
pub fn raw_words(bound: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for word in &frontier {
            for &g in Gen::ALL.iter() {
                let mut extended = word.clone();
                extended.0.push(g);
                next.push(extended);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(letters: &[Gen]) -> Word {
        Word(letters.to_vec())
    }

    #[test]
    fn reduction_kills_ss_and_commutes_stau() {
        assert_eq!(word(&[Gen::S, Gen::S]).reduce(), None);
        assert_eq!(
            word(&[Gen::S, Gen::Tau]).reduce(),
            Some(word(&[Gen::Tau, Gen::S]))
        );
        // x.s.tau.s -> x.tau.s.s -> 0
        assert_eq!(word(&[Gen::X, Gen::S, Gen::Tau, Gen::S]).reduce(), None);
    }

    #[test]
    fn normal_form_is_order_independent_up_to_length_six() {
        for raw in raw_words(6) {
            let all = raw.reduce_all_orders();
            assert_eq!(all.len(), 1, "word {raw} has several normal forms: {all:?}");
            assert!(all.contains(&raw.reduce()), "word {raw}");
        }
    }

    #[test]
    fn normal_word_counts_follow_the_transfer_matrix() {
        // no ss and no s.tau adjacency: after s only x may follow
        let counts: Vec<usize> = (0..=6)
            .map(|l| normal_words(l).len())
            .collect();
        assert_eq!(counts, vec![1, 4, 11, 28, 69, 168, 407]);
    }

    #[test]
    fn trace_records_each_rule() {
        let (nf, steps) = word(&[Gen::S, Gen::Tau, Gen::Tau]).reduce_trace();
        assert_eq!(nf, Some(word(&[Gen::Tau, Gen::Tau, Gen::S])));
        assert_eq!(steps.len(), 2);
        assert!(steps.iter().all(|s| s.rule == "s.tau -> tau.s"));
        let (nf, steps) = word(&[Gen::S, Gen::S]).reduce_trace();
        assert!(nf.is_none());
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].rule, "s.s -> 0");
    }

    #[test]
    fn presentation_is_coherent_up_to_length_five() {
        let report = Presentation::check_coherence(5);
        assert!(report.passed(), "{report}");
    }
}
