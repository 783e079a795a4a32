//! Concepts as disjunctions of implicants (subcubes of the decision space).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::bits::{low_mask, Bits};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::pss::{same_vocabulary, DecisionState, Vocabulary};

/// Largest vocabulary [`extension`] will enumerate by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Default ceiling on live inclusion-exclusion terms in [`extension_count`].
pub const DEFAULT_TERM_BUDGET: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub index: usize,
    pub polarity: bool,
}

impl Literal {
    pub fn new(index: usize, polarity: bool) -> Self {
        Literal { index, polarity }
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.index, self.polarity).cmp(&(other.index, other.polarity))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A conjunction of literals. `care` marks constrained symbols and `value`
/// holds their required bits; the empty conjunction is the whole space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Implicant {
    care: u32,
    value: u32,
}

impl Implicant {
    pub const TRUE: Implicant = Implicant { care: 0, value: 0 };

    pub fn from_literals(literals: impl IntoIterator<Item = Literal>) -> Result<Self> {
        let mut cube = Implicant::TRUE;
        for lit in literals {
            if lit.index >= 32 {
                return Err(Error::IndexOutOfRange {
                    index: lit.index,
                    size: 32,
                });
            }
            let bit = 1u32 << lit.index;
            let v = if lit.polarity { bit } else { 0 };
            if cube.care & bit != 0 {
                if cube.value & bit != v {
                    return Err(Error::ContradictoryLiteral { index: lit.index });
                }
                continue;
            }
            cube.care |= bit;
            cube.value |= v;
        }
        Ok(cube)
    }

    /// The single-state cube of a full assignment.
    pub fn minterm(assignment: Bits) -> Self {
        Implicant {
            care: low_mask(assignment.len()),
            value: assignment.word(),
        }
    }

    pub fn care_mask(self) -> u32 {
        self.care
    }

    pub fn value_mask(self) -> u32 {
        self.value
    }

    pub fn is_true(self) -> bool {
        self.care == 0
    }

    pub fn literal_count(self) -> usize {
        self.care.count_ones() as usize
    }

    /// Literals in ascending index order.
    pub fn literals(self) -> impl Iterator<Item = Literal> {
        let mut rest = self.care;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(Literal::new(i, self.value >> i & 1 == 1))
        })
    }

    pub fn highest_index(self) -> Option<usize> {
        (self.care != 0).then(|| 31 - self.care.leading_zeros() as usize)
    }

    pub fn holds(self, assignment: Bits) -> bool {
        self.matches_word(assignment.word())
    }

    pub(crate) fn matches_word(self, word: u32) -> bool {
        word & self.care == self.value
    }

    /// Conjunction of two cubes, `None` when they disagree on a literal.
    pub fn intersect(self, other: Implicant) -> Option<Implicant> {
        let shared = self.care & other.care;
        (self.value & shared == other.value & shared).then_some(Implicant {
            care: self.care | other.care,
            value: self.value | other.value,
        })
    }

    /// True when every state of `other` is a state of `self`.
    pub fn covers(self, other: Implicant) -> bool {
        self.care & other.care == self.care && other.value & self.care == self.value
    }

    pub fn without(self, index: usize) -> Implicant {
        let bit = !(1u32 << index);
        Implicant {
            care: self.care & bit,
            value: self.value & bit,
        }
    }

    /// Number of states in the cube over an `n`-symbol vocabulary.
    pub fn size(self, n: usize) -> u64 {
        1u64 << (n - self.literal_count())
    }

    /// `name=bit & name=bit`, or `TRUE` for the empty cube.
    pub fn render(self, vocab: &Vocabulary) -> String {
        if self.is_true() {
            return "TRUE".to_string();
        }
        self.literals()
            .map(|l| {
                let name = vocab
                    .symbol(l.index)
                    .map(|s| s.name.clone())
                    .unwrap_or_else(|| format!("#{}", l.index));
                format!("{name}={}", u8::from(l.polarity))
            })
            .collect::<Vec<_>>()
            .join(" & ")
    }
}

impl Ord for Implicant {
    fn cmp(&self, other: &Self) -> Ordering {
        self.literals().cmp(other.literals())
    }
}

impl PartialOrd for Implicant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A disjunction of implicants over a vocabulary; no implicants is FALSE.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concept {
    vocab: Arc<Vocabulary>,
    implicants: Vec<Implicant>,
}

impl Concept {
    /// Keeps the implicants exactly as given. Use [`Concept::new`] for the
    /// canonical form.
    pub fn raw(vocab: Arc<Vocabulary>, implicants: Vec<Implicant>) -> Result<Self> {
        for imp in &implicants {
            if let Some(i) = imp.highest_index().filter(|&i| i >= vocab.len()) {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: vocab.len(),
                });
            }
        }
        Ok(Concept { vocab, implicants })
    }

    pub fn new(vocab: Arc<Vocabulary>, implicants: Vec<Implicant>) -> Result<Self> {
        Ok(canonicalize(&Self::raw(vocab, implicants)?))
    }

    pub fn falsum(vocab: Arc<Vocabulary>) -> Self {
        Concept {
            vocab,
            implicants: Vec::new(),
        }
    }

    pub fn truth(vocab: Arc<Vocabulary>) -> Self {
        Concept {
            vocab,
            implicants: vec![Implicant::TRUE],
        }
    }

    /// Builds a one-implicant concept from `(name, bit)` literals.
    pub fn cube(vocab: Arc<Vocabulary>, literals: &[(&str, bool)]) -> Result<Self> {
        let imp = named_implicant(&vocab, literals)?;
        Self::new(vocab, vec![imp])
    }

    /// Builds a concept from several named cubes.
    pub fn cubes(vocab: Arc<Vocabulary>, cubes: &[&[(&str, bool)]]) -> Result<Self> {
        let imps = cubes
            .iter()
            .map(|c| named_implicant(&vocab, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vocab, imps)
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn implicants(&self) -> &[Implicant] {
        &self.implicants
    }

    pub fn is_false(&self) -> bool {
        self.implicants.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        *self == canonicalize(self)
    }

    pub(crate) fn holds_bits(&self, assignment: Bits) -> bool {
        self.implicants.iter().any(|i| i.holds(assignment))
    }

    /// Implicants satisfied by a state, in canonical order.
    pub fn satisfied_by(&self, d: &DecisionState) -> Result<Vec<Implicant>> {
        same_vocabulary(&self.vocab, d.vocabulary())?;
        Ok(self
            .implicants
            .iter()
            .copied()
            .filter(|i| i.holds(d.assignment()))
            .collect())
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.implicants.is_empty() {
            return f.write_str("FALSE");
        }
        let parts: Vec<String> = self
            .implicants
            .iter()
            .map(|i| format!("({})", i.render(&self.vocab)))
            .collect();
        f.write_str(&parts.join(" | "))
    }
}

fn named_implicant(vocab: &Vocabulary, literals: &[(&str, bool)]) -> Result<Implicant> {
    let lits = literals
        .iter()
        .map(|&(name, pol)| {
            vocab
                .index_of(name)
                .map(|i| Literal::new(i, pol))
                .ok_or_else(|| Error::InvalidVocabulary(format!("unknown symbol `{name}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Implicant::from_literals(lits)
}

pub fn evaluate(c: &Concept, d: &DecisionState) -> Result<bool> {
    same_vocabulary(&c.vocab, d.vocabulary())?;
    Ok(c.holds_bits(d.assignment()))
}

/// Every state satisfying the concept, lexicographically.
pub fn extension(c: &Concept) -> Result<Vec<DecisionState>> {
    extension_with(c, DEFAULT_ENUMERATION_CAP, Execution::default())
}

pub fn extension_with(c: &Concept, cap: usize, exec: Execution) -> Result<Vec<DecisionState>> {
    let n = c.vocab.len();
    if n > cap {
        return Err(Error::VocabularyTooLarge { size: n, cap });
    }
    let ranks = exec::filter_range(exec, 0..1u64 << n, |r| {
        c.holds_bits(Bits::from_rank(n, r as u32))
    });
    ranks
        .into_iter()
        .map(|r| DecisionState::new(Arc::clone(&c.vocab), Bits::from_rank(n, r as u32)))
        .collect()
}

/// Size of the extension by signed inclusion-exclusion over implicant
/// intersections. Terms with the same intersection cube are merged, so the
/// live term count is bounded by the number of distinct cubes.
pub fn extension_count(c: &Concept) -> Result<u64> {
    extension_count_with_budget(c, DEFAULT_TERM_BUDGET)
}

pub fn extension_count_with_budget(c: &Concept, budget: usize) -> Result<u64> {
    let n = c.vocab.len();
    let mut terms: HashMap<Implicant, i64> = HashMap::new();
    for &imp in &c.implicants {
        let mut delta: HashMap<Implicant, i64> = HashMap::new();
        for (&cube, &coef) in &terms {
            if let Some(x) = cube.intersect(imp) {
                *delta.entry(x).or_default() -= coef;
            }
        }
        *delta.entry(imp).or_default() += 1;
        for (cube, coef) in delta {
            let e = terms.entry(cube).or_default();
            *e += coef;
            if *e == 0 {
                terms.remove(&cube);
            }
        }
        if terms.len() > budget {
            return Err(Error::TermExplosion { budget });
        }
    }
    let total: i64 = terms.iter().map(|(cube, coef)| coef * cube.size(n) as i64).sum();
    Ok(total as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weakness {
    Weaker,
    Stronger,
    EquallyWeak,
}

/// Compares generality by extension size.
pub fn weaker(c1: &Concept, c2: &Concept) -> Result<Weakness> {
    same_vocabulary(&c1.vocab, &c2.vocab)?;
    let (a, b) = (extension_count(c1)?, extension_count(c2)?);
    Ok(match a.cmp(&b) {
        Ordering::Greater => Weakness::Weaker,
        Ordering::Less => Weakness::Stronger,
        Ordering::Equal => Weakness::EquallyWeak,
    })
}

pub fn conjoin(c1: &Concept, c2: &Concept) -> Result<Concept> {
    same_vocabulary(&c1.vocab, &c2.vocab)?;
    let implicants = c1
        .implicants
        .iter()
        .flat_map(|a| c2.implicants.iter().filter_map(move |b| a.intersect(*b)))
        .collect();
    Ok(canonicalize(&Concept {
        vocab: Arc::clone(&c1.vocab),
        implicants,
    }))
}

/// Sorts, deduplicates and drops implicants covered by another implicant.
pub fn canonicalize(c: &Concept) -> Concept {
    let mut imps = c.implicants.clone();
    imps.sort();
    imps.dedup();
    let kept: Vec<Implicant> = imps
        .iter()
        .enumerate()
        .filter(|&(i, a)| {
            !imps
                .iter()
                .enumerate()
                .any(|(j, b)| i != j && b.covers(*a))
        })
        .map(|(_, a)| *a)
        .collect();
    Concept {
        vocab: Arc::clone(&c.vocab),
        implicants: kept,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vocab(sensors: &[&str], actuators: &[&str]) -> Arc<Vocabulary> {
        Arc::new(Vocabulary::from_channels(sensors, actuators).unwrap())
    }

    fn state(v: &Arc<Vocabulary>, s: &str) -> DecisionState {
        DecisionState::new(Arc::clone(v), s.parse().unwrap()).unwrap()
    }

    fn texts(states: &[DecisionState]) -> Vec<String> {
        states.iter().map(|d| d.to_string()).collect()
    }

    #[test]
    fn evaluate_examples() {
        let v = vocab(&["s0", "s1"], &["r0"]);
        let c = Concept::cube(Arc::clone(&v), &[("r0", true)]).unwrap();
        assert!(evaluate(&c, &state(&v, "011")).unwrap());
        for d in ["000", "011", "101"] {
            assert!(!evaluate(&Concept::falsum(Arc::clone(&v)), &state(&v, d)).unwrap());
            assert!(evaluate(&Concept::truth(Arc::clone(&v)), &state(&v, d)).unwrap());
        }
        let other = vocab(&["a"], &[]);
        assert_eq!(
            evaluate(&c, &state(&other, "1")).unwrap_err(),
            Error::VocabularyMismatch
        );
    }

    #[test]
    fn extension_examples() {
        let v = vocab(&["x0", "x1"], &[]);
        let c = Concept::cube(Arc::clone(&v), &[("x0", false)]).unwrap();
        assert_eq!(texts(&extension(&c).unwrap()), ["00", "01"]);
        assert!(extension(&Concept::falsum(v)).unwrap().is_empty());

        let v = vocab(&["x0", "x1", "x2"], &[]);
        let c = Concept::cubes(
            Arc::clone(&v),
            &[&[("x0", false)], &[("x1", false)], &[("x2", false)]],
        )
        .unwrap();
        let ext = texts(&extension(&c).unwrap());
        assert_eq!(ext.len(), 7);
        assert!(!ext.contains(&"111".to_string()));
    }

    #[test]
    fn extension_respects_cap() {
        let v = vocab(&["a", "b", "c"], &[]);
        assert_eq!(
            extension_with(&Concept::truth(v), 2, Execution::Sequential).unwrap_err(),
            Error::VocabularyTooLarge { size: 3, cap: 2 }
        );
    }

    #[test]
    fn extension_count_examples() {
        let v = vocab(&["s0", "s1"], &["r0"]);
        let c = Concept::cube(Arc::clone(&v), &[("r0", true)]).unwrap();
        assert_eq!(extension_count(&c).unwrap(), 4);
        assert_eq!(extension_count(&Concept::truth(Arc::clone(&v))).unwrap(), 8);

        let v = vocab(&["x0", "x1", "x2"], &[]);
        let c = Concept::cubes(Arc::clone(&v), &[&[("x0", false)], &[("x1", false)]]).unwrap();
        assert_eq!(extension_count(&c).unwrap(), 6);

        let names: Vec<String> = (0..24).map(|i| format!("x{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let big = vocab(&names, &[]);
        assert_eq!(extension_count(&Concept::truth(big)).unwrap(), 1 << 24);
    }

    #[test]
    fn extension_count_budget() {
        let v = vocab(&["x0", "x1", "x2", "x3"], &[]);
        let c = Concept::cubes(
            Arc::clone(&v),
            &[&[("x0", false)], &[("x1", false)], &[("x2", false)], &[("x3", false)]],
        )
        .unwrap();
        assert_eq!(
            extension_count_with_budget(&c, 3).unwrap_err(),
            Error::TermExplosion { budget: 3 }
        );
        assert_eq!(extension_count_with_budget(&c, 15).unwrap(), 15);
    }

    #[test]
    fn weaker_examples() {
        let v = vocab(&["x0", "x1", "x2"], &[]);
        let t = Concept::truth(Arc::clone(&v));
        let f = Concept::falsum(Arc::clone(&v));
        assert_eq!(weaker(&t, &f).unwrap(), Weakness::Weaker);
        assert_eq!(weaker(&f, &t).unwrap(), Weakness::Stronger);
        assert_eq!(weaker(&t, &t).unwrap(), Weakness::EquallyWeak);
        let c7 = Concept::cubes(
            Arc::clone(&v),
            &[&[("x0", false)], &[("x1", false)], &[("x2", false)]],
        )
        .unwrap();
        let c6 = Concept::cubes(Arc::clone(&v), &[&[("x0", false)], &[("x1", false)]]).unwrap();
        assert_eq!(weaker(&c7, &c6).unwrap(), Weakness::Weaker);
        // same size, different extension
        let a = Concept::cube(Arc::clone(&v), &[("x0", true)]).unwrap();
        let b = Concept::cube(Arc::clone(&v), &[("x1", true)]).unwrap();
        assert_eq!(weaker(&a, &b).unwrap(), Weakness::EquallyWeak);
    }

    #[test]
    fn conjoin_examples() {
        let v = vocab(&["x0", "x1"], &[]);
        let c = Concept::cubes(Arc::clone(&v), &[&[("x0", true)], &[("x1", false)]]).unwrap();
        assert_eq!(conjoin(&Concept::truth(Arc::clone(&v)), &c).unwrap(), c);

        let a = Concept::cube(Arc::clone(&v), &[("x0", true)]).unwrap();
        let na = Concept::cube(Arc::clone(&v), &[("x0", false)]).unwrap();
        assert!(conjoin(&a, &na).unwrap().is_false());

        let b = Concept::cube(Arc::clone(&v), &[("x1", false)]).unwrap();
        assert_eq!(
            conjoin(&a, &b).unwrap(),
            Concept::cube(v, &[("x0", true), ("x1", false)]).unwrap()
        );
    }

    #[test]
    fn canonicalize_examples() {
        let v = vocab(&["x0", "x1"], &[]);
        let x0 = Implicant::from_literals([Literal::new(0, true)]).unwrap();
        let x0nx1 = Implicant::from_literals([Literal::new(0, true), Literal::new(1, false)]).unwrap();
        let c = Concept::raw(Arc::clone(&v), vec![x0nx1, x0]).unwrap();
        assert!(!c.is_canonical());
        assert_eq!(canonicalize(&c).implicants(), &[x0]);

        let empty = Concept::raw(Arc::clone(&v), vec![]).unwrap();
        assert_eq!(canonicalize(&empty), empty);

        let dup = Concept::raw(Arc::clone(&v), vec![x0nx1, x0nx1]).unwrap();
        assert_eq!(canonicalize(&dup).implicants(), &[x0nx1]);
        assert_eq!(canonicalize(&canonicalize(&dup)), canonicalize(&dup));
    }

    #[test]
    fn implicant_ordering_and_rendering() {
        let v = vocab(&["x0", "x1", "x2"], &[]);
        let lit = |i, p| Implicant::from_literals([Literal::new(i, p)]).unwrap();
        let mut imps = vec![lit(2, false), lit(0, true), Implicant::TRUE, lit(0, false)];
        imps.sort();
        assert_eq!(imps, vec![Implicant::TRUE, lit(0, false), lit(0, true), lit(2, false)]);
        let both = Implicant::from_literals([Literal::new(2, true), Literal::new(0, false)]).unwrap();
        assert_eq!(both.render(&v), "x0=0 & x2=1");
        assert_eq!(Implicant::TRUE.render(&v), "TRUE");
        assert_eq!(
            Implicant::from_literals([Literal::new(1, true), Literal::new(1, false)]).unwrap_err(),
            Error::ContradictoryLiteral { index: 1 }
        );
    }

    #[test]
    fn raw_rejects_foreign_indices() {
        let v = vocab(&["x0"], &[]);
        let imp = Implicant::from_literals([Literal::new(3, true)]).unwrap();
        assert_eq!(
            Concept::raw(v, vec![imp]).unwrap_err(),
            Error::IndexOutOfRange { index: 3, size: 1 }
        );
    }
}
