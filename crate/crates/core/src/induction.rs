//! Learning the weakest necessary-and-sufficient concept from labelled
//! examples.
//!
//! A cube is admissible when it contains at least one positive and no
//! negative; it is prime when dropping any one of its literals lets a
//! negative in. The learned concept is the disjunction of every prime, which
//! makes its extension the union of all admissible cubes.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::bits::Bits;
use crate::concept::{Concept, Implicant};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::pss::{same_vocabulary, Channel, DecisionState, Vocabulary, MAX_VOCABULARY};

/// Default ceiling on cubes visited by [`induce`].
pub const DEFAULT_CUBE_BUDGET: usize = 1 << 26;

/// Example pairs covering a subset of situations.
///
/// In closed-world mode every response to a covered situation that is not
/// listed as positive is negative. Otherwise only the explicit negatives are
/// negative and everything else is unconstrained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OstensiveDefinition {
    vocab: Arc<Vocabulary>,
    covered: BTreeSet<Bits>,
    positives: BTreeSet<Bits>,
    explicit_negatives: BTreeSet<Bits>,
    closed_world: bool,
}

impl OstensiveDefinition {
    /// Validates and builds a definition from full assignments.
    ///
    /// In closed-world mode explicit negatives must already be implied by the
    /// closed-world rule; they are checked and then dropped.
    pub fn new(
        vocab: Arc<Vocabulary>,
        covered: impl IntoIterator<Item = Bits>,
        positives: impl IntoIterator<Item = Bits>,
        negatives: impl IntoIterator<Item = Bits>,
        closed_world: bool,
    ) -> Result<Self> {
        let covered: BTreeSet<Bits> = covered.into_iter().collect();
        let positives: BTreeSet<Bits> = positives.into_iter().collect();
        let negatives: BTreeSet<Bits> = negatives.into_iter().collect();
        for s in &covered {
            if s.len() != vocab.sensor_count() {
                return Err(Error::LengthMismatch {
                    expected: vocab.sensor_count(),
                    found: s.len(),
                });
            }
        }
        for d in positives.iter().chain(&negatives) {
            vocab.check_assignment(*d)?;
        }
        for p in &positives {
            if !covered.contains(&vocab.project_bits(*p, Channel::Sensor)) {
                return Err(Error::UncoveredState {
                    state: p.to_string(),
                });
            }
        }
        if let Some(d) = positives.intersection(&negatives).next() {
            return Err(Error::Inconsistent {
                state: d.to_string(),
            });
        }
        if closed_world {
            if let Some(d) = negatives
                .iter()
                .find(|d| !covered.contains(&vocab.project_bits(**d, Channel::Sensor)))
            {
                return Err(Error::UncoveredState {
                    state: d.to_string(),
                });
            }
        }
        Ok(OstensiveDefinition {
            vocab,
            covered,
            positives,
            explicit_negatives: if closed_world { BTreeSet::new() } else { negatives },
            closed_world,
        })
    }

    /// Closed-world definition; covered situations are those of the positives
    /// plus any extra situations given.
    pub fn closed(
        vocab: Arc<Vocabulary>,
        extra_situations: impl IntoIterator<Item = Bits>,
        positives: impl IntoIterator<Item = Bits>,
    ) -> Result<Self> {
        let positives: Vec<Bits> = positives.into_iter().collect();
        let mut covered: BTreeSet<Bits> = extra_situations.into_iter().collect();
        for p in &positives {
            vocab.check_assignment(*p)?;
            covered.insert(vocab.project_bits(*p, Channel::Sensor));
        }
        Self::new(vocab, covered, positives, [], true)
    }

    /// Explicit-negative definition; covered situations are those of every
    /// labelled state.
    pub fn explicit(
        vocab: Arc<Vocabulary>,
        positives: impl IntoIterator<Item = Bits>,
        negatives: impl IntoIterator<Item = Bits>,
    ) -> Result<Self> {
        let positives: Vec<Bits> = positives.into_iter().collect();
        let negatives: Vec<Bits> = negatives.into_iter().collect();
        let mut covered = BTreeSet::new();
        for d in positives.iter().chain(&negatives) {
            vocab.check_assignment(*d)?;
            covered.insert(vocab.project_bits(*d, Channel::Sensor));
        }
        Self::new(vocab, covered, positives, negatives, false)
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn covered_situations(&self) -> &BTreeSet<Bits> {
        &self.covered
    }

    pub fn positive_assignments(&self) -> &BTreeSet<Bits> {
        &self.positives
    }

    pub fn explicit_negative_assignments(&self) -> &BTreeSet<Bits> {
        &self.explicit_negatives
    }

    pub fn is_closed_world(&self) -> bool {
        self.closed_world
    }

    pub fn positives(&self) -> Vec<DecisionState> {
        self.states(&self.positives)
    }

    /// Negatives under the definition's world assumption.
    pub fn negatives(&self) -> Vec<DecisionState> {
        let neg: BTreeSet<Bits> = self.negative_assignments().into_iter().collect();
        self.states(&neg)
    }

    fn states(&self, set: &BTreeSet<Bits>) -> Vec<DecisionState> {
        set.iter()
            .map(|&b| DecisionState::new(Arc::clone(&self.vocab), b).expect("validated"))
            .collect()
    }

    pub(crate) fn negative_assignments(&self) -> Vec<Bits> {
        if !self.closed_world {
            return self.explicit_negatives.iter().copied().collect();
        }
        let m = self.vocab.actuator_count();
        let mut out = Vec::new();
        for &s in &self.covered {
            for r in Bits::all(m) {
                let d = self.vocab.compose_bits(s, r).expect("lengths validated");
                if !self.positives.contains(&d) {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Same definition with one positive relabelled negative.
    pub fn demote(&self, positive: Bits) -> Result<Self> {
        if !self.positives.contains(&positive) {
            return Err(Error::Inconsistent {
                state: positive.to_string(),
            });
        }
        let mut next = self.clone();
        next.positives.remove(&positive);
        if !self.closed_world {
            next.explicit_negatives.insert(positive);
        }
        Ok(next)
    }

    /// The definition a concept induces under the same world assumption:
    /// every response to a covered situation in closed-world mode, only the
    /// labelled states otherwise.
    pub fn relabelled_by(&self, c: &Concept) -> Result<Self> {
        same_vocabulary(&self.vocab, c.vocabulary())?;
        let states: Vec<Bits> = if self.closed_world {
            let m = self.vocab.actuator_count();
            let mut all = Vec::new();
            for &s in &self.covered {
                for r in Bits::all(m) {
                    all.push(self.vocab.compose_bits(s, r)?);
                }
            }
            all
        } else {
            self.positives.iter().chain(&self.explicit_negatives).copied().collect()
        };
        let (positives, negatives): (Vec<Bits>, Vec<Bits>) =
            states.into_iter().partition(|&d| c.holds_bits(d));
        Self::new(
            Arc::clone(&self.vocab),
            self.covered.clone(),
            positives,
            if self.closed_world { Vec::new() } else { negatives },
            self.closed_world,
        )
    }

    pub fn labelled_space(&self) -> LabelledSpace {
        LabelledSpace {
            n: self.vocab.len(),
            positives: self.positives.iter().copied().collect(),
            negatives: {
                let mut v = self.negative_assignments();
                v.sort();
                v
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Positive,
    Negative,
    DontCare,
}

/// Materialized labels; states in neither list are don't-cares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledSpace {
    n: usize,
    positives: Vec<Bits>,
    negatives: Vec<Bits>,
}

impl LabelledSpace {
    pub fn positives(&self) -> &[Bits] {
        &self.positives
    }

    pub fn negatives(&self) -> &[Bits] {
        &self.negatives
    }

    pub fn dont_care_count(&self) -> u64 {
        (1u64 << self.n) - self.positives.len() as u64 - self.negatives.len() as u64
    }

    pub fn label(&self, d: Bits) -> Label {
        if self.positives.binary_search(&d).is_ok() {
            Label::Positive
        } else if self.negatives.binary_search(&d).is_ok() {
            Label::Negative
        } else {
            Label::DontCare
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct InduceOptions {
    pub exec: Execution,
    pub max_cubes: usize,
}

impl Default for InduceOptions {
    fn default() -> Self {
        InduceOptions {
            exec: Execution::default(),
            max_cubes: DEFAULT_CUBE_BUDGET,
        }
    }
}

/// The canonical disjunction of all prime admissible cubes.
pub fn induce(o: &OstensiveDefinition) -> Result<Concept> {
    induce_with(o, InduceOptions::default())
}

/// Breadth-first expansion from the positive minterms. Each level holds
/// cubes with one more free symbol than the last; a cube none of whose
/// one-literal generalizations is admissible is prime.
pub fn induce_with(o: &OstensiveDefinition, opts: InduceOptions) -> Result<Concept> {
    let n = o.vocab.len();
    if n > MAX_VOCABULARY {
        return Err(Error::VocabularyTooLarge {
            size: n,
            cap: MAX_VOCABULARY,
        });
    }
    if o.positives.is_empty() {
        return Err(Error::EmptyPositives);
    }
    let negatives: Vec<u32> = o.negative_assignments().iter().map(|d| d.word()).collect();
    if let Some(d) = o
        .negative_assignments()
        .into_iter()
        .find(|d| o.positives.contains(d))
    {
        return Err(Error::Inconsistent {
            state: d.to_string(),
        });
    }
    let avoids_negatives = |cube: &Implicant| !negatives.iter().any(|&x| cube.matches_word(x));

    let mut level: Vec<Implicant> = o.positives.iter().map(|&p| Implicant::minterm(p)).collect();
    let mut visited = level.len();
    let mut primes = Vec::new();
    while !level.is_empty() {
        let candidates: Vec<Implicant> = {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for cube in &level {
                for lit in cube.literals() {
                    let up = cube.without(lit.index);
                    if seen.insert(up) {
                        out.push(up);
                    }
                }
            }
            out
        };
        let admissible: HashSet<Implicant> = candidates
            .iter()
            .zip(exec::map(opts.exec, &candidates, avoids_negatives))
            .filter(|(_, ok)| *ok)
            .map(|(c, _)| *c)
            .collect();
        for cube in &level {
            if !cube.literals().any(|l| admissible.contains(&cube.without(l.index))) {
                primes.push(*cube);
            }
        }
        visited += admissible.len();
        if visited > opts.max_cubes {
            return Err(Error::ResourceExceeded {
                budget: opts.max_cubes,
            });
        }
        level = candidates
            .into_iter()
            .filter(|c| admissible.contains(c))
            .collect();
    }
    Concept::new(Arc::clone(&o.vocab), primes)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsReport {
    /// Every positive satisfies the concept.
    pub sufficient: bool,
    /// Every negative falsifies the concept.
    pub necessary: bool,
    pub unsatisfied_positives: Vec<DecisionState>,
    pub satisfied_negatives: Vec<DecisionState>,
}

impl NsReport {
    pub fn passes(&self) -> bool {
        self.sufficient && self.necessary
    }
}

pub fn verify_ns(c: &Concept, o: &OstensiveDefinition) -> Result<NsReport> {
    same_vocabulary(c.vocabulary(), &o.vocab)?;
    let unsatisfied_positives: Vec<DecisionState> = o
        .positives()
        .into_iter()
        .filter(|d| !c.holds_bits(d.assignment()))
        .collect();
    let satisfied_negatives: Vec<DecisionState> = o
        .negatives()
        .into_iter()
        .filter(|d| c.holds_bits(d.assignment()))
        .collect();
    Ok(NsReport {
        sufficient: unsatisfied_positives.is_empty(),
        necessary: satisfied_negatives.is_empty(),
        unsatisfied_positives,
        satisfied_negatives,
    })
}
