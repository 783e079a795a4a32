//! Majority norms from a population of labellers.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bits::Bits;
use crate::concept::Concept;
use crate::error::{Error, Result};
use crate::induction::{induce, OstensiveDefinition};
use crate::pss::Vocabulary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vote {
    Ethical,
    Unethical,
    Abstain,
}

impl Vote {
    pub fn from_char(c: char) -> Option<Vote> {
        match c {
            '+' => Some(Vote::Ethical),
            '-' => Some(Vote::Unethical),
            '.' => Some(Vote::Abstain),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Vote::Ethical => '+',
            Vote::Unethical => '-',
            Vote::Abstain => '.',
        }
    }
}

/// Per-state votes, one column per labeller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormCorpus {
    vocab: Arc<Vocabulary>,
    labelers: usize,
    votes: BTreeMap<Bits, Vec<Vote>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    Negative,
    Excluded,
}

impl NormCorpus {
    pub fn new(vocab: Arc<Vocabulary>, labelers: usize) -> Self {
        NormCorpus {
            vocab,
            labelers,
            votes: BTreeMap::new(),
        }
    }

    /// Adds or replaces the votes on one state.
    pub fn insert(&mut self, state: Bits, votes: Vec<Vote>) -> Result<()> {
        self.vocab.check_assignment(state)?;
        if votes.len() != self.labelers {
            return Err(Error::LengthMismatch {
                expected: self.labelers,
                found: votes.len(),
            });
        }
        self.votes.insert(state, votes);
        Ok(())
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn labelers(&self) -> usize {
        self.labelers
    }

    pub fn votes(&self) -> &BTreeMap<Bits, Vec<Vote>> {
        &self.votes
    }

    /// The corpus restricted to the listed labeller columns, in the order
    /// given.
    pub fn subgroup(&self, columns: &[usize]) -> Result<NormCorpus> {
        if let Some(&c) = columns.iter().find(|&&c| c >= self.labelers) {
            return Err(Error::IndexOutOfRange {
                index: c,
                size: self.labelers,
            });
        }
        Ok(NormCorpus {
            vocab: Arc::clone(&self.vocab),
            labelers: columns.len(),
            votes: self
                .votes
                .iter()
                .map(|(s, v)| (*s, columns.iter().map(|&c| v[c]).collect()))
                .collect(),
        })
    }
}

/// Strict majority among non-abstaining votes; ties and all-abstain rows
/// are excluded.
pub fn verdict(votes: &[Vote]) -> Verdict {
    let yes = votes.iter().filter(|v| **v == Vote::Ethical).count();
    let no = votes.iter().filter(|v| **v == Vote::Unethical).count();
    match yes.cmp(&no) {
        std::cmp::Ordering::Greater => Verdict::Positive,
        std::cmp::Ordering::Less => Verdict::Negative,
        std::cmp::Ordering::Equal => Verdict::Excluded,
    }
}

/// Explicit-negative ostensive definition of the majority view.
pub fn aggregate_majority(n: &NormCorpus) -> Result<OstensiveDefinition> {
    if n.labelers == 0 || n.votes.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    for (state, votes) in &n.votes {
        match verdict(votes) {
            Verdict::Positive => positives.push(*state),
            Verdict::Negative => negatives.push(*state),
            Verdict::Excluded => {}
        }
    }
    OstensiveDefinition::explicit(Arc::clone(&n.vocab), positives, negatives)
}

/// The ethics concept: induction over the majority labels.
pub fn learn_ethics(n: &NormCorpus) -> Result<Concept> {
    induce(&aggregate_majority(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pss::Channel;

    fn votes(s: &str) -> Vec<Vote> {
        s.chars().map(|c| Vote::from_char(c).unwrap()).collect()
    }

    fn vocab() -> Arc<Vocabulary> {
        Arc::new(
            Vocabulary::from_layout([
                ("danger", Channel::Sensor, false),
                ("help", Channel::Actuator, false),
                ("harm", Channel::Actuator, false),
            ])
            .unwrap(),
        )
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(verdict(&votes("++-")), Verdict::Positive);
        assert_eq!(verdict(&votes("+-")), Verdict::Excluded);
        assert_eq!(verdict(&votes(".--")), Verdict::Negative);
        assert_eq!(verdict(&votes("...")), Verdict::Excluded);
    }

    fn corpus(deviant: Option<Bits>) -> NormCorpus {
        let mut n = NormCorpus::new(vocab(), 3);
        for d in Bits::all(3) {
            let ok = !d.get(2);
            let mut row = vec![if ok { Vote::Ethical } else { Vote::Unethical }; 3];
            if Some(d) == deviant {
                row[1] = if ok { Vote::Unethical } else { Vote::Ethical };
            }
            n.insert(d, row).unwrap();
        }
        n
    }

    #[test]
    fn unanimous_and_deviant_agree() {
        let c = learn_ethics(&corpus(None)).unwrap();
        assert_eq!(c.to_string(), "(harm=0)");
        for d in Bits::all(3) {
            assert_eq!(learn_ethics(&corpus(Some(d))).unwrap(), c);
        }
    }

    #[test]
    fn ties_are_excluded() {
        let mut n = NormCorpus::new(vocab(), 2);
        for d in Bits::all(3) {
            n.insert(d, votes("+-")).unwrap();
        }
        let o = aggregate_majority(&n).unwrap();
        assert!(o.positives().is_empty() && o.negatives().is_empty());
        assert_eq!(learn_ethics(&n).unwrap_err(), Error::EmptyPositives);
    }

    #[test]
    fn single_labeller_is_identity() {
        let full = corpus(None);
        let one = full.subgroup(&[0]).unwrap();
        let o = aggregate_majority(&one).unwrap();
        for (d, v) in one.votes() {
            let want = v[0] == Vote::Ethical;
            assert_eq!(o.positive_assignments().contains(d), want);
            assert_eq!(o.explicit_negative_assignments().contains(d), !want);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(aggregate_majority(&NormCorpus::new(vocab(), 3)).unwrap_err(), Error::EmptyCorpus);
        let mut n = NormCorpus::new(vocab(), 3);
        assert!(matches!(
            n.insert(Bits::zeros(3), votes("++")),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(corpus(None).subgroup(&[3]).is_err());
    }
}
