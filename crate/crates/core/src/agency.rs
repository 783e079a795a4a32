//! Acting on concepts: abduction of responses, goal-constrained decisions
//! with explanations, counterfactual queries, and learning a concept from an
//! objective function by exploration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::bits::Bits;
use crate::concept::{conjoin, Concept, Implicant};
use crate::error::{Error, Result};
use crate::induction::{induce, OstensiveDefinition};
use crate::pss::{compose, same_vocabulary, Channel, DecisionState, Vocabulary};
use crate::rng::{below, seeded, STREAM_POLICY};
use crate::scenario::Scenario;

/// Every response that makes the concept true in situation `s`, in
/// lexicographic order.
pub fn abduct(c: &Concept, s: Bits) -> Result<Vec<Bits>> {
    let vocab = c.vocabulary();
    if s.len() != vocab.sensor_count() {
        return Err(Error::LengthMismatch {
            expected: vocab.sensor_count(),
            found: s.len(),
        });
    }
    let n = vocab.len();
    let m = vocab.actuator_count();
    let situation_part = vocab.compose_bits(s, Bits::zeros(m))?;
    let sensor_mask = vocab.compose_bits(Bits::from_word(s.len(), u32::MAX), Bits::zeros(m))?;
    let mut out = BTreeSet::new();
    for imp in c.implicants() {
        let sensor_care = imp.care_mask() & sensor_mask.word();
        if situation_part.word() & sensor_care != imp.value_mask() & sensor_care {
            continue;
        }
        let care = vocab
            .project_bits(Bits::from_word(n, imp.care_mask()), Channel::Actuator)
            .word();
        let value = vocab
            .project_bits(Bits::from_word(n, imp.value_mask()), Channel::Actuator)
            .word();
        let free = !care & crate::bits::low_mask(m);
        let mut sub = free;
        loop {
            out.insert(Bits::from_word(m, value | sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Explanation {
    pub state: DecisionState,
    /// Per goal, in goal order, the implicants satisfied by the chosen pair.
    pub satisfied: Vec<Vec<Implicant>>,
    /// Responses ordered before the chosen one, each with the first goal it
    /// violates.
    pub rejected: Vec<(Bits, usize)>,
}

impl Explanation {
    pub fn situation(&self) -> Bits {
        self.state.situation()
    }

    pub fn response(&self) -> Bits {
        self.state.response()
    }

    pub fn render(&self) -> String {
        let vocab = self.state.vocabulary();
        let mut out = String::new();
        let _ = writeln!(out, "chosen s={} r={}", self.situation(), self.response());
        for (g, imps) in self.satisfied.iter().enumerate() {
            let _ = writeln!(out, "goal {g}");
            for imp in imps {
                let _ = writeln!(out, "because: {}", imp.render(vocab));
            }
        }
        for (r, g) in &self.rejected {
            let _ = writeln!(out, "rejected r={r} violates goal {g}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub response: Bits,
    pub explanation: Explanation,
}

/// Conjoins the goals, abducts, and takes the lexicographically first
/// response. Fails rather than relaxing any goal.
pub fn decide(goals: &[Concept], s: Bits) -> Result<Decision> {
    let (first, rest) = goals.split_first().ok_or(Error::NoGoals)?;
    let mut joint = first.clone();
    for g in rest {
        joint = conjoin(&joint, g)?;
    }
    let response = *abduct(&joint, s)?
        .first()
        .ok_or_else(|| Error::NoEthicalResponse {
            situation: s.to_string(),
        })?;
    Ok(Decision {
        response,
        explanation: explain(goals, s, response)?,
    })
}

/// Explanation of a given pair against the goals: the satisfied implicants
/// of each goal and, for every response ordered before it, the first goal
/// that response violates.
pub fn explain(goals: &[Concept], s: Bits, response: Bits) -> Result<Explanation> {
    let vocab = goals.first().ok_or(Error::NoGoals)?.vocabulary();
    let state = compose(s, response, vocab)?;
    let satisfied = goals
        .iter()
        .map(|g| g.satisfied_by(&state))
        .collect::<Result<Vec<_>>>()?;
    let rejected = Bits::all(vocab.actuator_count())
        .take_while(|r| *r < response)
        .filter_map(|r| {
            let d = vocab.compose_bits(s, r).ok()?;
            goals.iter().position(|g| !g.holds_bits(d)).map(|g| (r, g))
        })
        .collect();
    Ok(Explanation {
        state,
        satisfied,
        rejected,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterfactual {
    pub before: bool,
    pub after: bool,
    pub changed: bool,
}

/// Evaluates the concept on `d` and on `d` with the listed bits inverted.
/// Repeated indices flip once.
pub fn counterfactual(c: &Concept, d: &DecisionState, flips: &[usize]) -> Result<Counterfactual> {
    same_vocabulary(c.vocabulary(), d.vocabulary())?;
    let n = d.vocabulary().len();
    let mut mask = 0u32;
    for &i in flips {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, size: n });
        }
        mask |= 1 << i;
    }
    let before = c.holds_bits(d.assignment());
    let after = c.holds_bits(Bits::from_word(n, d.assignment().word() ^ mask));
    Ok(Counterfactual {
        before,
        after,
        changed: before != after,
    })
}

/// Integer-linear score over decision-state bits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ObjectiveFunction {
    pub weights: BTreeMap<usize, i64>,
    pub bias: i64,
    pub threshold: i64,
}

impl ObjectiveFunction {
    pub fn score(&self, d: &DecisionState) -> i64 {
        self.score_bits(d.assignment())
    }

    pub(crate) fn score_bits(&self, d: Bits) -> i64 {
        self.bias
            + self
                .weights
                .iter()
                .filter(|(&i, _)| i < d.len() && d.get(i))
                .map(|(_, w)| w)
                .sum::<i64>()
    }

    pub fn check(&self, vocab: &Vocabulary) -> Result<()> {
        match self.weights.keys().find(|&&i| i >= vocab.len()) {
            Some(&i) => Err(Error::IndexOutOfRange {
                index: i,
                size: vocab.len(),
            }),
            None => Ok(()),
        }
    }
}

/// Labels experiences by the objective: at or above threshold positive,
/// below it negative. Unexperienced states stay unconstrained.
pub fn objective_to_ostensive(
    f: &ObjectiveFunction,
    experiences: &[DecisionState],
) -> Result<OstensiveDefinition> {
    let first = experiences.first().ok_or(Error::EmptyExperiences)?;
    let vocab = Arc::clone(first.vocabulary());
    f.check(&vocab)?;
    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    for d in experiences {
        same_vocabulary(&vocab, d.vocabulary())?;
        if f.score(d) >= f.threshold {
            positives.push(d.assignment());
        } else {
            negatives.push(d.assignment());
        }
    }
    OstensiveDefinition::explicit(vocab, positives, negatives)
}

/// Runs `budget` episodes with a seeded exploration policy and returns the
/// experienced states in episode order.
///
/// The policy picks uniformly among the responses not yet tried in the
/// current situation, starting over once all have been tried. With a cyclic
/// scenario and a budget of at least |S|·|R| every state is experienced.
pub fn explore(env: &Scenario, budget: usize, seed: u64) -> Result<Vec<DecisionState>> {
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let m = env.vocab.actuator_count();
    let mut policy = seeded(seed, STREAM_POLICY);
    let mut untried: BTreeMap<Bits, Vec<Bits>> = BTreeMap::new();
    env.episodes(seed, budget)
        .into_iter()
        .map(|ep| {
            let pool = untried.entry(ep.situation).or_default();
            if pool.is_empty() {
                pool.extend(Bits::all(m));
            }
            let r = pool.remove(below(&mut policy, pool.len() as u64) as usize);
            compose(ep.situation, r, &env.vocab)
        })
        .collect()
}

/// Objective function to ostensive definition to concept.
pub fn explore_and_learn(
    f: &ObjectiveFunction,
    env: &Scenario,
    budget: usize,
    seed: u64,
) -> Result<Concept> {
    let experiences = explore(env, budget, seed)?;
    induce(&objective_to_ostensive(f, &experiences)?)
}
