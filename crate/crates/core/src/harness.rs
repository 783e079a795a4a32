//! Scenario runs, replayable transcripts, the instruction-set demonstration
//! and the shipped `assist` fixtures.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::agency::{abduct, decide, explain, Explanation};
use crate::bits::Bits;
use crate::concept::{extension, Concept};
use crate::error::{Error, Result};
use crate::formats::{parse_cpt, parse_nrm, parse_odc, ParseMode};
use crate::induction::{induce, OstensiveDefinition};
use crate::norms::learn_ethics;
use crate::pss::{compose, same_vocabulary, DecisionState};
use crate::scenario::Scenario;
use crate::semiosis::{activation, infer_intent, Lexicon, Mode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    pub state: DecisionState,
    pub activations: BTreeSet<String>,
    pub intent: Vec<crate::concept::Implicant>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Decided {
        explanation: Explanation,
        activations: BTreeSet<String>,
    },
    /// No response satisfied every goal; nothing was enacted.
    NoEthicalResponse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptRecord {
    pub episode: usize,
    pub situation: Bits,
    pub observed: Option<Observation>,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub scenario: String,
    pub seed: u64,
    pub records: Vec<TranscriptRecord>,
}

impl Transcript {
    pub fn dilemmas(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.outcome == Outcome::NoEthicalResponse)
            .count()
    }

    pub fn decisions(&self) -> impl Iterator<Item = &Explanation> {
        self.records.iter().filter_map(|r| match &r.outcome {
            Outcome::Decided { explanation, .. } => Some(explanation),
            Outcome::NoEthicalResponse => None,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "#transcript scenario={} seed={} episodes={}",
            self.scenario,
            self.seed,
            self.records.len()
        );
        for r in &self.records {
            let _ = writeln!(out, "episode {} s={}", r.episode, r.situation);
            if let Some(obs) = &r.observed {
                let _ = writeln!(
                    out,
                    "  observed {} [{}] {}",
                    obs.state,
                    Mode::Observed,
                    tokens(&obs.activations)
                );
                for imp in &obs.intent {
                    let _ = writeln!(out, "  intent {}", imp.render(obs.state.vocabulary()));
                }
            }
            match &r.outcome {
                Outcome::Decided {
                    explanation,
                    activations,
                } => {
                    let _ = writeln!(
                        out,
                        "  enacted {} [{}] {}",
                        explanation.state,
                        Mode::Enacted,
                        tokens(activations)
                    );
                    for line in explanation.render().lines() {
                        let _ = writeln!(out, "  {line}");
                    }
                }
                Outcome::NoEthicalResponse => {
                    let _ = writeln!(out, "  NoEthicalResponse");
                }
            }
        }
        let _ = writeln!(out, "dilemmas {}", self.dilemmas());
        out
    }

    /// Rebuilds the transcript from the recorded situations, observations
    /// and responses without re-deciding.
    pub fn replay(&self, goals: &[Concept], lex: &Lexicon) -> Result<Transcript> {
        let records = self
            .records
            .iter()
            .map(|r| {
                let observed = r
                    .observed
                    .as_ref()
                    .map(|o| observe(&o.state, goals, lex))
                    .transpose()?;
                let outcome = match &r.outcome {
                    Outcome::Decided { explanation, .. } => {
                        enact(goals, lex, r.situation, explanation.response())?
                    }
                    Outcome::NoEthicalResponse => Outcome::NoEthicalResponse,
                };
                Ok(TranscriptRecord {
                    episode: r.episode,
                    situation: r.situation,
                    observed,
                    outcome,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Transcript {
            scenario: self.scenario.clone(),
            seed: self.seed,
            records,
        })
    }
}

fn tokens(set: &BTreeSet<String>) -> String {
    if set.is_empty() {
        "-".into()
    } else {
        set.iter().cloned().collect::<Vec<_>>().join(",")
    }
}

fn observe(d: &DecisionState, goals: &[Concept], lex: &Lexicon) -> Result<Observation> {
    Ok(Observation {
        state: d.clone(),
        activations: activation(d, lex, Mode::Observed)?,
        intent: infer_intent(d, goals)?,
    })
}

fn enact(goals: &[Concept], lex: &Lexicon, s: Bits, r: Bits) -> Result<Outcome> {
    let explanation = explain(goals, s, r)?;
    let activations = activation(&explanation.state, lex, Mode::Enacted)?;
    Ok(Outcome::Decided {
        explanation,
        activations,
    })
}

/// Runs every episode of the scenario. Dilemmas are recorded and the run
/// continues.
pub fn run_scenario(sc: &Scenario, goals: &[Concept], lex: &Lexicon, seed: u64) -> Result<Transcript> {
    if goals.is_empty() {
        return Err(Error::NoGoals);
    }
    for g in goals {
        same_vocabulary(&sc.vocab, g.vocabulary())?;
    }
    same_vocabulary(&sc.vocab, lex.vocabulary())?;
    let records = sc
        .episodes(seed, sc.episode_limit)
        .into_iter()
        .map(|ep| {
            let observed = ep
                .observed
                .as_ref()
                .map(|d| observe(d, goals, lex))
                .transpose()?;
            let outcome = match decide(goals, ep.situation) {
                Ok(d) => enact(goals, lex, ep.situation, d.response)?,
                Err(Error::NoEthicalResponse { .. }) => Outcome::NoEthicalResponse,
                Err(e) => return Err(e),
            };
            Ok(TranscriptRecord {
                episode: ep.index,
                situation: ep.situation,
                observed,
                outcome,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Transcript {
        scenario: sc.name.clone(),
        seed,
        records,
    })
}

/// The toy machine's next accumulator for opcode `o1 o0` and accumulator
/// `a`: NOP keeps it, SET sets it, CLR clears it, NOT inverts it.
pub fn isa_next(o1: bool, o0: bool, a: bool) -> bool {
    match (o1, o0) {
        (false, false) => a,
        (false, true) => true,
        (true, false) => false,
        (true, true) => !a,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsaReport {
    pub concept: Concept,
    /// `(situation, correct response)` for all eight situations.
    pub table: Vec<(Bits, Bits)>,
    /// `(situation, abducted responses)` for all eight situations.
    pub abducted: Vec<(Bits, Vec<Bits>)>,
    pub extension_matches_table: bool,
    pub one_response_per_situation: bool,
}

impl IsaReport {
    pub fn passed(&self) -> bool {
        self.extension_matches_table && self.one_response_per_situation
    }

    pub fn render(&self) -> String {
        let mut out = String::from("#isa sensors=o1,o0,a actuators=a_next\n");
        for imp in self.concept.implicants() {
            let _ = writeln!(out, "concept {}", imp.render(self.concept.vocabulary()));
        }
        for (s, rs) in &self.abducted {
            let rs: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(out, "abduct s={s} -> [{}]", rs.join(","));
        }
        let _ = writeln!(out, "extension_matches_table {}", self.extension_matches_table);
        let _ = writeln!(out, "one_response_per_situation {}", self.one_response_per_situation);
        out
    }
}

/// Learns the instruction set from its full truth table and checks that
/// acting on the learned concept reproduces it.
pub fn isa_demo() -> Result<IsaReport> {
    let sc = Scenario::builtin("isa")?;
    let vocab = Arc::clone(&sc.vocab);
    let table: Vec<(Bits, Bits)> = Bits::all(3)
        .map(|s| (s, Bits::from_bools(&[isa_next(s.get(0), s.get(1), s.get(2))])))
        .collect();
    let positives = table
        .iter()
        .map(|&(s, r)| Ok(compose(s, r, &vocab)?.assignment()))
        .collect::<Result<Vec<_>>>()?;
    let o = OstensiveDefinition::closed(Arc::clone(&vocab), Bits::all(3), positives.iter().copied())?;
    let concept = induce(&o)?;
    let ext: Vec<Bits> = extension(&concept)?.iter().map(|d| d.assignment()).collect();
    let mut want = positives.clone();
    want.sort();
    let abducted = table
        .iter()
        .map(|&(s, _)| Ok((s, abduct(&concept, s)?)))
        .collect::<Result<Vec<_>>>()?;
    let one_response_per_situation = abducted
        .iter()
        .zip(&table)
        .all(|((_, rs), (_, r))| rs.as_slice() == [*r]);
    Ok(IsaReport {
        concept,
        table,
        abducted,
        extension_matches_table: ext == want,
        one_response_per_situation,
    })
}

/// The shipped `assist` world: lexicon, learned ethics and goals.
#[derive(Debug, Clone)]
pub struct AssistFixture {
    pub scenario: Scenario,
    pub lexicon: Lexicon,
    pub ethics: Concept,
    /// Respond to requests by speaking.
    pub task: Concept,
    /// Comfort whoever is hurt.
    pub care: Concept,
    /// A goal that requires harm, contradicting the ethics concept.
    pub contradiction: Concept,
}

impl AssistFixture {
    /// Task, care, then ethics.
    pub fn goals(&self) -> Vec<Concept> {
        vec![self.task.clone(), self.care.clone(), self.ethics.clone()]
    }
}

pub mod fixtures {
    pub const ETHICS_NRM: &str = include_str!("../fixtures/assist/ethics.nrm");
    pub const HURT_ODC: &str = include_str!("../fixtures/assist/hurt.odc");
    pub const COMFORT_ODC: &str = include_str!("../fixtures/assist/comfort.odc");
    pub const HELLO_ODC: &str = include_str!("../fixtures/assist/hello.odc");
    pub const TASK_CPT: &str = include_str!("../fixtures/assist/task.cpt");
    pub const CARE_CPT: &str = include_str!("../fixtures/assist/care.cpt");
    pub const CONTRADICTION_CPT: &str = include_str!("../fixtures/assist/contradiction.cpt");
}

pub fn assist_fixture() -> Result<AssistFixture> {
    let scenario = Scenario::builtin("assist")?;
    let vocab = Arc::clone(&scenario.vocab);
    let rebind = |c: Concept| -> Result<Concept> {
        same_vocabulary(&vocab, c.vocabulary())?;
        Concept::raw(Arc::clone(&vocab), c.implicants().to_vec())
    };
    let mut lexicon = Lexicon::new(Arc::clone(&vocab));
    for (token, text) in [
        ("comfort", fixtures::COMFORT_ODC),
        ("hello", fixtures::HELLO_ODC),
        ("hurt", fixtures::HURT_ODC),
    ] {
        let o = parse_odc(text, true)?;
        same_vocabulary(&vocab, o.vocabulary())?;
        let o = OstensiveDefinition::new(
            Arc::clone(&vocab),
            o.covered_situations().iter().copied(),
            o.positive_assignments().iter().copied(),
            [],
            true,
        )?;
        lexicon.learn(token, &o)?;
    }
    Ok(AssistFixture {
        ethics: rebind(learn_ethics(&parse_nrm(fixtures::ETHICS_NRM)?)?)?,
        task: rebind(parse_cpt(fixtures::TASK_CPT, ParseMode::Strict)?)?,
        care: rebind(parse_cpt(fixtures::CARE_CPT, ParseMode::Strict)?)?,
        contradiction: rebind(parse_cpt(fixtures::CONTRADICTION_CPT, ParseMode::Strict)?)?,
        lexicon,
        scenario,
    })
}
