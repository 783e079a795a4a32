//! Triadic symbols grounded in perceptual states.
//!
//! A symbol's interpretant is a concept over the shared vocabulary. Signs
//! are responses restricted to transmittable actuator bits and referents are
//! remembered decision states. The same interpretant is consulted whether
//! the agent enacts a state or observes another agent in it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::agency::abduct;
use crate::bits::Bits;
use crate::concept::{conjoin, Concept, Implicant};
use crate::error::{Error, Result};
use crate::induction::{induce, OstensiveDefinition};
use crate::pss::{same_vocabulary, Channel, DecisionState, Vocabulary};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTriad {
    token: String,
    interpretant: Concept,
    sign_patterns: BTreeSet<Bits>,
    referent_memory: BTreeSet<Bits>,
}

impl SymbolTriad {
    /// Assembles a triad from an interpretant and remembered states,
    /// deriving sign patterns from the memory.
    pub fn from_parts(
        token: &str,
        interpretant: Concept,
        memory: impl IntoIterator<Item = Bits>,
    ) -> Result<Self> {
        check_token(token)?;
        let mut triad = SymbolTriad {
            token: token.to_string(),
            interpretant,
            sign_patterns: BTreeSet::new(),
            referent_memory: BTreeSet::new(),
        };
        for d in memory {
            triad.commit(d)?;
        }
        Ok(triad)
    }

    pub fn token(&self) -> &str {
        &self.token
    }

    pub fn interpretant(&self) -> &Concept {
        &self.interpretant
    }

    pub fn sign_patterns(&self) -> &BTreeSet<Bits> {
        &self.sign_patterns
    }

    pub fn memory(&self) -> Vec<DecisionState> {
        let vocab = self.interpretant.vocabulary();
        self.referent_memory
            .iter()
            .map(|&d| DecisionState::new(Arc::clone(vocab), d).expect("validated"))
            .collect()
    }

    pub fn memory_assignments(&self) -> &BTreeSet<Bits> {
        &self.referent_memory
    }

    /// Appends an experienced state to referent memory.
    pub fn commit(&mut self, d: Bits) -> Result<()> {
        let vocab = Arc::clone(self.interpretant.vocabulary());
        vocab.check_assignment(d)?;
        if !self.interpretant.holds_bits(d) {
            return Err(Error::UnsoundMemory {
                token: self.token.clone(),
                state: d.to_string(),
            });
        }
        self.referent_memory.insert(d);
        let sign = sign_of(&vocab, vocab.project_bits(d, Channel::Actuator));
        if sign.word() != 0 {
            self.sign_patterns.insert(sign);
        }
        Ok(())
    }
}

/// Transmittable bits of a response, in actuator order.
pub fn sign_of(vocab: &Vocabulary, response: Bits) -> Bits {
    let positions = vocab.transmittable_positions();
    let bits: Vec<bool> = positions.iter().map(|&p| response.get(p)).collect();
    Bits::from_bools(&bits)
}

fn check_token(token: &str) -> Result<()> {
    let ok = !token.is_empty()
        && token
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidToken(token.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    vocab: Arc<Vocabulary>,
    triads: BTreeMap<String, SymbolTriad>,
}

impl Lexicon {
    pub fn new(vocab: Arc<Vocabulary>) -> Self {
        Lexicon {
            vocab,
            triads: BTreeMap::new(),
        }
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn len(&self) -> usize {
        self.triads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triads.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<&SymbolTriad> {
        self.triads.get(token)
    }

    pub fn triads(&self) -> impl Iterator<Item = &SymbolTriad> {
        self.triads.values()
    }

    pub fn insert(&mut self, triad: SymbolTriad) -> Result<()> {
        same_vocabulary(&self.vocab, triad.interpretant.vocabulary())?;
        if self.triads.contains_key(&triad.token) {
            return Err(Error::DuplicateToken(triad.token));
        }
        self.triads.insert(triad.token.clone(), triad);
        Ok(())
    }

    /// Learns a symbol and adds it.
    pub fn learn(&mut self, token: &str, o: &OstensiveDefinition) -> Result<&SymbolTriad> {
        if self.triads.contains_key(token) {
            return Err(Error::DuplicateToken(token.to_string()));
        }
        self.insert(learn_symbol(token, o)?)?;
        Ok(&self.triads[token])
    }

    /// Appends a state to a symbol's referent memory.
    pub fn commit(&mut self, token: &str, d: &DecisionState) -> Result<()> {
        same_vocabulary(&self.vocab, d.vocabulary())?;
        self.triads
            .get_mut(token)
            .ok_or_else(|| Error::UnknownToken(token.to_string()))?
            .commit(d.assignment())
    }
}

/// Interpretant from induction; memory is the positives.
pub fn learn_symbol(token: &str, o: &OstensiveDefinition) -> Result<SymbolTriad> {
    check_token(token)?;
    let interpretant = induce(o)?;
    SymbolTriad::from_parts(token, interpretant, o.positive_assignments().iter().copied())
}

/// Every token whose interpretant holds on the state.
pub fn interpret(d: &DecisionState, lex: &Lexicon) -> Result<BTreeSet<String>> {
    same_vocabulary(&lex.vocab, d.vocabulary())?;
    Ok(lex
        .triads
        .values()
        .filter(|t| t.interpretant.holds_bits(d.assignment()))
        .map(|t| t.token.clone())
        .collect())
}

/// The first response in situation `s` that satisfies the interpretant and
/// carries one of the symbol's sign patterns.
pub fn convey(token: &str, s: Bits, lex: &Lexicon) -> Result<Bits> {
    let triad = lex
        .get(token)
        .ok_or_else(|| Error::UnknownToken(token.to_string()))?;
    abduct(&triad.interpretant, s)?
        .into_iter()
        .find(|&r| triad.sign_patterns.contains(&sign_of(&lex.vocab, r)))
        .ok_or_else(|| Error::NoAppropriateSign {
            token: token.to_string(),
            situation: s.to_string(),
        })
}

pub fn recall(token: &str, lex: &Lexicon) -> Result<Vec<DecisionState>> {
    lex.get(token)
        .map(SymbolTriad::memory)
        .ok_or_else(|| Error::UnknownToken(token.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DialogueRecord {
    pub state: DecisionState,
    pub tokens: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BootstrapReport {
    pub learned: Vec<SymbolTriad>,
    /// Unknown tokens that could not be learned, with the reason.
    pub unlearnable: Vec<(String, Error)>,
    /// Indices of records dropped because a known-token annotation was
    /// rejected by that token's interpretant.
    pub discarded: Vec<usize>,
}

/// Learns unknown tokens from annotated records.
///
/// Records annotated with a known token whose interpretant is false on the
/// record are dropped first. For each unknown token the remaining records
/// annotated with it are positives and all other remaining records are
/// negatives.
pub fn bootstrap(dialogues: &[DialogueRecord], lex: &Lexicon) -> Result<BootstrapReport> {
    for r in dialogues {
        same_vocabulary(&lex.vocab, r.state.vocabulary())?;
    }
    let unknown: BTreeSet<&str> = dialogues
        .iter()
        .flat_map(|r| r.tokens.iter())
        .filter(|t| lex.get(t).is_none())
        .map(String::as_str)
        .collect();
    if unknown.is_empty() {
        return Err(Error::NothingToBootstrap);
    }
    let mut report = BootstrapReport::default();
    let mut kept: Vec<&DialogueRecord> = Vec::new();
    for (i, r) in dialogues.iter().enumerate() {
        let contradicted = r.tokens.iter().any(|t| {
            lex.get(t)
                .is_some_and(|k| !k.interpretant.holds_bits(r.state.assignment()))
        });
        if contradicted {
            report.discarded.push(i);
        } else {
            kept.push(r);
        }
    }
    let covered: BTreeSet<Bits> = kept.iter().map(|r| r.state.situation()).collect();
    for token in unknown {
        let (pos, neg): (Vec<&DialogueRecord>, Vec<&DialogueRecord>) = kept.iter().partition(|r| r.tokens.contains(token));
        let learned = OstensiveDefinition::new(
            Arc::clone(&lex.vocab),
            covered.iter().copied(),
            pos.iter().map(|r| r.state.assignment()),
            neg.iter().map(|r| r.state.assignment()),
            false,
        )
        .and_then(|o| learn_symbol(token, &o));
        match learned {
            Ok(triad) => report.learned.push(triad),
            Err(e) => report.unlearnable.push((token.to_string(), e)),
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Enacted,
    Observed,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Enacted => "enacted",
            Mode::Observed => "observed",
        })
    }
}

/// Symbols active on a state. `mode` only tags the caller's record; the
/// result is the same interpretation either way.
pub fn activation(d: &DecisionState, lex: &Lexicon, mode: Mode) -> Result<BTreeSet<String>> {
    let _ = mode;
    interpret(d, lex)
}

/// The implicants of the observer's own goals that the observed state
/// satisfies, deduplicated in canonical order.
pub fn infer_intent(observed: &DecisionState, own_goals: &[Concept]) -> Result<Vec<Implicant>> {
    let mut out = BTreeSet::new();
    for g in own_goals {
        out.extend(g.satisfied_by(observed)?);
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpathyReport {
    pub observed: DecisionState,
    pub active_tokens: BTreeSet<String>,
    pub recalled: BTreeMap<String, Vec<DecisionState>>,
    pub attributed_intent: Vec<Implicant>,
    /// Responses the observer's own goals would seek in the observed
    /// situation.
    pub inferred_want: Vec<Bits>,
}

impl EmpathyReport {
    pub fn render(&self) -> String {
        let vocab = self.observed.vocabulary();
        let mut out = String::new();
        let _ = writeln!(out, "observed {} [other]", self.observed);
        for t in &self.active_tokens {
            let mem: Vec<String> = self.recalled[t].iter().map(|d| d.to_string()).collect();
            let _ = writeln!(out, "active {t} recalls [self] {}", mem.join(","));
        }
        for imp in &self.attributed_intent {
            let _ = writeln!(out, "intent {}", imp.render(vocab));
        }
        let want: Vec<String> = self.inferred_want.iter().map(|r| r.to_string()).collect();
        let _ = writeln!(out, "wants {}", want.join(","));
        out
    }
}

/// Interprets an observed state, recalls own experiences of the active
/// symbols, attributes intent in terms of own goals, and reports what those
/// goals would seek in the observed situation. An empty goal list imposes
/// no constraint.
pub fn empathise(observed: &DecisionState, lex: &Lexicon, own_goals: &[Concept]) -> Result<EmpathyReport> {
    let active_tokens = activation(observed, lex, Mode::Observed)?;
    let recalled = active_tokens
        .iter()
        .map(|t| Ok((t.clone(), recall(t, lex)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let attributed_intent = infer_intent(observed, own_goals)?;
    let mut joint = Concept::truth(Arc::clone(observed.vocabulary()));
    for g in own_goals {
        joint = conjoin(&joint, g)?;
    }
    let inferred_want = abduct(&joint, observed.situation())?;
    Ok(EmpathyReport {
        observed: observed.clone(),
        active_tokens,
        recalled,
        attributed_intent,
        inferred_want,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    /// hurt_obs | comfort speak(transmittable)
    fn vocab() -> Arc<Vocabulary> {
        Arc::new(
            Vocabulary::from_layout([
                ("hurt_obs", Channel::Sensor, false),
                ("comfort", Channel::Actuator, false),
                ("speak", Channel::Actuator, true),
            ])
            .unwrap(),
        )
    }

    fn state(s: &str) -> DecisionState {
        DecisionState::new(vocab(), b(s)).unwrap()
    }

    fn hurt_corpus() -> OstensiveDefinition {
        // closed world over both situations: every response when hurt
        let pos: Vec<Bits> = Bits::all(2)
            .map(|r| vocab().compose_bits(b("1"), r).unwrap())
            .collect();
        OstensiveDefinition::closed(vocab(), [b("0")], pos).unwrap()
    }

    fn lexicon() -> Lexicon {
        let mut lex = Lexicon::new(vocab());
        lex.learn("hurt", &hurt_corpus()).unwrap();
        // "hello": speak=1 in any situation
        let pos: Vec<Bits> = ["001", "011", "101", "111"].iter().map(|s| b(s)).collect();
        let o = OstensiveDefinition::closed(vocab(), [], pos).unwrap();
        lex.learn("hello", &o).unwrap();
        lex
    }

    #[test]
    fn learn_symbol_examples() {
        let t = learn_symbol("hurt", &hurt_corpus()).unwrap();
        assert_eq!(t.interpretant().to_string(), "(hurt_obs=1)");
        assert_eq!(t.memory().len(), 4);
        assert_eq!(t.sign_patterns().iter().map(|s| s.to_string()).collect::<Vec<_>>(), ["1"]);

        let o = OstensiveDefinition::explicit(vocab(), [b("110")], [b("000")]).unwrap();
        let t = learn_symbol("single", &o).unwrap();
        assert_eq!(t.memory().len(), 1);
        assert!(t.sign_patterns().is_empty(), "speak bit is zero");

        let mut lex = lexicon();
        assert_eq!(
            lex.learn("hurt", &hurt_corpus()).unwrap_err(),
            Error::DuplicateToken("hurt".into())
        );
        assert_eq!(
            learn_symbol("bad token", &hurt_corpus()).unwrap_err(),
            Error::InvalidToken("bad token".into())
        );
    }

    #[test]
    fn interpret_examples() {
        let lex = lexicon();
        assert_eq!(interpret(&state("100"), &lex).unwrap(), BTreeSet::from(["hurt".to_string()]));
        assert!(interpret(&state("100"), &Lexicon::new(vocab())).unwrap().is_empty());
        assert_eq!(interpret(&state("101"), &lex).unwrap().len(), 2);
    }

    #[test]
    fn convey_examples() {
        let lex = lexicon();
        assert_eq!(convey("hello", b("0"), &lex).unwrap(), b("01"));
        assert_eq!(convey("hurt", b("1"), &lex).unwrap(), b("01"));
        assert_eq!(convey("nope", b("0"), &lex).unwrap_err(), Error::UnknownToken("nope".into()));
        assert_eq!(
            convey("hurt", b("0"), &lex).unwrap_err(),
            Error::NoAppropriateSign {
                token: "hurt".into(),
                situation: "0".into()
            }
        );
    }

    #[test]
    fn recall_and_commit() {
        let mut lex = lexicon();
        let before = recall("hurt", &lex).unwrap();
        assert_eq!(before, hurt_corpus().positives());
        assert_eq!(recall("nope", &lex).unwrap_err(), Error::UnknownToken("nope".into()));

        let mut lex2 = Lexicon::new(vocab());
        let o = OstensiveDefinition::explicit(vocab(), [b("100")], [b("000")]).unwrap();
        lex2.learn("h", &o).unwrap();
        lex2.commit("h", &state("110")).unwrap();
        assert_eq!(recall("h", &lex2).unwrap().len(), 2);
        assert!(matches!(
            lex.commit("hurt", &state("000")),
            Err(Error::UnsoundMemory { .. })
        ));
    }

    #[test]
    fn mirror_activation() {
        let lex = lexicon();
        for d in Bits::all(3) {
            let d = DecisionState::new(vocab(), d).unwrap();
            assert_eq!(
                activation(&d, &lex, Mode::Enacted).unwrap(),
                activation(&d, &lex, Mode::Observed).unwrap()
            );
        }
        assert!(activation(&state("000"), &lex, Mode::Enacted).unwrap().is_empty());
    }

    #[test]
    fn infer_intent_examples() {
        let v = vocab();
        let goal = Concept::cubes(
            Arc::clone(&v),
            &[&[("hurt_obs", false)], &[("hurt_obs", true), ("comfort", true)]],
        )
        .unwrap();
        let got = infer_intent(&state("110"), std::slice::from_ref(&goal)).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].render(&v), "hurt_obs=1 & comfort=1");
        assert!(infer_intent(&state("100"), &[goal]).unwrap().is_empty());
        assert_eq!(
            infer_intent(&state("100"), &[Concept::truth(v)]).unwrap(),
            vec![Implicant::TRUE]
        );
    }

    #[test]
    fn empathise_examples() {
        let v = vocab();
        let goal = Concept::cubes(
            Arc::clone(&v),
            &[&[("hurt_obs", false)], &[("hurt_obs", true), ("comfort", true)]],
        )
        .unwrap();
        let lex = lexicon();
        let seen = state("100");
        let rep = empathise(&seen, &lex, &[goal]).unwrap();
        assert_eq!(rep.active_tokens, BTreeSet::from(["hurt".to_string()]));
        assert_eq!(rep.recalled["hurt"], recall("hurt", &lex).unwrap());
        assert!(rep.recalled["hurt"].contains(&seen));
        assert!(rep.attributed_intent.is_empty());
        assert_eq!(rep.inferred_want, vec![b("10"), b("11")]);

        let rep = empathise(&seen, &Lexicon::new(Arc::clone(&v)), &[Concept::truth(v)]).unwrap();
        assert!(rep.active_tokens.is_empty() && rep.recalled.is_empty());
        assert_eq!(rep.attributed_intent, vec![Implicant::TRUE]);
        assert_eq!(rep.inferred_want.len(), 4);
    }

    fn record(s: &str, tokens: &[&str]) -> DialogueRecord {
        DialogueRecord {
            state: state(s),
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
        }
    }

    #[test]
    fn bootstrap_grasp() {
        // "grasp" co-occurs exactly with comfort=1
        let dialogues: Vec<DialogueRecord> = Bits::all(3)
            .map(|d| {
                let s = d.to_string();
                if d.get(1) {
                    record(&s, &["grasp"])
                } else {
                    record(&s, &[])
                }
            })
            .collect();
        let rep = bootstrap(&dialogues, &Lexicon::new(vocab())).unwrap();
        assert_eq!(rep.learned.len(), 1);
        assert_eq!(rep.learned[0].interpretant().to_string(), "(comfort=1)");
    }

    #[test]
    fn bootstrap_filters_and_reports() {
        let lex = lexicon();
        let dialogues = vec![
            record("100", &["hurt", "ouch"]),
            record("000", &["hurt", "ghost"]),
            record("000", &[]),
        ];
        let rep = bootstrap(&dialogues, &lex).unwrap();
        assert_eq!(rep.discarded, vec![1]);
        assert_eq!(rep.learned.len(), 1);
        assert_eq!(rep.learned[0].token(), "ouch");
        assert_eq!(rep.unlearnable, vec![("ghost".to_string(), Error::EmptyPositives)]);

        assert_eq!(
            bootstrap(&[record("100", &["hurt"])], &lex).unwrap_err(),
            Error::NothingToBootstrap
        );
    }

    #[test]
    fn bootstrap_matches_explicit_corpus() {
        let dialogues = vec![
            record("011", &["x"]),
            record("111", &["x"]),
            record("000", &[]),
            record("110", &[]),
        ];
        let rep = bootstrap(&dialogues, &Lexicon::new(vocab())).unwrap();
        let o = OstensiveDefinition::explicit(vocab(), [b("011"), b("111")], [b("000"), b("110")])
            .unwrap();
        assert_eq!(rep.learned[0], learn_symbol("x", &o).unwrap());
    }
}
