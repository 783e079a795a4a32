//! Seeded desk-scale environments.
//!
//! A scenario fixes a vocabulary, a situation source, and optionally a
//! scripted co-agent whose behaviour the agent observes. The built-in
//! scenarios are version-pinned fixtures:
//!
//! * `assist`: sensors `other_hurt`, `request`; actuators `comfort`, `harm`,
//!   and the transmittable `speak`. Situations are uniform; the co-agent
//!   comforts exactly when the other party is hurt, never harms, and
//!   speaks at random. 200 episodes.
//! * `probe`: sensors `s0`, `s1`; actuator `r0`. Situations cycle in
//!   lexicographic order. 8 episodes.
//! * `isa`: sensors `o1`, `o0`, `a`; actuator `a_next`. Situations cycle.
//!   8 episodes.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::pss::{Channel, DecisionState, Vocabulary};
use crate::rng::{below, seeded, word, STREAM_CO_AGENT, STREAM_SITUATIONS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SituationSource {
    /// Every situation in lexicographic order, repeating.
    Cyclic,
    /// Independent uniform draws.
    Uniform,
}

/// A co-agent that answers each situation with a response drawn uniformly
/// from a fixed candidate list. Situations absent from the script produce
/// no observation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoAgent {
    pub script: BTreeMap<Bits, Vec<Bits>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub vocab: Arc<Vocabulary>,
    pub source: SituationSource,
    pub co_agent: Option<CoAgent>,
    pub episode_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Episode {
    pub index: usize,
    pub situation: Bits,
    pub observed: Option<DecisionState>,
}

pub const BUILTIN_SCENARIOS: [&str; 3] = ["assist", "probe", "isa"];

impl Scenario {
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "assist" => Ok(assist()),
            "probe" => Ok(Scenario {
                name: "probe".into(),
                vocab: Arc::new(Vocabulary::from_channels(&["s0", "s1"], &["r0"])?),
                source: SituationSource::Cyclic,
                co_agent: None,
                episode_limit: 8,
            }),
            "isa" => Ok(Scenario {
                name: "isa".into(),
                vocab: Arc::new(Vocabulary::from_channels(&["o1", "o0", "a"], &["a_next"])?),
                source: SituationSource::Cyclic,
                co_agent: None,
                episode_limit: 8,
            }),
            other => Err(Error::UnknownScenario(other.to_string())),
        }
    }

    /// The first `count` episodes for a seed.
    pub fn episodes(&self, seed: u64, count: usize) -> Vec<Episode> {
        let sensors = self.vocab.sensor_count();
        let mut situations = seeded(seed, STREAM_SITUATIONS);
        let mut co = seeded(seed, STREAM_CO_AGENT);
        (0..count)
            .map(|index| {
                let situation = match self.source {
                    SituationSource::Cyclic => {
                        Bits::from_rank(sensors, (index % (1usize << sensors)) as u32)
                    }
                    SituationSource::Uniform => Bits::from_word(sensors, word(&mut situations, sensors)),
                };
                let observed = self.co_agent.as_ref().and_then(|agent| {
                    let options = agent.script.get(&situation)?;
                    let r = options[below(&mut co, options.len() as u64) as usize];
                    let d = self.vocab.compose_bits(situation, r).ok()?;
                    DecisionState::new(Arc::clone(&self.vocab), d).ok()
                });
                Episode {
                    index,
                    situation,
                    observed,
                }
            })
            .collect()
    }
}

fn assist() -> Scenario {
    let vocab = Arc::new(
        Vocabulary::from_layout([
            ("other_hurt", Channel::Sensor, false),
            ("request", Channel::Sensor, false),
            ("comfort", Channel::Actuator, false),
            ("harm", Channel::Actuator, false),
            ("speak", Channel::Actuator, true),
        ])
        .expect("fixture vocabulary"),
    );
    let script = Bits::all(2)
        .map(|s| {
            let hurt = s.get(0);
            let responses = [false, true]
                .into_iter()
                .map(|speak| Bits::from_bools(&[hurt, false, speak]))
                .collect();
            (s, responses)
        })
        .collect();
    Scenario {
        name: "assist".into(),
        vocab,
        source: SituationSource::Uniform,
        co_agent: Some(CoAgent { script }),
        episode_limit: 200,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_episodes() {
        let sc = Scenario::builtin("assist").unwrap();
        assert_eq!(sc.episodes(11, 50), sc.episodes(11, 50));
        assert_ne!(sc.episodes(11, 50), sc.episodes(12, 50));
        assert!(sc.episodes(11, 50).iter().all(|e| e.observed.is_some()));
    }

    #[test]
    fn cyclic_covers_all_situations() {
        let sc = Scenario::builtin("isa").unwrap();
        let sits: Vec<String> = sc.episodes(0, 8).iter().map(|e| e.situation.to_string()).collect();
        assert_eq!(sits, ["000", "001", "010", "011", "100", "101", "110", "111"]);
    }

    #[test]
    fn co_agent_follows_script() {
        let sc = Scenario::builtin("assist").unwrap();
        for e in sc.episodes(3, 100) {
            let d = e.observed.unwrap();
            assert_eq!(d.situation(), e.situation);
            assert_eq!(d.bit(2), d.bit(0), "comforts exactly when hurt");
            assert!(!d.bit(3), "never harms");
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            Scenario::builtin("maze").unwrap_err(),
            Error::UnknownScenario("maze".into())
        );
    }
}
