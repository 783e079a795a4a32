//! The perceptual symbol system: vocabularies of boolean symbols split into
//! sensor and actuator channels, and decision states over them.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::bits::{Bits, MAX_BITS};
use crate::error::{Error, Result};

pub const MAX_VOCABULARY: usize = MAX_BITS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    Sensor,
    Actuator,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub index: usize,
    pub name: String,
    pub channel: Channel,
    /// Actuator bits the agent can emit as signs.
    pub transmittable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vocabulary {
    symbols: Vec<Symbol>,
    sensors: Vec<usize>,
    actuators: Vec<usize>,
}

impl Vocabulary {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.len() > MAX_VOCABULARY {
            return Err(Error::VocabularyTooLarge {
                size: symbols.len(),
                cap: MAX_VOCABULARY,
            });
        }
        let mut seen = HashSet::new();
        for (pos, sym) in symbols.iter().enumerate() {
            if sym.index != pos {
                return Err(Error::InvalidVocabulary(format!(
                    "symbol `{}` has index {} at position {pos}",
                    sym.name, sym.index
                )));
            }
            if !valid_name(&sym.name) {
                return Err(Error::InvalidVocabulary(format!(
                    "invalid symbol name `{}`",
                    sym.name
                )));
            }
            if !seen.insert(sym.name.as_str()) {
                return Err(Error::InvalidVocabulary(format!(
                    "duplicate symbol name `{}`",
                    sym.name
                )));
            }
            if sym.transmittable && sym.channel != Channel::Actuator {
                return Err(Error::InvalidVocabulary(format!(
                    "sensor `{}` cannot be transmittable",
                    sym.name
                )));
            }
        }
        let on = |c: Channel| {
            symbols
                .iter()
                .filter(|s| s.channel == c)
                .map(|s| s.index)
                .collect::<Vec<_>>()
        };
        Ok(Vocabulary {
            sensors: on(Channel::Sensor),
            actuators: on(Channel::Actuator),
            symbols,
        })
    }

    /// Sensors first, then actuators, in the order given.
    pub fn from_channels(sensors: &[&str], actuators: &[&str]) -> Result<Self> {
        Self::from_layout(
            sensors
                .iter()
                .map(|&n| (n, Channel::Sensor, false))
                .chain(actuators.iter().map(|&n| (n, Channel::Actuator, false))),
        )
    }

    pub fn from_layout<'a>(layout: impl IntoIterator<Item = (&'a str, Channel, bool)>) -> Result<Self> {
        Self::new(
            layout
                .into_iter()
                .enumerate()
                .map(|(index, (name, channel, transmittable))| Symbol {
                    index,
                    name: name.to_string(),
                    channel,
                    transmittable,
                })
                .collect(),
        )
    }

    /// The vocabulary implied by a bare `#vocab` header: sensors `s0..`
    /// followed by actuators `r0..`, none transmittable.
    pub fn with_default_names(sensors: usize, actuators: usize) -> Result<Self> {
        let s: Vec<String> = (0..sensors).map(|i| format!("s{i}")).collect();
        let a: Vec<String> = (0..actuators).map(|i| format!("r{i}")).collect();
        let s: Vec<&str> = s.iter().map(String::as_str).collect();
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        Self::from_channels(&s, &a)
    }

    pub fn is_default_layout(&self) -> bool {
        Self::with_default_names(self.sensors.len(), self.actuators.len())
            .map(|d| d == *self)
            .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> Option<&Symbol> {
        self.symbols.get(index)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn sensor_count(&self) -> usize {
        self.sensors.len()
    }

    pub fn actuator_count(&self) -> usize {
        self.actuators.len()
    }

    /// Symbol indices of a channel in ascending order.
    pub fn channel_indices(&self, channel: Channel) -> &[usize] {
        match channel {
            Channel::Sensor => &self.sensors,
            Channel::Actuator => &self.actuators,
        }
    }

    /// Positions within the response string of transmittable actuators.
    pub fn transmittable_positions(&self) -> Vec<usize> {
        self.actuators
            .iter()
            .enumerate()
            .filter(|(_, &i)| self.symbols[i].transmittable)
            .map(|(pos, _)| pos)
            .collect()
    }

    pub(crate) fn compose_bits(&self, s: Bits, r: Bits) -> Result<Bits> {
        if s.len() != self.sensors.len() {
            return Err(Error::LengthMismatch {
                expected: self.sensors.len(),
                found: s.len(),
            });
        }
        if r.len() != self.actuators.len() {
            return Err(Error::LengthMismatch {
                expected: self.actuators.len(),
                found: r.len(),
            });
        }
        Ok(Bits::from_word(
            self.len(),
            scatter(s.word(), &self.sensors) | scatter(r.word(), &self.actuators),
        ))
    }

    pub(crate) fn project_bits(&self, assignment: Bits, channel: Channel) -> Bits {
        let idx = self.channel_indices(channel);
        Bits::from_word(idx.len(), gather(assignment.word(), idx))
    }

    pub(crate) fn check_assignment(&self, assignment: Bits) -> Result<()> {
        if assignment.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: assignment.len(),
            });
        }
        Ok(())
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
        && name != "TRUE"
}

fn scatter(word: u32, positions: &[usize]) -> u32 {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &i)| acc | ((word >> k & 1) << i))
}

fn gather(word: u32, positions: &[usize]) -> u32 {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &i)| acc | ((word >> i & 1) << k))
}

pub(crate) fn same_vocabulary(a: &Arc<Vocabulary>, b: &Arc<Vocabulary>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::VocabularyMismatch)
    }
}

/// One total assignment over a vocabulary: a situation-response pair.
///
/// Equality, hashing and ordering look only at the assignment.
#[derive(Debug, Clone)]
pub struct DecisionState {
    vocab: Arc<Vocabulary>,
    assignment: Bits,
}

impl DecisionState {
    pub fn new(vocab: Arc<Vocabulary>, assignment: Bits) -> Result<Self> {
        vocab.check_assignment(assignment)?;
        Ok(DecisionState { vocab, assignment })
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn assignment(&self) -> Bits {
        self.assignment
    }

    pub fn situation(&self) -> Bits {
        self.project(Channel::Sensor)
    }

    pub fn response(&self) -> Bits {
        self.project(Channel::Actuator)
    }

    pub fn project(&self, channel: Channel) -> Bits {
        project(self, channel)
    }

    pub fn bit(&self, index: usize) -> bool {
        self.assignment.get(index)
    }
}

impl PartialEq for DecisionState {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment
    }
}

impl Eq for DecisionState {}

impl Hash for DecisionState {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.assignment.hash(state);
    }
}

impl Ord for DecisionState {
    fn cmp(&self, other: &Self) -> Ordering {
        self.assignment.cmp(&other.assignment)
    }
}

impl PartialOrd for DecisionState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DecisionState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.assignment.fmt(f)
    }
}

/// Interleaves situation and response bits into a decision state.
pub fn compose(s: Bits, r: Bits, vocab: &Arc<Vocabulary>) -> Result<DecisionState> {
    let assignment = vocab.compose_bits(s, r)?;
    Ok(DecisionState {
        vocab: Arc::clone(vocab),
        assignment,
    })
}

/// Bits of one channel in ascending symbol order.
pub fn project(d: &DecisionState, channel: Channel) -> Bits {
    d.vocab.project_bits(d.assignment, channel)
}
