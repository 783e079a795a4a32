//! Fixed-length bit strings.
//!
//! Character `i` of the textual form is bit `i` of the backing word, so
//! `"011"` has bits 1 and 2 set. Ordering is by length and then
//! lexicographic on the textual form, which is the tie-break order used
//! throughout the crate.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest bit string the crate handles; matches the vocabulary cap.
pub const MAX_BITS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    len: u8,
    word: u32,
}

impl Bits {
    pub const EMPTY: Bits = Bits { len: 0, word: 0 };

    /// Builds from a raw word, masking off bits at or above `len`.
    pub fn from_word(len: usize, word: u32) -> Self {
        assert!(len <= MAX_BITS, "bit string longer than {MAX_BITS}");
        Bits {
            len: len as u8,
            word: word & low_mask(len),
        }
    }

    pub fn zeros(len: usize) -> Self {
        Self::from_word(len, 0)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let word = bits
            .iter()
            .enumerate()
            .fold(0u32, |w, (i, &b)| w | (u32::from(b) << i));
        Self::from_word(bits.len(), word)
    }

    /// The `rank`-th string of length `len` in lexicographic order.
    pub fn from_rank(len: usize, rank: u32) -> Self {
        if len == 0 {
            return Bits::EMPTY;
        }
        Self::from_word(len, rank.reverse_bits() >> (32 - len))
    }

    /// Position of this string in the lexicographic order of its length.
    pub fn rank(self) -> u32 {
        if self.len == 0 {
            0
        } else {
            self.word.reverse_bits() >> (32 - self.len as u32)
        }
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn word(self) -> u32 {
        self.word
    }

    pub fn get(self, i: usize) -> bool {
        assert!(i < self.len(), "bit {i} out of range");
        self.word >> i & 1 == 1
    }

    pub fn with(self, i: usize, value: bool) -> Self {
        assert!(i < self.len(), "bit {i} out of range");
        let word = if value {
            self.word | 1 << i
        } else {
            self.word & !(1 << i)
        };
        Bits { word, ..self }
    }

    pub fn count_ones(self) -> u32 {
        self.word.count_ones()
    }

    pub fn iter(self) -> impl Iterator<Item = bool> {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// All strings of length `len`, lexicographically.
    pub fn all(len: usize) -> impl DoubleEndedIterator<Item = Bits> + ExactSizeIterator {
        assert!(len <= MAX_BITS, "bit string longer than {MAX_BITS}");
        (0..1u32 << len).map(move |r| Bits::from_rank(len, r))
    }
}

pub(crate) fn low_mask(len: usize) -> u32 {
    if len >= 32 {
        u32::MAX
    } else {
        (1u32 << len) - 1
    }
}

impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.word.reverse_bits().cmp(&other.word.reverse_bits()))
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.chars().count() > MAX_BITS {
            return Err(Error::parse(1, MAX_BITS + 1, "bit string too long"));
        }
        let mut word = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => word |= 1 << i,
                other => {
                    return Err(Error::parse(1, i + 1, format!("expected 0 or 1, found `{other}`")))
                }
            }
        }
        Ok(Bits::from_word(s.len(), word))
    }
}
