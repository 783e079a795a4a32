//! Exhaustive reference learner.
//!
//! Enumerates all 3^n cubes in ternary encoding (digit 0 or 1 pins a symbol,
//! digit 2 leaves it free), checks admissibility by walking each cube's
//! states against a dense label table, and keeps the admissible cubes whose
//! every one-digit generalization is inadmissible. Shares no search code
//! with [`crate::induction::induce`].

use std::sync::Arc;

use crate::concept::{Concept, Implicant, Literal};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::induction::OstensiveDefinition;

pub const ORACLE_CAP: usize = 12;

const DONT_CARE: u8 = 0;
const POSITIVE: u8 = 1;
const NEGATIVE: u8 = 2;

pub fn oracle_induce(o: &OstensiveDefinition) -> Result<Concept> {
    oracle_induce_with(o, Execution::default())
}

pub fn oracle_induce_with(o: &OstensiveDefinition, exec: Execution) -> Result<Concept> {
    let n = o.vocabulary().len();
    if n > ORACLE_CAP {
        return Err(Error::VocabularyTooLarge {
            size: n,
            cap: ORACLE_CAP,
        });
    }
    if o.positive_assignments().is_empty() {
        return Err(Error::EmptyPositives);
    }
    let mut labels = vec![DONT_CARE; 1 << n];
    for p in o.positive_assignments() {
        labels[p.word() as usize] = POSITIVE;
    }
    for d in o.negative_assignments() {
        let slot = &mut labels[d.word() as usize];
        if *slot == POSITIVE {
            return Err(Error::Inconsistent {
                state: d.to_string(),
            });
        }
        *slot = NEGATIVE;
    }

    let cubes = 3u64.pow(n as u32);
    let admissible: Vec<bool> = exec::map_range(exec, 0..cubes, |code| {
        let digits = ternary(code, n);
        let (mut pos, mut neg) = (false, false);
        for_each_state(&digits, |w| match labels[w as usize] {
            POSITIVE => pos = true,
            NEGATIVE => neg = true,
            _ => {}
        });
        pos && !neg
    });

    let powers: Vec<u64> = (0..n).map(|i| 3u64.pow(i as u32)).collect();
    let primes: Vec<u64> = exec::filter_range(exec, 0..cubes, |code| {
        if !admissible[code as usize] {
            return false;
        }
        let digits = ternary(code, n);
        digits.iter().enumerate().all(|(i, &d)| {
            d == 2 || !admissible[(code + (2 - d as u64) * powers[i]) as usize]
        })
    });

    let implicants = primes
        .into_iter()
        .map(|code| {
            let lits = ternary(code, n)
                .into_iter()
                .enumerate()
                .filter(|&(_, d)| d != 2)
                .map(|(i, d)| Literal::new(i, d == 1));
            Implicant::from_literals(lits)
        })
        .collect::<Result<Vec<_>>>()?;
    Concept::new(Arc::clone(o.vocabulary()), implicants)
}

fn ternary(mut code: u64, n: usize) -> Vec<u8> {
    (0..n)
        .map(|_| {
            let d = (code % 3) as u8;
            code /= 3;
            d
        })
        .collect()
}

fn for_each_state(digits: &[u8], mut f: impl FnMut(u32)) {
    fn walk(digits: &[u8], i: usize, word: u32, f: &mut impl FnMut(u32)) {
        if i == digits.len() {
            f(word);
            return;
        }
        match digits[i] {
            0 => walk(digits, i + 1, word, f),
            1 => walk(digits, i + 1, word | 1 << i, f),
            _ => {
                walk(digits, i + 1, word, f);
                walk(digits, i + 1, word | 1 << i, f);
            }
        }
    }
    walk(digits, 0, 0, &mut f);
}
