//! Seeded random instances for sweeps, property checks and benchmarks.

use std::sync::Arc;

use crate::bits::Bits;
use crate::induction::OstensiveDefinition;
use crate::pss::Vocabulary;
use crate::rng::{below, chance, seeded, SeededRng, STREAM_INSTANCES};

/// A random consistent ostensive definition over `bits` symbols with at
/// least one positive. Sensor count is drawn from `1..bits` (or 0 when
/// `bits == 1`) and symbols use the default `s*`/`r*` names.
pub fn random_ostensive(rng: &mut SeededRng, bits: usize, closed_world: bool) -> OstensiveDefinition {
    assert!((1..=crate::bits::MAX_BITS).contains(&bits));
    let sensors = if bits == 1 { 0 } else { 1 + below(rng, bits as u64 - 1) as usize };
    let vocab = Arc::new(Vocabulary::with_default_names(sensors, bits - sensors).expect("within cap"));
    let m = vocab.actuator_count();
    loop {
        let o = if closed_world {
            let covered: Vec<Bits> = Bits::all(sensors).filter(|_| chance(rng, 1, 2)).collect();
            let mut positives = Vec::new();
            for &s in &covered {
                for r in Bits::all(m) {
                    if chance(rng, 1, 2) {
                        positives.push(vocab.compose_bits(s, r).expect("lengths"));
                    }
                }
            }
            OstensiveDefinition::new(Arc::clone(&vocab), covered, positives, [], true)
        } else {
            let (mut pos, mut neg) = (Vec::new(), Vec::new());
            for d in Bits::all(bits) {
                match below(rng, 4) {
                    0 => pos.push(d),
                    1 => neg.push(d),
                    _ => {}
                }
            }
            OstensiveDefinition::explicit(Arc::clone(&vocab), pos, neg)
        }
        .expect("generated labels are consistent");
        if !o.positive_assignments().is_empty() {
            return o;
        }
    }
}

/// `count` instances from one seed, alternating world modes, with sizes
/// drawn uniformly from `min_bits..=max_bits`.
pub fn instance_batch(seed: u64, count: usize, min_bits: usize, max_bits: usize) -> Vec<OstensiveDefinition> {
    let mut rng = seeded(seed, STREAM_INSTANCES);
    (0..count)
        .map(|i| {
            let bits = min_bits + below(&mut rng, (max_bits - min_bits + 1) as u64) as usize;
            random_ostensive(&mut rng, bits, i % 2 == 0)
        })
        .collect()
}
