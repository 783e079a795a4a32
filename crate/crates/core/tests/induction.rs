use std::collections::BTreeSet;
use std::sync::Arc;

use ostensa_core::concept::{extension, extension_count};
use ostensa_core::exec::Execution;
use ostensa_core::induction::{induce, induce_with, verify_ns, InduceOptions};
use ostensa_core::oracle::{oracle_induce, oracle_induce_with};
use ostensa_core::rng::{seeded, STREAM_INSTANCES};
use ostensa_core::testkit::random_ostensive;
use ostensa_core::{Bits, Error, OstensiveDefinition, Vocabulary};
use proptest::prelude::*;

fn instance(seed: u64, bits: usize, closed: bool) -> OstensiveDefinition {
    random_ostensive(&mut seeded(seed, STREAM_INSTANCES), bits, closed)
}

fn negative_words(o: &OstensiveDefinition) -> Vec<u32> {
    o.negatives().iter().map(|d| d.assignment().word()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn matches_oracle(seed in any::<u64>(), bits in 1usize..=8, closed in any::<bool>()) {
        let o = instance(seed, bits, closed);
        prop_assert_eq!(induce(&o).unwrap(), oracle_induce(&o).unwrap());
    }

    #[test]
    fn necessary_and_sufficient(seed in any::<u64>(), bits in 1usize..=10, closed in any::<bool>()) {
        let o = instance(seed, bits, closed);
        let c = induce(&o).unwrap();
        let report = verify_ns(&c, &o).unwrap();
        prop_assert!(report.passes(), "{:?}", report);
        for d in o.positives() {
            prop_assert!(!c.satisfied_by(&d).unwrap().is_empty());
        }
        for d in o.negatives() {
            prop_assert!(c.satisfied_by(&d).unwrap().is_empty());
        }
    }

    #[test]
    fn implicants_are_prime(seed in any::<u64>(), bits in 1usize..=9, closed in any::<bool>()) {
        let o = instance(seed, bits, closed);
        let c = induce(&o).unwrap();
        let neg = negative_words(&o);
        let pos: Vec<u32> = o.positive_assignments().iter().map(|d| d.word()).collect();
        for imp in c.implicants() {
            let (care, value) = (imp.care_mask(), imp.value_mask());
            prop_assert!(neg.iter().all(|d| d & care != value));
            prop_assert!(pos.iter().any(|d| d & care == value));
            for i in 0..bits {
                if care >> i & 1 == 1 {
                    let (gc, gv) = (care & !(1 << i), value & !(1 << i));
                    prop_assert!(neg.iter().any(|d| d & gc == gv), "{} not prime at {}", imp.render(o.vocabulary()), i);
                }
            }
        }
    }

    #[test]
    fn demoting_a_positive_never_weakens(seed in any::<u64>(), bits in 1usize..=8, closed in any::<bool>(), pick in any::<prop::sample::Index>()) {
        let o = instance(seed, bits, closed);
        let before = extension_count(&induce(&o).unwrap()).unwrap();
        let positives: Vec<Bits> = o.positive_assignments().iter().copied().collect();
        let d = positives[pick.index(positives.len())];
        let demoted = o.demote(d).unwrap();
        match induce(&demoted) {
            Ok(c) => prop_assert!(extension_count(&c).unwrap() <= before),
            Err(e) => prop_assert_eq!(e, Error::EmptyPositives),
        }
    }

    #[test]
    fn relabelling_is_a_fixed_point(seed in any::<u64>(), bits in 1usize..=9, closed in any::<bool>()) {
        let o = instance(seed, bits, closed);
        let c = induce(&o).unwrap();
        let again = induce(&o.relabelled_by(&c).unwrap()).unwrap();
        prop_assert_eq!(again, c);
    }

    #[test]
    fn execution_modes_agree(seed in any::<u64>(), bits in 1usize..=10, closed in any::<bool>()) {
        let o = instance(seed, bits, closed);
        let seq = InduceOptions { exec: Execution::Sequential, ..InduceOptions::default() };
        let par = InduceOptions { exec: Execution::Parallel, ..InduceOptions::default() };
        let a = induce_with(&o, seq).unwrap();
        prop_assert_eq!(&a, &induce_with(&o, par).unwrap());
        if bits <= 8 {
            prop_assert_eq!(&oracle_induce_with(&o, Execution::Sequential).unwrap(), &a);
            prop_assert_eq!(&oracle_induce_with(&o, Execution::Parallel).unwrap(), &a);
        }
    }
}

/// Every union of admissible cubes that is consistent, checked against the
/// learner by extension size. Exhaustive for tiny vocabularies.
#[test]
fn no_admissible_union_is_weaker() {
    for seed in 0..60u64 {
        let bits = 1 + (seed % 4) as usize;
        let o = instance(seed, bits, seed % 2 == 0);
        let n = bits;
        let neg = negative_words(&o);
        let pos: Vec<u32> = o.positive_assignments().iter().map(|d| d.word()).collect();
        let full = (1u32 << n) - 1;
        let mut cubes: Vec<u32> = Vec::new();
        for care in 0..=full {
            for value in 0..=full {
                if value & !care != 0 {
                    continue;
                }
                if neg.iter().any(|d| d & care == value) || !pos.iter().any(|d| d & care == value) {
                    continue;
                }
                let states = (0..=full).filter(|d| d & care == value).fold(0u32, |m, d| m | 1 << d);
                cubes.push(states);
            }
        }
        let mut unions: BTreeSet<u32> = BTreeSet::new();
        let mut frontier = vec![0u32];
        while let Some(u) = frontier.pop() {
            for &c in &cubes {
                let next = u | c;
                if unions.insert(next) {
                    frontier.push(next);
                }
            }
        }
        let learned = induce(&o).unwrap();
        let mask = extension(&learned)
            .unwrap()
            .iter()
            .fold(0u32, |m, d| m | 1 << d.assignment().word());
        let count = mask.count_ones();
        for u in unions {
            let consistent = pos.iter().all(|&d| u >> d & 1 == 1);
            if !consistent {
                continue;
            }
            assert!(u.count_ones() <= count, "seed {seed}");
            if u.count_ones() == count {
                assert_eq!(u, mask, "seed {seed}");
            }
        }
    }
}

#[test]
fn cube_budget_is_enforced() {
    let v = Arc::new(Vocabulary::with_default_names(8, 8).unwrap());
    let o = OstensiveDefinition::explicit(Arc::clone(&v), [Bits::zeros(16)], []).unwrap();
    let opts = InduceOptions { max_cubes: 8, ..InduceOptions::default() };
    assert_eq!(induce_with(&o, opts).unwrap_err(), Error::ResourceExceeded { budget: 8 });
    assert_eq!(induce(&o).unwrap().to_string(), "(TRUE)");
}
