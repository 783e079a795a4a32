use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ostensa_core::concept::{extension_with, DEFAULT_ENUMERATION_CAP};
use ostensa_core::exec::Execution;
use ostensa_core::induction::{induce_with, InduceOptions};
use ostensa_core::oracle::oracle_induce_with;
use ostensa_core::rng::{seeded, STREAM_INSTANCES};
use ostensa_core::testkit::{instance_batch, random_ostensive};
use ostensa_core::{Concept, Vocabulary};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn induction(c: &mut Criterion) {
    let mut group = c.benchmark_group("induce");
    group.sample_size(10);
    for bits in [10usize, 12, 14] {
        let o = random_ostensive(&mut seeded(bits as u64, STREAM_INSTANCES), bits, true);
        for (name, exec) in MODES {
            let opts = InduceOptions { exec, ..InduceOptions::default() };
            group.bench_with_input(BenchmarkId::new(name, bits), &o, |b, o| {
                b.iter(|| induce_with(black_box(o), opts).unwrap())
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_induce");
    group.sample_size(10);
    for bits in [8usize, 10] {
        let o = random_ostensive(&mut seeded(100 + bits as u64, STREAM_INSTANCES), bits, false);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, bits), &o, |b, o| {
                b.iter(|| oracle_induce_with(black_box(o), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("extension");
    group.sample_size(10);
    for bits in [16usize, DEFAULT_ENUMERATION_CAP] {
        // Inducing a random corpus this wide is far slower than enumerating, so use fixed cubes.
        let vocab = Arc::new(Vocabulary::with_default_names(bits / 2, bits - bits / 2).unwrap());
        let concept = Concept::cubes(vocab, &[&[("s0", true), ("r0", false)], &[("s1", false), ("r1", true)]]).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, bits), &concept, |b, c| {
                b.iter(|| extension_with(black_box(c), DEFAULT_ENUMERATION_CAP, exec).unwrap().len())
            });
        }
    }
    group.finish();
}

/// Many small instances: the shape of the acceptance sweeps.
fn sweep(c: &mut Criterion) {
    let batch = instance_batch(7, 200, 4, 8);
    let mut group = c.benchmark_group("sweep_200x4-8");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = InduceOptions { exec, ..InduceOptions::default() };
        group.bench_function(name, |b| {
            b.iter(|| batch.iter().map(|o| induce_with(o, opts).unwrap().implicants().len()).sum::<usize>())
        });
    }
    group.finish();
}

criterion_group!(benches, induction, oracle, enumeration, sweep);
criterion_main!(benches);
