use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gti_core::batch::dual_agreement;
use gti_core::oracle::{frame_operator_with, OracleOptions};
use gti_core::par::Execution;
use gti_core::random;
use gti_core::talpha::verify_dual_talpha_with;
use gti_core::FiniteAbelianGroup;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn frame_operator(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = FiniteAbelianGroup::cyclic_product(&[16, 16]).unwrap();
    let (a, b) = random::painless_dual_pair(&mut rng, &g, 3, 4);
    let mut group = c.benchmark_group("frame_operator_256");
    for (name, exec) in MODES {
        let opts = OracleOptions {
            exec,
            ..OracleOptions::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| frame_operator_with(black_box(&a), black_box(&b), opts).unwrap())
        });
    }
    group.finish();
}

fn talpha_table(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = FiniteAbelianGroup::cyclic_product(&[8, 8, 4]).unwrap();
    let (a, b) = random::painless_dual_pair(&mut rng, &g, 3, 4);
    let mut group = c.benchmark_group("talpha_table_256");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench
                .iter(|| verify_dual_talpha_with(black_box(&a), black_box(&b), 1e-9, exec).unwrap())
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pairs: Vec<_> = (0..64)
        .map(|_| {
            let g = random::group(&mut rng, 64);
            random::painless_dual_pair(&mut rng, &g, 3, 4)
        })
        .collect();
    let mut group = c.benchmark_group("batch_64_pairs");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| dual_agreement(black_box(&pairs), 1e-9, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, frame_operator, talpha_table, batch);
criterion_main!(benches);
