//! Sequential vs rayon-parallel execution of the batch workloads.
//!
//! Build with `--no-default-features` to see the fallback: both strategies
//! then run sequentially and should time the same.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lifetime_core::homology::{betti_curve, FieldTag};
use lifetime_core::laws::{check_adjunction, check_gluing, LawConfig, Ops};
use lifetime_core::sample::{self, rng_for, ComplexShape};
use lifetime_core::{Bounds, Strategy};

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn law_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("law_checks");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        let cfg = LawConfig {
            bounds: Bounds::square(10),
            samples: 20_000,
            seed: 1,
            strategy,
        };
        group.bench_with_input(BenchmarkId::new("adjunction", name), &cfg, |b, cfg| {
            b.iter(|| check_adjunction(cfg, Ops::standard()))
        });
        group.bench_with_input(BenchmarkId::new("gluing", name), &cfg, |b, cfg| {
            b.iter(|| check_gluing(cfg, 5))
        });
    }
    group.finish();
}

fn betti_sampling(c: &mut Criterion) {
    let shape = ComplexShape {
        max_simplices: 160,
        max_dim: 2,
        filtration: false,
        eps: 40,
        shuffle: false,
    };
    let complex = sample::complex(&mut rng_for(7, 0, 0), &shape);
    let mut group = c.benchmark_group("betti_curve");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        group.bench_function(BenchmarkId::new("dims_0_to_2", name), |b| {
            b.iter(|| {
                (0..3)
                    .map(|n| betti_curve(&complex, n, FieldTag::F2, strategy).unwrap())
                    .collect::<Vec<_>>()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, law_checks, betti_sampling);
criterion_main!(benches);
