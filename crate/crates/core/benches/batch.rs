//! Parallel batch helpers against their sequential references.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topocode_core::batch;
use topocode_core::caterpillar::{caterpillar_all_magic, CaterpillarSpec};
use topocode_core::{Graph, MagicKind};

fn random_tree(rng: &mut impl Rng, n: u32) -> Graph {
    let edges: Vec<(u32, u32)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    Graph::from_edges(&edges).expect("tree edges are simple")
}

fn trees(count: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..count)
        .map(|_| {
            let n = rng.random_range(20..60);
            random_tree(&mut rng, n)
        })
        .collect()
}

fn specs(count: usize) -> Vec<CaterpillarSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    (0..count)
        .map(|_| {
            CaterpillarSpec::new(
                (0..rng.random_range(4..12))
                    .map(|_| rng.random_range(0..10))
                    .collect(),
            )
        })
        .collect()
}

fn bench_color_trees(c: &mut Criterion) {
    let mut group = c.benchmark_group("color_trees");
    for count in [64, 256] {
        let input = trees(count);
        group.bench_with_input(BenchmarkId::new("parallel", count), &input, |b, t| {
            b.iter(|| batch::color_trees(black_box(t), MagicKind::EdgeMagic))
        });
        group.bench_with_input(BenchmarkId::new("sequential", count), &input, |b, t| {
            b.iter(|| batch::color_trees_seq(black_box(t), MagicKind::EdgeMagic))
        });
    }
    group.finish();
}

fn bench_caterpillars(c: &mut Criterion) {
    let mut group = c.benchmark_group("caterpillar_all_magic");
    let input = specs(256);
    group.bench_function("parallel", |b| {
        b.iter(|| batch::map(black_box(&input), caterpillar_all_magic))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| batch::map_seq(black_box(&input), caterpillar_all_magic))
    });
    group.finish();
}

criterion_group!(benches, bench_color_trees, bench_caterpillars);
criterion_main!(benches);
