use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use univoque::dimension::{dimension, kl_constant, DimensionOptions};
use univoque::entropy::{entropy_of_graph, sandwich};
use univoque::exactnum::rat;
use univoque::expansion::greedy_expansion;
use univoque::sft::{build_graph_automaton, build_graph_naive, count_blocks};
use univoque::{Alphabet, DepthConfig, Mode};
use univoque_bench::{bases, spec};

fn builders(c: &mut Criterion) {
    let mut group = c.benchmark_group("graph");
    let q = &bases()[1].1;
    for n in [8usize, 12, 16] {
        let s = spec(q, n, Mode::ClosedV);
        group.bench_with_input(BenchmarkId::new("naive", n), &s, |b, s| b.iter(|| build_graph_naive(s).unwrap()));
        group.bench_with_input(BenchmarkId::new("automaton", n), &s, |b, s| b.iter(|| build_graph_automaton(s)));
    }
    let g = build_graph_automaton(&spec(q, 16, Mode::ClosedV));
    group.bench_function("count_blocks_k20", |b| b.iter(|| count_blocks(&g, black_box(20))));
    group.finish();
}

fn perron(c: &mut Criterion) {
    let mut group = c.benchmark_group("entropy");
    for (name, q) in bases() {
        for n in [16usize, 64, 256] {
            let g = build_graph_automaton(&spec(&q, n, Mode::StrictU));
            group.bench_function(BenchmarkId::new(format!("perron/{name}"), n), |b| b.iter(|| entropy_of_graph(&g)));
        }
        group.bench_function(BenchmarkId::new("sandwich64", name), |b| {
            b.iter(|| sandwich(&q, Alphabet::binary(), 64, &DepthConfig::default()).unwrap())
        });
    }
    group.finish();
}

fn top_level(c: &mut Criterion) {
    let mut group = c.benchmark_group("dimension");
    group.sample_size(10);
    let opts = DimensionOptions::default();
    for (name, q) in bases() {
        group.bench_function(name, |b| b.iter(|| dimension(&q, Alphabet::binary(), &opts).unwrap()));
    }
    group.bench_function("kl_width_1e-6", |b| {
        b.iter(|| kl_constant(Alphabet::binary(), &rat(1, 1_000_000), &DepthConfig::default()).unwrap())
    });
    let q = univoque::AlgebraicNumber::from_rational(rat(17, 10));
    group.bench_function("greedy_digits_200", |b| b.iter(|| greedy_expansion(&q, Alphabet::binary(), 200).unwrap()));
    group.finish();
}

criterion_group!(benches, builders, perron, top_level);
criterion_main!(benches);
