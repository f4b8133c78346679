//! Throughput benches for the hot kernels: delta classification, lift
//! membership, lifted color evaluation, the density scan, clique search,
//! and the colex codec the tables sit on.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;
use stepup_bench::{striped_base, striped_edges, tuple};
use stepup_core::combin::{binomial, colex_rank, colex_unrank};
use stepup_core::{
    check_property, classify_deltas, consecutive_deltas, extract_monotone, find_clique, lift_coloring,
    max_red_in_p_sets, EdgeSet, Hypergraph, LiftRule, Scope, StepProperty, TwoColoring,
};

fn delta_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("delta");
    for &len in &[8usize, 64, 1024] {
        let t = tuple(len, 40, 7);
        g.throughput(Throughput::Elements(len as u64 - 1));
        g.bench_with_input(BenchmarkId::new("consecutive", len), &t, |b, t| {
            b.iter(|| consecutive_deltas(black_box(t)).unwrap());
        });
        g.bench_with_input(BenchmarkId::new("labels", len), &t, |b, t| {
            let d = consecutive_deltas(t).unwrap();
            b.iter(|| classify_deltas(black_box(&d)));
        });
    }
    let six = tuple(6, 40, 11);
    g.bench_function("property_g_arity6", |b| {
        b.iter(|| check_property(black_box(&six), StepProperty::G).unwrap());
    });
    g.finish();
}

fn lift_membership(c: &mut Criterion) {
    let mut g = c.benchmark_group("lift_member");
    for &k in &[5usize, 6, 7] {
        let rule = LiftRule::new(k, striped_edges(k, 40)).unwrap();
        let probes: Vec<Vec<u64>> = (0..256).map(|s| tuple(k, 40, s)).collect();
        g.throughput(Throughput::Elements(probes.len() as u64));
        g.bench_with_input(BenchmarkId::new("arity", k), &probes, |b, probes| {
            b.iter(|| {
                let mut hits = 0u32;
                for p in probes {
                    hits += rule.contains_unchecked(black_box(p)) as u32;
                }
                hits
            });
        });
    }
    g.finish();
}

fn lifted_color(c: &mut Criterion) {
    let chi = TwoColoring::Lifted(lift_coloring(striped_base(10)).unwrap());
    let probes: Vec<Vec<u64>> = (0..256).map(|s| tuple(4, 10, s)).collect();
    let mut g = c.benchmark_group("lifted_color");
    g.throughput(Throughput::Elements(probes.len() as u64));
    g.bench_function("eval_ground_1024", |b| {
        b.iter(|| {
            let mut reds = 0u32;
            for p in &probes {
                reds += (chi.color_unchecked(black_box(p)) == stepup_core::Color::Red) as u32;
            }
            reds
        });
    });
    g.finish();
}

fn density_scan(c: &mut Criterion) {
    let chi = TwoColoring::Lifted(lift_coloring(striped_base(6)).unwrap());
    let mut g = c.benchmark_group("red_density");
    let window = Scope::Window { lo: 0, hi: 24 };
    g.throughput(Throughput::Elements(binomial(24, 5)));
    g.bench_function("p5_window24_of_64", |b| {
        b.iter(|| max_red_in_p_sets(black_box(&chi), 5, window).unwrap());
    });
    g.finish();
}

fn clique_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("find_clique");
    let explicit = Hypergraph::Explicit(striped_edges(4, 20));
    g.bench_function("striped_3uniform_t6_v20", |b| {
        b.iter(|| find_clique(black_box(&explicit), 6));
    });
    let lifted = Hypergraph::Lifted(LiftRule::new(5, EdgeSet::complete(4, 5).unwrap()).unwrap());
    g.bench_function("lifted_5uniform_t7_v32", |b| {
        b.iter(|| find_clique(black_box(&lifted), 7));
    });
    g.finish();
}

fn monotone_extraction(c: &mut Criterion) {
    let mut g = c.benchmark_group("extract_monotone");
    for &target in &[2usize, 3] {
        let need = 1usize << (2 * target);
        let t = tuple(need, 40, 3);
        g.bench_with_input(BenchmarkId::new("target", target), &t, |b, t| {
            b.iter(|| extract_monotone(black_box(t), target).unwrap());
        });
    }
    g.finish();
}

fn colex_codec(c: &mut Criterion) {
    let mut g = c.benchmark_group("colex");
    let sets: Vec<Vec<u64>> = (0..256).map(|s| tuple(4, 6, s)).collect();
    g.throughput(Throughput::Elements(sets.len() as u64));
    g.bench_function("rank_4_of_64", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for s in &sets {
                acc = acc.wrapping_add(colex_rank(black_box(s)));
            }
            acc
        });
    });
    let slots = binomial(64, 4);
    g.bench_function("unrank_4_of_64", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for r in (0..slots).step_by(2371) {
                acc = acc.wrapping_add(colex_unrank(black_box(r), 4)[0]);
            }
            acc
        });
    });
    g.finish();
}

criterion_group!(
    kernels,
    delta_kernels,
    lift_membership,
    lifted_color,
    density_scan,
    clique_search,
    monotone_extraction,
    colex_codec
);
criterion_main!(kernels);
