//! Benchmarks for the hot paths: character-table construction, capture
//! graph assembly, exact clique search, and one complete character sum.

use criterion::{criterion_group, criterion_main, Criterion};
use formlab_core::charsum::{vinogradov_check, ChiEval};
use formlab_core::clique::max_clique;
use formlab_core::field::{CharTable, FieldElement, FieldSpec};
use formlab_core::graph::CaptureGraph;
use formlab_core::instances::canonical;
use formlab_core::rng::SplitMix64;

fn bench_char_table(c: &mut Criterion) {
    let spec = FieldSpec::new(4001, 1).unwrap();
    c.bench_function("char_table/q4001", |b| b.iter(|| CharTable::build(&spec)));
}

fn bench_graph_build(c: &mut Criterion) {
    let spec = FieldSpec::new(1009, 1).unwrap();
    let inst = canonical(&spec);
    c.bench_function("capture_graph/q1009", |b| b.iter(|| CaptureGraph::build(&inst).unwrap()));
}

fn bench_max_clique(c: &mut Criterion) {
    let spec = FieldSpec::new(401, 1).unwrap();
    let graph = CaptureGraph::build(&canonical(&spec)).unwrap();
    c.bench_function("max_clique/q401", |b| b.iter(|| max_clique(&graph)));
}

fn bench_vinogradov(c: &mut Criterion) {
    let spec = FieldSpec::new(1009, 1).unwrap();
    let table = CharTable::build(&spec);
    let chi = ChiEval::Table(&table);
    let mut rng = SplitMix64::new(7);
    let pick = |rng: &mut SplitMix64, size: usize| -> Vec<FieldElement> {
        rng.subset(spec.q(), size).into_iter().map(|i| spec.element(i).unwrap()).collect()
    };
    let a_set = pick(&mut rng, 500);
    let b_set = pick(&mut rng, 500);
    let u = spec.element(1).unwrap();
    let v = spec.element(2).unwrap();
    c.bench_function("vinogradov/q1009_500x500", |b| {
        b.iter(|| vinogradov_check(&spec, &chi, u, v, &a_set, &b_set).unwrap())
    });
}

criterion_group!(benches, bench_char_table, bench_graph_build, bench_max_clique, bench_vinogradov);
criterion_main!(benches);
