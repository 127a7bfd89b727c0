use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mpss_core::corpus::connected_corpus;
use mpss_core::exec::Exec;
use mpss_core::graph::{gamma, product, ProductKind};
use mpss_core::mpss::{h1_filtered, page_table};
use mpss_core::nerve::FilteredChainComplex;

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn complex_build(c: &mut Criterion) {
    let g = product(&gamma(4), &gamma(3), ProductKind::Box);
    let mut group = c.benchmark_group("complex_build");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "Γ4□Γ3"), |b| {
            b.iter(|| FilteredChainComplex::build_with(&g, 3, 5, exec))
        });
    }
    group.finish();
}

fn page_tables(c: &mut Criterion) {
    let g = gamma(4);
    let cx = FilteredChainComplex::build(&g, 3, 7);
    let mut group = c.benchmark_group("page_table");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "Γ4 r=3"), |b| {
            b.iter(|| page_table(&cx, 3, 0..=5, 0..=2, exec).unwrap())
        });
    }
    group.finish();
}

fn corpus_sweep(c: &mut Criterion) {
    let corpus = connected_corpus(1, 64);
    let mut group = c.benchmark_group("corpus_h1");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "64 graphs r=3"), |b| {
            b.iter(|| exec.map(&corpus, |g| h1_filtered(g, 3).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, complex_build, page_tables, corpus_sweep);
criterion_main!(benches);
