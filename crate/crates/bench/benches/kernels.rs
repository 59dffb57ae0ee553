use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use bindsig_core::adamek::{build_chain, compare_with_terms, DEFAULT_CAP};
use bindsig_core::colimit::colimit;
use bindsig_core::colimit::sample::random_diagram;
use bindsig_core::random::{rng, TermGen};
use bindsig_core::signature::{lambda_calculus, list_signature, mltt79};
use bindsig_core::subst::subst;
use bindsig_core::term::enumerate_terms;
use bindsig_core::{Bounds, Substitution};

fn substitution(c: &mut Criterion) {
    let mut group = c.benchmark_group("subst");
    for sig in [lambda_calculus(), mltt79()] {
        let gen = TermGen::new(&sig, 3, 60);
        let mut r = rng(1);
        let cases: Vec<_> = (0..256)
            .map(|_| {
                let t = gen.term(&mut r, 2).unwrap();
                let s = Substitution::new(2, 3, gen.images(&mut r, 2, 3).unwrap()).unwrap();
                (t, s)
            })
            .collect();
        group.bench_function(BenchmarkId::from_parameter(sig.name()), |b| {
            b.iter(|| cases.iter().map(|(t, s)| subst(black_box(t), s).size()).sum::<usize>())
        });
    }
    group.finish();
}

fn colimits(c: &mut Criterion) {
    let mut r = rng(2);
    let diagrams: Vec<_> = (0..256).map(|_| random_diagram(&mut r, 5, 8, 6)).collect();
    c.bench_function("colimit/random_small", |b| {
        b.iter(|| diagrams.iter().map(|d| colimit(black_box(d)).tip().size).sum::<usize>())
    });
}

fn chains(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_chain");
    group.sample_size(20);
    group.bench_function("LC K=3 n=1", |b| b.iter(|| build_chain(&lambda_calculus(), 0, 4, 3, DEFAULT_CAP).unwrap()));
    group.bench_function("List2 K=12", |b| b.iter(|| build_chain(&list_signature(2), 3, 0, 12, DEFAULT_CAP).unwrap()));
    group.bench_function("MLTT79 pb2 K=2 n=1", |b| b.iter(|| build_chain(&mltt79(), 2, 7, 2, DEFAULT_CAP).unwrap()));
    group.finish();

    let mut group = c.benchmark_group("oracle_vs_enumeration");
    group.sample_size(20);
    let ch = build_chain(&lambda_calculus(), 0, 5, 3, DEFAULT_CAP).unwrap();
    group.bench_function("compare_with_terms LC K=3 n=2", |b| b.iter(|| compare_with_terms(&ch, 2).unwrap()));
    group.bench_function("enumerate_terms LC depth 3 n=2", |b| {
        b.iter(|| enumerate_terms(&lambda_calculus(), 2, 3, Bounds::default()).unwrap().len())
    });
    group.finish();
}

criterion_group!(benches, substitution, colimits, chains);
criterion_main!(benches);
