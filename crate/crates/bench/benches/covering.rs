use std::hint::black_box;

use covrel::campaign::build_paper_data;
use covrel::covering::{verify_cover, EvalMode, VerifyConfig};
use covrel::dynamics::{MapSystem, QuadraticReversibleMap};
use covrel::interval::{IBox, Interval};
use criterion::{criterion_group, criterion_main, Criterion};

fn interval_ops(c: &mut Criterion) {
    let a = Interval::new(-1.25, 2.5);
    let b = Interval::new(0.3, 0.7);
    c.bench_function("interval add", |bn| bn.iter(|| black_box(a) + black_box(b)));
    c.bench_function("interval mul", |bn| bn.iter(|| black_box(a) * black_box(b)));
    c.bench_function("interval sqr", |bn| bn.iter(|| black_box(a).sqr()));
}

fn map_eval(c: &mut Criterion) {
    let f = QuadraticReversibleMap::new();
    let x: IBox = [0.1, -0.2, -2.9, -1.6]
        .iter()
        .map(|&v| Interval::new(v, v + 1e-3))
        .collect();
    c.bench_function("F on a box", |bn| bn.iter(|| f.eval(black_box(&x))));
    c.bench_function("DF on a box", |bn| bn.iter(|| f.derivative(black_box(&x))));
}

fn self_covering(c: &mut Criterion) {
    let data = build_paper_data().unwrap();
    let n1 = data.hset("N1").unwrap();
    let f = QuadraticReversibleMap::new();
    let cfg = VerifyConfig {
        eval_mode: EvalMode::MeanValue,
        threads: 1,
        ..VerifyConfig::default()
    };
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("N1 => N1, mean-value", |bn| {
        bn.iter(|| verify_cover(n1, &f, 1, n1, &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, interval_ops, map_eval, self_covering);
criterion_main!(benches);
