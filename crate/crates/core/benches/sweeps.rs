//! Sequential versus parallel sweeps over `n`. Each iteration builds fresh
//! families so recursion caches do not carry over between samples.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use charvar::criterion::check_range;
use charvar::factorint::IrreducibilityOptions;
use charvar::families::{Family, FamilySpec};
use charvar::numeric::{check_numeric_range, NumericOptions};
use charvar::par::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn criterion_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_range");
    g.sample_size(10);
    let ns: Vec<i64> = (-16..=16).collect();
    for (name, exec) in MODES {
        let opts = IrreducibilityOptions {
            exec,
            ..IrreducibilityOptions::default()
        };
        g.bench_with_input(BenchmarkId::new("twist", name), &ns, |b, ns| {
            b.iter(|| {
                let f = Family::new(FamilySpec::twist());
                black_box(check_range(&f, ns, &opts))
            })
        });
        let j3: Vec<i64> = (-12..=-1).collect();
        g.bench_with_input(BenchmarkId::new("j3", name), &j3, |b, ns| {
            b.iter(|| {
                let f = Family::new(FamilySpec::j3());
                black_box(check_range(&f, ns, &opts))
            })
        });
    }
    g.finish();
}

fn numeric_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("numeric");
    g.sample_size(10);
    let ns: Vec<i64> = (-8..=-1).collect();
    let f = Family::j3();
    for (name, exec) in MODES {
        let opts = NumericOptions {
            exec,
            ..NumericOptions::default()
        };
        g.bench_with_input(BenchmarkId::new("j3", name), &ns, |b, ns| {
            b.iter(|| black_box(check_numeric_range(f, ns, &opts)))
        });
    }
    g.finish();
}

criterion_group!(benches, criterion_sweep, numeric_sweep);
criterion_main!(benches);
