use std::hint::black_box;

use algdecomp::algebra::NormChoice;
use algdecomp::jacobi::{aqr, asvd, Beta, QrOptions, SvdOptions};
use algdecomp::wedderburn::{rep_cl41, wqr, wsvd, WedderburnOptions};
use algdecomp_bench::{cl41, laurent};
use criterion::{criterion_group, criterion_main, Criterion};

fn qr(c: &mut Criterion) {
    let a = cl41(3, 2, 7);
    let rep = rep_cl41().unwrap();
    let mut g = c.benchmark_group("cl41_3x2_qr");
    for eps in [1e-4, 1e-10] {
        let opts = QrOptions::new(Beta::Basis, NormChoice::Inf, eps);
        g.bench_function(format!("jacobi_eps{eps:e}"), |b| {
            b.iter(|| aqr(black_box(&a), &opts).unwrap())
        });
    }
    let opts = WedderburnOptions::new(0.0).with_workers(Some(1));
    g.bench_function("wedderburn_exact", |b| {
        b.iter(|| wqr(black_box(&a), &rep, &opts).unwrap())
    });
    g.finish();
}

fn svd(c: &mut Criterion) {
    let a = cl41(3, 2, 0);
    let rep = rep_cl41().unwrap();
    let mut g = c.benchmark_group("cl41_3x2_svd");
    g.sample_size(10);
    let opts =
        SvdOptions::new(QrOptions::new(Beta::Basis, NormChoice::Inf, 1e-8)).with_max_iters(50_000);
    g.bench_function("jacobi_eps1e-8", |b| {
        b.iter(|| asvd(black_box(&a), &opts).unwrap())
    });
    let opts = WedderburnOptions::new(1e-8)
        .with_max_iters(50_000)
        .with_workers(Some(1));
    g.bench_function("wedderburn_eps1e-8", |b| {
        b.iter(|| wsvd(black_box(&a), &rep, &opts).unwrap())
    });
    g.finish();
}

fn laurent_qr(c: &mut Criterion) {
    let a = laurent(3, 3, 2, 70);
    let opts = QrOptions::new(Beta::Basis, NormChoice::Inf, 1e-5).with_trim(1e-9);
    c.bench_function("laurent_3x3_qr_eps1e-5", |b| {
        b.iter(|| aqr(black_box(&a), &opts).unwrap())
    });
}

criterion_group!(benches, qr, svd, laurent_qr);
criterion_main!(benches);
