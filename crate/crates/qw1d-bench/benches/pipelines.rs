use criterion::{criterion_group, criterion_main, Criterion};

use qw1d::dispersion::lambda_infty;
use qw1d::jost::{jost_pair, solve_jost, Direction};
use qw1d::resolvent::{default_eval_window, ResolventKernel};
use qw1d::transfer::{propagate, StateVector};
use qw1d::{C64, Sheet, SheetPoint, Vec2};
use qw1d_bench::long_range_coin;

fn bench_propagation(c: &mut Criterion) {
    let (seq, _) = long_range_coin();
    let p = SheetPoint::new(Sheet::One, C64::new(1.3, 0.05)).unwrap();
    let lambda = lambda_infty(&seq, &p).unwrap();
    let v0 = Vec2(C64::new(1.0, 0.0), C64::new(0.3, 0.1));
    c.bench_function("propagate_401_sites", |b| {
        b.iter(|| propagate(&seq, v0, -200, 200, lambda).unwrap())
    });
}

fn bench_jost(c: &mut Criterion) {
    let (seq, cut) = long_range_coin();
    let p = SheetPoint::new(Sheet::One, C64::new(1.3, 0.05)).unwrap();
    c.bench_function("jost_plus_401_sites", |b| {
        b.iter(|| solve_jost(&seq, &cut, &p, Direction::Plus).unwrap())
    });
    c.bench_function("jost_pair_401_sites", |b| {
        b.iter(|| jost_pair(&seq, &cut, &p).unwrap())
    });
}

fn bench_kernel(c: &mut Criterion) {
    let (seq, cut) = long_range_coin();
    let p = SheetPoint::new(Sheet::One, C64::new(1.3, 0.05)).unwrap();
    c.bench_function("kernel_assembly", |b| {
        b.iter(|| ResolventKernel::new(&seq, &cut, &p, default_eval_window(&seq)).unwrap())
    });
    let k = ResolventKernel::new(&seq, &cut, &p, default_eval_window(&seq)).unwrap();
    c.bench_function("kernel_row_eval", |b| {
        b.iter(|| {
            let (lo, hi) = k.window();
            let mut acc = 0.0;
            for x in lo..=hi {
                acc += k.eval(x, 0).norm_frobenius();
            }
            acc
        })
    });
    let (lo, hi) = k.window();
    let u = StateVector::delta(lo, hi, 0, 0).unwrap();
    c.bench_function("apply_resolvent", |b| {
        b.iter(|| qw1d::resolvent::apply_resolvent(&k, &u).unwrap())
    });
}

criterion_group!(benches, bench_propagation, bench_jost, bench_kernel);
criterion_main!(benches);
