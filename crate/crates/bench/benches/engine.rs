use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qsobolev::asc::AscFamily;
use qsobolev::jfrac::{JFraction, JFractionOptions};
use qsobolev::ladder::Ladder;
use qsobolev::sobolev::SobolevFamily;
use qsobolev::suite::{self, Group, SuiteOptions};
use qsobolev::{Backend, Ell, Real, ZRat};
use qsobolev_bench::{default_context, second_context};

fn classical(c: &mut Criterion) {
    let ctx = default_context(2);
    let mut g = c.benchmark_group("classical");
    for n in [4usize, 8] {
        g.bench_with_input(BenchmarkId::new("poly", n), &n, |b, &n| {
            b.iter(|| AscFamily::<ZRat>::new(&ctx).unwrap().poly(n))
        });
    }
    g.finish();
}

fn sobolev(c: &mut Criterion) {
    let mut g = c.benchmark_group("sobolev");
    g.sample_size(10);
    for j in [1usize, 2, 3] {
        let ctx = second_context(j);
        g.bench_with_input(BenchmarkId::new("exact_deg6", j), &ctx, |b, ctx| {
            b.iter(|| SobolevFamily::<ZRat>::new(ctx).unwrap().sobolev_poly(6).unwrap())
        });
    }
    let approx = default_context(2).with_backend(Backend::Approx);
    g.bench_function("approx_deg8", |b| {
        b.iter(|| SobolevFamily::<Real>::new(&approx).unwrap().sobolev_poly(8).unwrap())
    });
    g.finish();
}

fn recurrence(c: &mut Criterion) {
    let mut g = c.benchmark_group("recurrence");
    g.sample_size(10);
    let ctx = default_context(2);
    g.bench_function("ttrr_deg4", |b| {
        b.iter(|| Ladder::<ZRat>::from_ctx(&ctx, None).unwrap().ttrr_coeffs(4, Ell::Plus).unwrap())
    });
    g.bench_function("jfraction_depth4", |b| {
        b.iter(|| {
            let lad = Ladder::<ZRat>::from_ctx(&ctx, None).unwrap();
            JFraction::build(&lad, Ell::Minus, 4, &JFractionOptions::default()).unwrap()
        })
    });
    g.finish();
}

fn verify(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    let ctx = default_context(2);
    let opts = SuiteOptions::new(3).with_groups(&[Group::Classical, Group::Sobolev, Group::Ladder]);
    g.bench_function("suite_n3", |b| b.iter(|| suite::run(&ctx, &opts).unwrap()));
    g.finish();
}

criterion_group!(benches, classical, sobolev, recurrence, verify);
criterion_main!(benches);
