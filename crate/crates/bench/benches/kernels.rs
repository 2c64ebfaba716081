use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hankel_bench::{descriptor, ARGS};
use hankel_core::identities::{check, quad_config_for};
use hankel_core::specfun::{bessel_j_value, bessel_k_value, gamma_value, struve_h_value};
use hankel_core::{transform, Order, QuadConfig, TransformKind};

fn special(c: &mut Criterion) {
    let mut g = c.benchmark_group("specfun");
    g.bench_function("gamma", |b| b.iter(|| ARGS.iter().map(|&x| gamma_value(black_box(x) * 0.3 - 0.4)).sum::<f64>()));
    for nu in [0.0, 0.5, 2.3] {
        g.bench_with_input(BenchmarkId::new("bessel_j", nu), &nu, |b, &nu| {
            b.iter(|| ARGS.iter().map(|&x| bessel_j_value(nu, black_box(x))).sum::<f64>())
        });
        g.bench_with_input(BenchmarkId::new("bessel_k", nu), &nu, |b, &nu| {
            b.iter(|| ARGS.iter().map(|&x| bessel_k_value(nu, black_box(x))).sum::<f64>())
        });
        g.bench_with_input(BenchmarkId::new("struve_h", nu), &nu, |b, &nu| {
            b.iter(|| ARGS.iter().map(|&x| struve_h_value(nu, black_box(x))).sum::<f64>())
        });
    }
    g.finish();
}

fn transforms(c: &mut Criterion) {
    let cfg = QuadConfig::default();
    let half = Order::new(0.5).unwrap();
    let cases = [
        ("laplace", TransformKind::Laplace, "exp_decay:a=1"),
        ("widder", TransformKind::Widder, "lorentz_power:nu=0.5,a=1"),
        ("stieltjes", TransformKind::Stieltjes, "exp_decay:a=1"),
        ("fourier_sine", TransformKind::FourierSine, "exp_decay:a=1"),
        ("hankel", TransformKind::Hankel(half), "exp_decay:a=1"),
        ("k_transform", TransformKind::KTransform(half), "power:mu=0.5"),
    ];
    let mut g = c.benchmark_group("transform");
    for (name, kind, f) in cases {
        let f = descriptor(f);
        g.bench_function(name, |b| b.iter(|| transform(kind, &f, black_box(2.0), &cfg).unwrap()));
    }
    g.finish();
}

fn identities(c: &mut Criterion) {
    let cfg = quad_config_for(1e-6);
    let mut g = c.benchmark_group("identity");
    g.sample_size(10);
    for id in ["KERN", "EX1", "T2.3", "L1.1"] {
        g.bench_function(id, |b| b.iter(|| check(id, None, 2, 1e-6, &cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, special, transforms, identities);
criterion_main!(benches);
