use criterion::{criterion_group, criterion_main, Criterion};

use superw_core::dynkin::{nilpotent_element, nilpotent_frame};
use superw_core::lie::build_q;
use superw_core::modrep::min_dim_search;
use superw_core::par::{set_default, Exec};
use superw_core::suite::{run_suite, SuiteConfig, SuiteName};

fn baby_verma_search(c: &mut Criterion) {
    let g = build_q(&"gl(2|1)".parse().unwrap()).unwrap();
    let e = nilpotent_element(&g, &"jordan:2|1".parse().unwrap()).unwrap();
    let fr = nilpotent_frame(&g, &e).unwrap();
    let mut group = c.benchmark_group("min_dim_search gl(2|1) p=5");
    group.sample_size(10);
    for (name, exec) in [
        ("parallel", Exec::Parallel),
        ("sequential", Exec::Sequential),
    ] {
        group.bench_function(name, |b| {
            set_default(exec);
            b.iter(|| min_dim_search(&g, &fr, 5, 0, 5000).unwrap())
        });
    }
    group.finish();
}

fn envelope_suite(c: &mut Criterion) {
    let config = SuiteConfig {
        suites: vec![SuiteName::Envelope],
        primes: vec![3],
        ..SuiteConfig::default()
    };
    let mut group = c.benchmark_group("envelope suite p=3");
    group.sample_size(10);
    for (name, exec) in [
        ("parallel", Exec::Parallel),
        ("sequential", Exec::Sequential),
    ] {
        group.bench_function(name, |b| {
            set_default(exec);
            b.iter(|| run_suite(&config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, baby_verma_search, envelope_suite);
criterion_main!(benches);
