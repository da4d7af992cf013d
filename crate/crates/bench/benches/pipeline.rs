use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use heavycrit::levy::{excursions, sample_marks, sample_path, theta_from_powerlaw};
use heavycrit::percolation::{dynamic_sweep, SweepOptions};
use heavycrit::{
    explore, gen_deterministic, scaling_constants, simulate, stream, ParticleSystem, PowerLawSpec, SlowlyVarying,
};
use std::hint::black_box;

fn spec() -> PowerLawSpec {
    PowerLawSpec::new(3.5, 1.0, SlowlyVarying::Constant(1.0), 0.0).unwrap()
}

fn degrees(c: &mut Criterion) {
    let s = spec();
    c.bench_function("gen_deterministic n=1e5", |b| b.iter(|| gen_deterministic(&s, black_box(100_000)).unwrap()));
}

fn exploration(c: &mut Criterion) {
    let d = gen_deterministic(&spec(), 100_000).unwrap();
    let mut seed = 0u64;
    c.bench_function("explore n=1e5", |b| {
        b.iter(|| {
            seed += 1;
            explore(&d, &mut stream(1, seed), &[]).unwrap()
        })
    });
}

fn sweep(c: &mut Criterion) {
    let s = spec();
    let d = gen_deterministic(&s, 100_000).unwrap();
    let consts = scaling_constants(&s, 100_000).unwrap();
    let grid = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let opts = SweepOptions { keep_top: 20, ..Default::default() };
    let mut seed = 0u64;
    c.bench_function("dynamic_sweep n=1e5 5 windows", |b| {
        b.iter(|| {
            seed += 1;
            dynamic_sweep(&d, &consts, &grid, &mut stream(2, seed), &opts).unwrap()
        })
    });
}

fn levy(c: &mut Criterion) {
    let theta = theta_from_powerlaw(&spec(), 10_000, 1.155, 30.0, None).unwrap();
    let mut seed = 0u64;
    c.bench_function("levy path+excursions+marks k=1e4", |b| {
        b.iter(|| {
            seed += 1;
            let mut rng = stream(3, seed);
            let path = sample_path(&theta, &mut rng).unwrap();
            sample_marks(&excursions(&path), &mut rng).unwrap()
        })
    });
}

fn amc(c: &mut Criterion) {
    let masses: Vec<f64> = (1..=1000).map(|i| (i as f64).powf(-0.4)).collect();
    let sys = ParticleSystem::standard(&masses, &[]);
    let mut seed = 0u64;
    c.bench_function("amc 1000 particles t=1", |b| {
        b.iter_batched(
            || {
                seed += 1;
                stream(4, seed)
            },
            |mut rng| simulate(&sys, 1.0, &mut rng).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = degrees, exploration, sweep, levy, amc
}
criterion_main!(benches);
