//! Sequential vs parallel sweeps over the data-parallel workloads: torsion
//! profiles across roots of unity and the random-complex agreement batch.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rtorsion::exec;
use rtorsion::random::random_acyclic_complex;
use rtorsion::spaces::LensSpace;
use rtorsion::torsion::{torsion_alternating, torsion_milnor};
use rtorsion::{ComplexChainComplex, Representation};

fn profile_workload(p: u64) -> Vec<(LensSpace, i64)> {
    let lens = LensSpace::new(p, &[1, 2, 3]).expect("valid lens parameters");
    (1..p as i64).map(|k| (lens.clone(), k)).collect()
}

fn bench_profiles(c: &mut Criterion) {
    let mut group = c.benchmark_group("lens_profile_sweep");
    for p in [101u64, 251] {
        let items = profile_workload(p);
        let eval = |(lens, k): &(LensSpace, i64)| {
            let rep = Representation::root_of_unity(lens.p(), *k).expect("nonzero index");
            lens.torsion(&rep).expect("acyclic").modulus_squared()
        };
        group.bench_with_input(BenchmarkId::new("seq", p), &items, |b, items| {
            b.iter(|| exec::sweep_seq(items, eval))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", p), &items, |b, items| {
            b.iter(|| exec::sweep_par(items, eval))
        });
    }
    group.finish();
}

fn bench_agreement_batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let batch: Vec<ComplexChainComplex> =
        (0..64).map(|_| random_acyclic_complex(&mut rng)).collect();
    let eval = |complex: &ComplexChainComplex| {
        let m = torsion_milnor(complex, None).expect("acyclic").value.norm();
        let a = torsion_alternating(complex).expect("acyclic");
        (m, a)
    };
    let mut group = c.benchmark_group("agreement_batch");
    group.bench_function("seq", |b| b.iter(|| exec::sweep_seq(&batch, eval)));
    #[cfg(feature = "parallel")]
    group.bench_function("par", |b| b.iter(|| exec::sweep_par(&batch, eval)));
    group.finish();
}

criterion_group!(benches, bench_profiles, bench_agreement_batch);
criterion_main!(benches);
