//! Quotient fan, universal family and checks on a few rank-3 inputs, run on
//! a single-thread pool and on the default rayon pool.

#[path = "../tests/common/mod.rs"]
mod common;

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use toric_chow::chow::ChowQuotient;
use toric_chow::family::UniversalFamily;
use toric_chow::lattice::Sublattice;
use toric_chow::polyhedra::Fan;
use toric_chow::verify::{run_checks, CheckSelection};

fn inputs() -> Vec<(Fan, Sublattice)> {
    common::corpus().into_iter().filter(|(_, f, _)| f.ambient_rank() == 3).map(|(_, f, l)| (f, l)).collect()
}

fn pipeline(inputs: &[(Fan, Sublattice)]) -> usize {
    let sel = CheckSelection { bound: 4, ..CheckSelection::default() };
    inputs
        .iter()
        .map(|(f, l)| {
            let cq = ChowQuotient::new(f, l).unwrap();
            let fam = UniversalFamily::new(&cq).unwrap();
            run_checks(&fam, &sel).unwrap().len() + fam.fan().len()
        })
        .sum()
}

fn bench(c: &mut Criterion) {
    let data = inputs();
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    #[cfg(feature = "parallel")]
    {
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        group.bench_function("sequential", |b| b.iter(|| single.install(|| pipeline(black_box(&data)))));
        group.bench_function("parallel", |b| b.iter(|| pipeline(black_box(&data))));
    }
    #[cfg(not(feature = "parallel"))]
    group.bench_function("sequential", |b| b.iter(|| pipeline(black_box(&data))));
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
