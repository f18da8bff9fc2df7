use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use qalg_bench::fresh;
use qalg_core::invariants::{algebra_domdim, hochschild_cohomology, torsion_free_degree};
use qalg_core::module::regular_bimodule;
use qalg_core::verify::resolve_ids;
use qalg_core::{verify_statements, Cutoffs};

fn domdim(c: &mut Criterion) {
    c.bench_function("domdim cyc3", |b| {
        b.iter_batched(|| fresh("cyc3", None), |a| algebra_domdim(&a, 10).unwrap(), BatchSize::SmallInput)
    });
    c.bench_function("tfdeg bimodule cyc3", |b| {
        b.iter_batched(
            || fresh("cyc3", None),
            |a| torsion_free_degree(&regular_bimodule(&a).unwrap(), 5).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn hochschild(c: &mut Criterion) {
    for m in [2, 3] {
        c.bench_function(&format!("HH^0..4 schur({m})"), |b| {
            b.iter_batched(
                || fresh("schur", Some(m)),
                |a| (0..=4).map(|l| hochschild_cohomology(&a, l).unwrap()).sum::<usize>(),
                BatchSize::SmallInput,
            )
        });
    }
}

fn verify(c: &mut Criterion) {
    let ids = resolve_ids("all").unwrap();
    c.bench_function("verify all cyc3", |b| {
        b.iter_batched(
            || fresh("cyc3", None),
            |a| verify_statements(&a, &ids, Cutoffs::default()),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, domdim, hochschild, verify);
criterion_main!(benches);
