use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ffwb_core::algebra::{residue_field, Gf, PolyA};
use ffwb_core::anderson::{carlitz, carlitz_period, torsion_char};
use ffwb_core::gauss::{enumerate_characters, gauss_sum};
use ffwb_core::lseries::stratum;
use ffwb_core::par;
use ffwb_core::series::SeriesContext;
use ffwb_core::special::agf;

fn modes(c: &mut Criterion) {
    let ctx = SeriesContext::new(3, 2, 240).unwrap();
    let fq = Arc::new(Gf::fq(3).unwrap());
    let p = Arc::new(residue_field(&PolyA::from_codes(&fq, &[1, 0, 1]).unwrap()).unwrap());
    let m = carlitz(&ctx);
    let pi = carlitz_period(&ctx);
    let psi = torsion_char(&m, &[pi.clone()], &p).unwrap();

    for parallel in [false, true] {
        let mode = if parallel { "rayon" } else { "sequential" };
        par::set_parallel(parallel);
        c.bench_with_input(BenchmarkId::new("torsion_char", mode), &(), |b, _| {
            b.iter(|| torsion_char(&m, &[pi.clone()], &p).unwrap())
        });
        c.bench_with_input(BenchmarkId::new("agf_nt32", mode), &(), |b, _| {
            b.iter(|| agf(&m, &[pi.clone()], 32).unwrap())
        });
        c.bench_with_input(BenchmarkId::new("gauss_sums", mode), &(), |b, _| {
            b.iter(|| enumerate_characters(&p).iter().map(|chi| gauss_sum(chi, &psi)).count())
        });
        c.bench_with_input(BenchmarkId::new("stratum_5", mode), &(), |b, _| {
            b.iter(|| stratum(&ctx, 5, 1, 8).unwrap())
        });
    }
    par::set_parallel(true);
}

criterion_group!(benches, modes);
criterion_main!(benches);
