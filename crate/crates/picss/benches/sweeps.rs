use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use picss::field::ExtensionField;
use picss::hfpss::{self, Group, PicardContext, Setup, Sweep};
use picss::par;

fn kernel_orders(f: &ExtensionField, xi: u32) -> u64 {
    f.elements().map(|eta| hfpss::semilinear_kernel(f, xi, eta).unwrap().order).max().unwrap_or(0)
}

fn kernel_scan(c: &mut Criterion) {
    let f = ExtensionField::new(5, 4).unwrap();
    let units: Vec<u32> = f.units().step_by(8).collect();
    let mut g = c.benchmark_group("semilinear_kernel_scan_f625");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("sequential", units.len()), |b| {
        b.iter(|| par::map_seq(black_box(&units), |&xi| kernel_orders(&f, xi)))
    });
    g.bench_function(BenchmarkId::new("parallel", units.len()), |b| {
        b.iter(|| par::map_par(black_box(&units), |&xi| kernel_orders(&f, xi)))
    });
    g.finish();
}

fn picard_parameter_runs(c: &mut Criterion) {
    let ctx = PicardContext::new(5, Group::Cp).unwrap();
    let setup = Setup::new(5, Group::Cp).unwrap();
    let params = hfpss::parameter_sweep(&setup, Sweep::Sampled { count: 64, seed: hfpss::DEFAULT_SEED });
    let mut g = c.benchmark_group("picard_order_p5");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("sequential", params.len()), |b| {
        b.iter(|| par::map_seq(black_box(&params), |&pp| ctx.run(pp).unwrap().order))
    });
    g.bench_function(BenchmarkId::new("parallel", params.len()), |b| {
        b.iter(|| par::map_par(black_box(&params), |&pp| ctx.run(pp).unwrap().order))
    });
    g.finish();
}

criterion_group!(benches, kernel_scan, picard_parameter_runs);
criterion_main!(benches);
