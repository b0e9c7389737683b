use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rvm_core::arith::ChebyshevTable;
use rvm_core::constants::{normalized_sup, KTable, MSpec, SupStrategy};
use rvm_core::empirical::{find_prime_in_power_interval, zero_sum, ZerosDataset};
use rvm_core::gaps::{scan_condition, Admissibility, GapParams, Grid};
use rvm_core::weights::{canonical_weight, weight_constants, WeightTolerances};
use rvm_core::zeta::ZetaBoundsConfig;

fn weights(c: &mut Criterion) {
    let w = canonical_weight();
    let tol = WeightTolerances::default();
    c.bench_function("weight_constants", |b| b.iter(|| weight_constants(black_box(&w), &tol).unwrap()));
}

fn sieve(c: &mut Criterion) {
    c.bench_function("sieve_1e6", |b| b.iter(|| ChebyshevTable::new(black_box(1_000_000)).unwrap()));
}

fn zeros(c: &mut Criterion) {
    let ds = ZerosDataset::bundled();
    c.bench_function("zero_sum_T1000", |b| b.iter(|| zero_sum(black_box(1e5), 1000.0, &ds, false).unwrap()));
}

fn sup(c: &mut Criterion) {
    let k = KTable::shipped().lookup(40.0, 0.5, 0.0).unwrap().k;
    let spec = MSpec { log_x_m: 40.0, alpha: 0.5, omega: 0.0, lambda: 0.43, k };
    let theta = rvm_core::weights::canonical_constants().theta_prime;
    let s = SupStrategy::default();
    c.bench_function("normalized_sup_row1", |b| b.iter(|| normalized_sup(black_box(&spec), theta, &s).unwrap()));
}

fn gaps(c: &mut Criterion) {
    let z = ZetaBoundsConfig::shipped();
    let p = GapParams { admissibility: Admissibility::Report, ..GapParams::primes_between_powers(0.0112) };
    c.bench_function("condition_scan_200", |b| b.iter(|| scan_condition(&p, &z, 4000.0, 1e6, Grid::Geometric(200)).unwrap()));
}

fn powers(c: &mut Criterion) {
    let mut g = c.benchmark_group("power_interval");
    g.sample_size(10);
    g.bench_function("n100_m90", |b| b.iter(|| find_prime_in_power_interval(black_box(100), 90).unwrap()));
    g.finish();
}

criterion_group!(benches, weights, sieve, zeros, sup, gaps, powers);
criterion_main!(benches);
