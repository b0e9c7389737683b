use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rvm_core::arith::{bt_interval_bound, c0, delange_bound, mass_upper, ChebyshevTable, PsiThetaConstants};
use rvm_core::weights::canonical_constants;

const LIMIT: u64 = 20_000_000;

fn table() -> &'static ChebyshevTable {
    static T: OnceLock<ChebyshevTable> = OnceLock::new();
    T.get_or_init(|| ChebyshevTable::new(LIMIT).unwrap())
}

#[test]
fn psi_is_sum_of_theta_at_roots() {
    let t = table();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let x: f64 = rng.gen_range(2.0..LIMIT as f64);
        let mut sum = 0.0;
        let mut k = 1;
        while x.powf(1.0 / k as f64) >= 2.0 {
            sum += t.theta(x.powf(1.0 / k as f64)).unwrap();
            k += 1;
        }
        let psi = t.psi(x).unwrap();
        assert!((psi - sum).abs() <= 1e-9 * psi, "x={x}: {psi} vs {sum}");
    }
}

#[test]
fn mass_bound_dominates_sieve() {
    let t = table();
    let theta = canonical_constants().theta_prime.lo;
    let lambda = 0.43;
    let c = c0(lambda).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let x = 10f64.powf(rng.gen_range(3.0..7.0));
        let big_t = 51f64.max(x.ln().powi(2));
        let b = bt_interval_bound(x, big_t, lambda, theta, &PsiThetaConstants::default()).unwrap();
        let u = rng.gen_range(theta / big_t..lambda);
        let exact = t.lambda_mass(x - u * x, x + (c - 1.0) * u * x).unwrap();
        let bound = mass_upper(x, u, b.e1, b.e2, lambda).unwrap();
        assert!(exact <= bound, "x={x} u={u}: {exact} > {bound}");
    }
}

#[test]
fn delange_dominates_partial_sums() {
    let t = table();
    for kappa in [1.05, 1.1, 1.5, 2.0] {
        let mut acc = 0.0;
        for n in 2..=10_000_000u64 {
            let v = t.von_mangoldt(n);
            if v != 0.0 {
                acc += v * (n as f64).powf(-kappa);
            }
        }
        assert!(acc <= delange_bound(kappa).unwrap(), "kappa={kappa}: {acc}");
    }
}

#[test]
fn c0_continuous_at_switch() {
    let below = c0(1e-6 * (1.0 - 1e-12)).unwrap();
    let above = c0(1e-6).unwrap();
    assert!((below - above).abs() <= 1e-12);
}
