use proptest::prelude::*;
use rvm_core::gaps::{admissible_from, condition_lhs, Admissibility, GapParams, MSchedule};
use rvm_core::zeta::{ZeroCountShape, ZeroDensityShape, ZetaBoundsConfig};

fn params(mu: f64) -> GapParams {
    GapParams { admissibility: Admissibility::Report, ..GapParams::primes_between_powers(mu) }
}

fn scaled_config(count: f64, density: f64) -> ZetaBoundsConfig {
    let base = ZetaBoundsConfig::shipped();
    let c = match base.zero_count.as_ref().unwrap().shape {
        ZeroCountShape::Hsw { c_a, c_b, c_c } => ZeroCountShape::Hsw { c_a: c_a * count, c_b: c_b * count, c_c: c_c * count },
        s => s,
    };
    let d = match base.zero_density.as_ref().unwrap().shape {
        ZeroDensityShape::Kln { c1, p, q, r, c2 } => ZeroDensityShape::Kln { c1: c1 * density, p, q, r, c2: c2 * density },
        s => s,
    };
    base.with_count(c, "scaled").with_density(d, "scaled")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn report_reconstructs(log_x in 1000.0f64..1e6, mu in 0.0106f64..0.0117) {
        let r = condition_lhs(log_x, &params(mu), &ZetaBoundsConfig::shipped()).unwrap();
        prop_assert!((r.lhs - r.reconstructed()).abs() <= 1e-12);
    }

    #[test]
    fn lhs_nonincreasing_in_m(log_x in 1000.0f64..1e6, a in 0.0f64..20.0, b in 0.0f64..20.0) {
        let z = ZetaBoundsConfig::shipped();
        let with = |m| GapParams { schedule: MSchedule::constant(1e3, m, 0.9), ..params(0.0112) };
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assert!(condition_lhs(log_x, &with(hi), &z).unwrap().lhs <= condition_lhs(log_x, &with(lo), &z).unwrap().lhs);
    }

    #[test]
    fn lhs_nonincreasing_in_zeta_constants(log_x in 1000.0f64..1e6, s in 1.0f64..3.0, which in 0usize..2) {
        let base = scaled_config(1.0, 1.0);
        let bigger = if which == 0 { scaled_config(s, 1.0) } else { scaled_config(1.0, s) };
        let p = params(0.0112);
        prop_assert!(condition_lhs(log_x, &p, &bigger).unwrap().lhs <= condition_lhs(log_x, &p, &base).unwrap().lhs);
    }
}

#[test]
fn admissible_threshold_rounds_to_1492() {
    let l = admissible_from(0.0113, 1.0 / 85.0, 1000.0).unwrap();
    assert_eq!(l.ceil(), 1492.0);
    let z = ZetaBoundsConfig::shipped();
    assert!(condition_lhs(l.ceil(), &GapParams::primes_between_powers(0.0113), &z).is_ok());
    assert!(condition_lhs(l.floor(), &GapParams::primes_between_powers(0.0113), &z).is_err());
}
