//! Desk-scale empirical checks of the explicit formula and of primes between
//! consecutive powers. Nothing here tests the certified regime `x ≥ e⁴⁰`.

pub mod powers;
pub mod primality;
pub mod residual;
pub mod zeros;

pub use powers::{find_prime_in_power_interval, PowerIntervalWitness};
pub use primality::{is_prime, Certification, TestPolicy};
pub use residual::{residual_scan, zero_sum, ResidualScan};
pub use zeros::{load_zeros, ZerosDataset};

/// Label carried by every residual report.
pub const DESK_SCALE_NOTE: &str =
    "desk-scale sanity check of the classical explicit formula; not a test of the constant M (certified only for x >= e^40)";
