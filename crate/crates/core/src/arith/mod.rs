//! Prime-power arithmetic and the auxiliary bounds of the error budget.

pub mod bounds;
pub mod sieve;

pub use bounds::{
    bt_interval_bound, bt_interval_bound_log, c0, delange_bound, mass_upper, psi_theta_gap, BtBound, BtMass,
    PsiThetaConstants, SieveMass,
};
pub use sieve::{ChebyshevTable, KahanSum, SieveOptions};
