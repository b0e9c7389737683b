//! Auxiliary bounds for the `ψ(x)` error budget.

use crate::error::{precondition, Result};
use crate::perron::MassOracle;

use super::sieve::ChebyshevTable;

/// `0 < ψ(x) - θ(x) < a₁ x^{1/2} + a₂ x^{1/3}` for `log x ≥ valid_from_log`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiThetaConstants {
    pub a1: f64,
    pub a2: f64,
    pub valid_from_log: f64,
}

impl Default for PsiThetaConstants {
    fn default() -> Self {
        PsiThetaConstants { a1: 1.0 + 1.93378e-8, a2: 1.0432, valid_from_log: 40.0 }
    }
}

/// `c₀(λ) = (e^λ - 1)/λ + 1`, the smallest constant with `e^u ≤ 1 + (c₀ - 1) u` on `[0, λ]`.
pub fn c0(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(precondition(format!("c0 needs lambda > 0, got {lambda}")));
    }
    Ok(if lambda < 1e-6 {
        2.0 + lambda * (0.5 + lambda * (1.0 / 6.0 + lambda / 24.0))
    } else {
        lambda.exp_m1() / lambda + 1.0
    })
}

/// The pair `(𝓔₁, 𝓔₂)`; `𝓔₂` is also given as a logarithm since it overflows
/// for large `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BtBound {
    pub e1: f64,
    pub e2: f64,
    pub log_e2: f64,
    pub c0: f64,
}

/// `𝓔₁ = 2 log(x q)/log(c₀θ'x/T)` and `𝓔₂ = a₁ (xq)^{1/2} + a₂ (xq)^{1/3} + log x`
/// with `q = 1 + (c₀ - 1)λ`, from logarithmic inputs.
pub fn bt_interval_bound_log(log_x: f64, log_t: f64, lambda: f64, theta_prime: f64, c: &PsiThetaConstants) -> Result<BtBound> {
    let c0v = c0(lambda)?;
    let log_q = ((c0v - 1.0) * lambda).ln_1p();
    let den = (c0v * theta_prime).ln() + log_x - log_t;
    if !(den > 0.0) {
        return Err(precondition(format!("log(c0 theta' x / T) = {den} must be positive")));
    }
    let e1 = 2.0 * (log_x + log_q) / den;
    let lxq = log_x + log_q;
    let big = c.a1.ln() + lxq / 2.0;
    let mid = c.a2.ln() + lxq / 3.0;
    let log_e2 = crate::zeta::log_add_exp(crate::zeta::log_add_exp(big, mid), log_x.ln());
    Ok(BtBound { e1, e2: log_e2.exp(), log_e2, c0: c0v })
}

pub fn bt_interval_bound(x: f64, t: f64, lambda: f64, theta_prime: f64, c: &PsiThetaConstants) -> Result<BtBound> {
    if !(x > 1.0 && t > 0.0) {
        return Err(precondition(format!("need x > 1 and T > 0, got {x}, {t}")));
    }
    bt_interval_bound_log(x.ln(), t.ln(), lambda, theta_prime, c)
}

/// `c₀ u x 𝓔₁ + 𝓔₂`, a bound for the `Λ`-mass of `[x - ux, x + (c₀ - 1)ux]`.
pub fn mass_upper(x: f64, u: f64, e1: f64, e2: f64, lambda: f64) -> Result<f64> {
    if !(0.0..=lambda).contains(&u) {
        return Err(precondition(format!("mass bound needs 0 <= u <= lambda, got u={u}, lambda={lambda}")));
    }
    Ok(c0(lambda)? * u * x * e1 + e2)
}

/// `a₁√x + a₂x^{1/3}`, certified only for `log x ≥ valid_from_log`.
pub fn psi_theta_gap(x: f64, c: &PsiThetaConstants) -> Result<f64> {
    if !(x.ln() >= c.valid_from_log) {
        return Err(precondition(format!(
            "psi - theta bound holds for log x >= {}, got {}",
            c.valid_from_log,
            x.ln()
        )));
    }
    Ok(psi_theta_gap_unchecked(x, c))
}

/// The same expression without the validity guard, for diagnostics.
pub fn psi_theta_gap_unchecked(x: f64, c: &PsiThetaConstants) -> f64 {
    c.a1 * x.sqrt() + c.a2 * x.cbrt()
}

/// `1/(κ - 1) ≥ Σ Λ(n) n^{-κ}`.
pub fn delange_bound(kappa: f64) -> Result<f64> {
    if !(kappa > 1.0) {
        return Err(precondition(format!("delange bound needs kappa > 1, got {kappa}")));
    }
    Ok(1.0 / (kappa - 1.0))
}

/// Exact `Λ`-mass `Σ_{|log(x/n)| ≤ u} Λ(n)` from a sieve table.
pub struct SieveMass<'a>(pub &'a ChebyshevTable);

impl MassOracle for SieveMass<'_> {
    fn mass(&self, x: f64, u: f64) -> f64 {
        let lo = x * (-u).exp();
        let hi = (x * u.exp()).min(self.0.limit() as f64);
        let below = if lo.ceil() - 1.0 >= 2.0 { self.0.psi(lo.ceil() - 1.0).unwrap_or(f64::NAN) } else { 0.0 };
        self.0.psi(hi).unwrap_or(f64::NAN) - below
    }
}

/// `mass_upper` as an oracle; `u` is clamped to `[0, λ]` by the caller's range.
pub struct BtMass {
    pub e1: f64,
    pub e2: f64,
    pub lambda: f64,
}

impl MassOracle for BtMass {
    fn mass(&self, x: f64, u: f64) -> f64 {
        mass_upper(x, u, self.e1, self.e2, self.lambda).unwrap_or(f64::NAN)
    }
}
