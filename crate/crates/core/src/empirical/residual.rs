//! Truncated zero sums and the residual `|ψ(x) - x + Σ_{|γ| ≤ T*} x^ρ/ρ|`.

use std::f64::consts::TAU;

use rayon::prelude::*;

use super::zeros::ZerosDataset;
use crate::arith::{ChebyshevTable, KahanSum};
use crate::error::{precondition, Result};

const BLOCK: usize = 256;

// TAU = TAU_HI + TAU_MID + TAU_LO to well beyond double-double precision.
const TAU_HI: f64 = TAU;
const TAU_MID: f64 = 2.449_293_598_294_706_4e-16;
const TAU_LO: f64 = -5.989_539_619_436_679e-33;

/// `γ·ℓ mod 2π` in `(-π, π]`, with the product kept exactly as a double-double.
pub fn reduced_phase(gamma: f64, ell: f64) -> f64 {
    let p = gamma * ell;
    let e = gamma.mul_add(ell, -p);
    let k = (p / TAU).round();
    let mut r = (-k).mul_add(TAU_HI, p);
    r = (-k).mul_add(TAU_MID, r);
    r += e;
    (-k).mul_add(TAU_LO, r)
}

/// `2ℜ(x^{1/2+iγ}/(1/2+iγ)) / (2√x)`.
fn term(gamma: f64, ell: f64) -> f64 {
    let (s, c) = reduced_phase(gamma, ell).sin_cos();
    (0.5 * c + gamma * s) / (0.25 + gamma * gamma)
}

fn pairwise(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    while v.len() > 1 {
        v = v.chunks(2).map(|c| c.iter().sum()).collect();
    }
    v[0]
}

/// `Σ_{0<γ≤T} 2ℜ(x^ρ/ρ)` over the dataset, with `ρ = 1/2 + iγ`.
///
/// Blocks of ordinates are summed in parallel and combined by a fixed
/// pairwise tree, so the result does not depend on the thread count.
pub fn zero_sum(x: f64, t: f64, ds: &ZerosDataset, allow_truncation: bool) -> Result<f64> {
    if !(x > 0.0) {
        return Err(precondition(format!("zero sum needs x > 0, got {x}")));
    }
    if t > ds.height() && !allow_truncation {
        return Err(precondition(format!(
            "T = {t} exceeds the zero table height {}; pass allow_truncation to sum what is available",
            ds.height()
        )));
    }
    let ell = x.ln();
    let g = &ds.gammas()[..ds.count_upto(t)];
    let blocks: Vec<f64> = g
        .par_chunks(BLOCK)
        .map(|c| {
            let mut acc = KahanSum::default();
            for &gamma in c {
                acc.add(term(gamma, ell));
            }
            acc.value()
        })
        .collect();
    Ok(2.0 * x.sqrt() * pairwise(blocks))
}

#[derive(Clone, Debug)]
pub struct ResidualScan {
    pub x: f64,
    pub t: f64,
    pub psi: f64,
    /// A `T* ∈ [T, 2T]` attaining the smallest residual (left end of its step).
    pub best_t_star: f64,
    pub best_residual: f64,
    /// `(T*, residual)` on `steps + 1` equally spaced points of `[T, 2T]`.
    pub profile: Vec<(f64, f64)>,
    /// Distinct values of the residual on `[T, 2T]` (one per step of the zero sum).
    pub pieces: usize,
    pub note: &'static str,
}

/// Scans `T* ∈ [T, 2T]`. The zero sum is a step function of `T*` jumping at
/// each ordinate, so every step is examined and the minimum is exact.
pub fn residual_scan(x: f64, t: f64, ds: &ZerosDataset, table: &ChebyshevTable, steps: usize) -> Result<ResidualScan> {
    if !(x > 1.0 && t > 0.0) {
        return Err(precondition(format!("need x > 1 and T > 0, got {x}, {t}")));
    }
    if x > table.limit() as f64 {
        return Err(precondition(format!("x = {x} exceeds the sieve limit {}", table.limit())));
    }
    if 2.0 * t > ds.height() {
        return Err(precondition(format!("2T = {} exceeds the zero table height {}", 2.0 * t, ds.height())));
    }
    let psi = table.psi(x)?;
    let ell = x.ln();
    let scale = 2.0 * x.sqrt();
    let end = ds.count_upto(2.0 * t);
    let g = &ds.gammas()[..end];
    let mut prefix = Vec::with_capacity(end + 1);
    let mut acc = KahanSum::default();
    prefix.push(0.0);
    for &gamma in g {
        acc.add(term(gamma, ell));
        prefix.push(acc.value());
    }
    let residual = |k: usize| (psi - x + scale * prefix[k]).abs();
    let start = ds.count_upto(t);
    let (mut best_k, mut best) = (start, residual(start));
    for k in start + 1..=end {
        let r = residual(k);
        if r < best {
            best = r;
            best_k = k;
        }
    }
    let best_t_star = if best_k == start { t } else { g[best_k - 1] };
    let steps = steps.max(1);
    let profile = (0..=steps)
        .map(|i| {
            let ts = t + t * i as f64 / steps as f64;
            (ts, residual(ds.count_upto(ts)))
        })
        .collect();
    Ok(ResidualScan {
        x,
        t,
        psi,
        best_t_star,
        best_residual: best,
        profile,
        pieces: end - start + 1,
        note: super::DESK_SCALE_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_reduction_matches_naive_for_small_products() {
        for (g, l) in [(14.134725f64, 1.0f64), (2000.0, 11.512925464970229), (1e5, 3.3)] {
            let naive = (g * l).rem_euclid(TAU);
            let r = reduced_phase(g, l).rem_euclid(TAU);
            let d = (naive - r).abs().min(TAU - (naive - r).abs());
            assert!(d < 1e-12 * (g * l), "{g} {l} {d}");
        }
    }

    #[test]
    fn empty_and_single_zero() {
        let empty = ZerosDataset::default();
        assert_eq!(zero_sum(1e5, 100.0, &empty, true).unwrap(), 0.0);
        let one = ZerosDataset::new(vec![10.0]).unwrap();
        // 2ℜ(e^{1/2+10i}/(1/2+10i)) = 2e^{1/2}(cos 10/2 + 10 sin 10)/(1/4 + 100).
        let e = std::f64::consts::E;
        let want = 2.0 * e.sqrt() * (10f64.cos() / 2.0 + 10.0 * 10f64.sin()) / 100.25;
        assert!((zero_sum(e, 10.0, &one, false).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn truncation_is_explicit() {
        let ds = ZerosDataset::new(vec![14.0, 21.0]).unwrap();
        assert!(zero_sum(10.0, 30.0, &ds, false).is_err());
        assert!(zero_sum(10.0, 30.0, &ds, true).is_ok());
    }
}
