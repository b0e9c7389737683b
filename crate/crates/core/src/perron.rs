//! Averaged truncated-Perron error bounds.
//!
//! With `v(y) = 1` for `y ≥ 0` and `0` otherwise, the weighted contour average
//!
//! ```text
//! J(y, κ') = (1/2πi) ∫_1^ξ ∫_{κ'-iτ}^{κ'+iτ} e^{ys}/s ds w(τ) dτ
//! ```
//!
//! approximates `v(y)` to within `Δ(y)`. Summing over a Dirichlet series with
//! `y = T log(x/n)` and `κ' = κ/T` gives the truncation error of the averaged
//! Perron formula, and specialising to the canonical weight gives the bound
//! `𝔯(x, T, κ)` used by the explicit formula for `ψ`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{precondition, Error, Result};
use crate::quad::{integrate_split, QuadResult, QuadratureSettings};
use crate::weights::{canonical_constants, PiecewiseWeight, WeightConstants};

/// Coefficient in front of the `1/T²` bound for the canonical weight.
pub const R_COEFF: f64 = 1.785;

#[derive(Clone, Copy, Debug)]
pub struct DeltaInput {
    pub y: f64,
    pub kappa_prime: f64,
    pub consts: WeightConstants,
}

fn v(y: f64) -> f64 {
    if y >= 0.0 {
        1.0
    } else {
        0.0
    }
}

/// The two branches of `Δ(y)`; the first is `None` at `y = 0`.
pub fn delta_branches(input: &DeltaInput) -> (Option<f64>, f64) {
    let DeltaInput { y, kappa_prime: kp, consts } = *input;
    let ek = (y * kp).exp();
    let second = (v(y) - ek * (1.0 / kp).atan() / PI).abs() + y.abs() * ek * consts.l_xi.hi;
    let first = (y != 0.0).then(|| 2.0 * ek * consts.n_kxi.hi / y.abs().powi(consts.k as i32 + 1));
    (first, second)
}

/// `Δ(y)`, evaluated with the upper ends of the constant enclosures.
pub fn delta(input: &DeltaInput) -> Result<f64> {
    if !(input.kappa_prime > 0.0) {
        return Err(precondition(format!("kappa' must be positive, got {}", input.kappa_prime)));
    }
    let (first, second) = delta_branches(input);
    Ok(first.map_or(second, |f| f.min(second)))
}

/// `∫_t^ξ w`, the weight mass to the right of `t`.
fn upper_mass(w: &PiecewiseWeight, t: f64) -> f64 {
    w.pieces()
        .iter()
        .filter(|p| p.b > t)
        .map(|p| {
            let lo = p.a.max(t);
            antiderivative(p.poly.coeffs(), p.b) - antiderivative(p.poly.coeffs(), lo)
        })
        .sum()
}

fn antiderivative(c: &[f64], u: f64) -> f64 {
    c.iter().enumerate().rev().fold(0.0, |acc, (j, &cj)| (acc + cj / (j as f64 + 1.0)) * u)
}

/// Numerical value of `J(y, κ')`.
///
/// Exchanging the order of integration gives
/// `J = (e^{κ'y}/π) ∫_0^ξ (κ' cos ty + t sin ty)/(κ'² + t²) W(t) dt`
/// with `W(t) = ∫_{max(t,1)}^ξ w`.
pub fn lemma_integral(y: f64, kappa_prime: f64, w: &PiecewiseWeight, s: &QuadratureSettings) -> Result<QuadResult> {
    let kp = kappa_prime;
    let f = |t: f64| {
        let (sn, cs) = (t * y).sin_cos();
        let g = (kp * cs + t * sn) / (kp * kp + t * t);
        let weight = if t <= 1.0 { 1.0 } else { upper_mass(w, t) };
        g * weight
    };
    let mut breaks = vec![0.0];
    // Resolve the Lorentzian peak of width κ' near the origin.
    if kp < 0.5 {
        breaks.push(kp);
    }
    breaks.push(1.0);
    breaks.extend(w.pieces().iter().map(|p| p.b));
    let r = integrate_split(f, &breaks, s)?;
    let scale = (kp * y).exp() / PI;
    Ok(QuadResult { value: r.value * scale, error: r.error * scale })
}

/// Outcome of validating `|v(y) - J(y, κ')| ≤ Δ(y)` numerically.
#[derive(Clone, Copy, Debug)]
pub struct ResidualCheck {
    pub approx: f64,
    pub residual: f64,
    pub delta: f64,
    pub quad_error: f64,
}

impl ResidualCheck {
    pub fn holds(&self) -> bool {
        self.residual <= self.delta + self.quad_error
    }
}

pub fn quadrature_residual(input: &DeltaInput, w: &PiecewiseWeight, s: &QuadratureSettings) -> Result<ResidualCheck> {
    let d = delta(input)?;
    let q = lemma_integral(input.y, input.kappa_prime, w, s)?;
    Ok(ResidualCheck { approx: q.value, residual: (v(input.y) - q.value).abs(), delta: d, quad_error: q.error })
}

/// A finite Dirichlet series `Σ a_n n^{-s}` with abscissa data.
#[derive(Clone, Debug)]
pub struct FiniteSeries {
    terms: Vec<(u64, f64)>,
    pub kappa: f64,
    pub kappa_a: f64,
}

impl FiniteSeries {
    pub fn new(terms: Vec<(u64, f64)>, kappa: f64, kappa_a: f64) -> Result<Self> {
        if !(kappa > kappa_a && kappa_a > 0.0) {
            return Err(precondition(format!("need kappa > kappa_a > 0, got {kappa}, {kappa_a}")));
        }
        if terms.iter().any(|&(n, a)| n == 0 || !a.is_finite()) {
            return Err(Error::Structural("series terms need n >= 1 and finite a_n".into()));
        }
        if terms.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Structural("series indices must be strictly increasing".into()));
        }
        Ok(FiniteSeries { terms, kappa, kappa_a })
    }

    /// Parses lines of `n a_n`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, kappa: f64, kappa_a: f64) -> Result<Self> {
        let mut terms = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: String| Error::Parse { line: i + 1, message: m };
            let mut it = line.split_whitespace();
            let n = it.next().ok_or_else(|| bad("missing n".into()))?;
            let a = it.next().ok_or_else(|| bad("missing a_n".into()))?;
            if it.next().is_some() {
                return Err(bad("expected exactly two fields".into()));
            }
            let n = n.parse::<u64>().map_err(|e| bad(format!("bad n: {e}")))?;
            let a = a.parse::<f64>().map_err(|e| bad(format!("bad a_n: {e}")))?;
            terms.push((n, a));
        }
        FiniteSeries::new(terms, kappa, kappa_a)
    }

    pub fn terms(&self) -> &[(u64, f64)] {
        &self.terms
    }

    pub fn scaled(&self, c: f64) -> Self {
        let terms = self.terms.iter().map(|&(n, a)| (n, a * c)).collect();
        FiniteSeries { terms, kappa: self.kappa, kappa_a: self.kappa_a }
    }

    pub fn partial_sum(&self, x: f64) -> f64 {
        self.terms.iter().take_while(|&&(n, _)| n as f64 <= x).map(|t| t.1).sum()
    }

    /// `Σ |a_n| n^{-κ}`.
    pub fn abs_sum(&self) -> f64 {
        self.terms.iter().map(|&(n, a)| a.abs() * (n as f64).powf(-self.kappa)).sum()
    }

    /// Weight-averaged Perron integral `Σ a_n J(T log(x/n), κ/T)`.
    pub fn averaged_integral(&self, x: f64, t: f64, w: &PiecewiseWeight, s: &QuadratureSettings) -> Result<QuadResult> {
        let mut total = QuadResult { value: 0.0, error: 0.0 };
        for &(n, a) in &self.terms {
            if a == 0.0 {
                continue;
            }
            let q = lemma_integral(t * (x / n as f64).ln(), self.kappa / t, w, s)?;
            total.value += a * q.value;
            total.error += a.abs() * q.error;
        }
        Ok(total)
    }
}

/// Theorem-level truncation error of the averaged Perron formula.
///
/// The `u`-integral on `[θ'/T, λ]` is evaluated exactly from the jump points
/// `u_n = |log(x/n)|` of the mass; beyond `λ` the mass is replaced by the full
/// sum, which contributes `λ^{-k-1}` times `Σ |a_n| (x/n)^κ`.
pub fn general_error(series: &FiniteSeries, x: f64, t: f64, consts: &WeightConstants, lambda: f64) -> Result<f64> {
    if !(x >= 1.0 && t >= 1.0) {
        return Err(precondition(format!("need x >= 1 and T >= 1, got x={x}, T={t}")));
    }
    let u0 = consts.theta_prime.lo / t;
    if !(lambda >= u0) {
        return Err(precondition(format!("lambda={lambda} is below theta'/T={u0}")));
    }
    let p = consts.k as i32 + 1;
    let tail = lambda.powi(-p);
    let lx = x.ln();
    let mut acc = 0.0;
    for &(n, a) in series.terms() {
        let ln_ratio = lx - (n as f64).ln();
        let b = a.abs() * (series.kappa * ln_ratio).exp();
        let un = ln_ratio.abs().max(u0);
        acc += b * ((un.powi(-p) - tail).max(0.0) + tail);
    }
    Ok(2.0 * consts.n_kxi.hi / t.powi(p) * acc)
}

/// Upper bound for `Σ_{|log(x/n)| ≤ u} |a_n|`; must be nonnegative and
/// nondecreasing in `u`.
pub trait MassOracle {
    fn mass(&self, x: f64, u: f64) -> f64;
}

impl<F: Fn(f64, f64) -> f64> MassOracle for F {
    fn mass(&self, x: f64, u: f64) -> f64 {
        self(x, u)
    }
}

impl MassOracle for FiniteSeries {
    fn mass(&self, x: f64, u: f64) -> f64 {
        let lx = x.ln();
        self.terms
            .iter()
            .filter(|&&(n, _)| (lx - (n as f64).ln()).abs() <= u)
            .map(|t| t.1.abs())
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerronErrorBound {
    pub value: f64,
    pub term_main: f64,
    pub term_tail: f64,
}

impl PerronErrorBound {
    pub const ZERO: PerronErrorBound = PerronErrorBound { value: 0.0, term_main: 0.0, term_tail: 0.0 };
}

#[derive(Clone, Copy, Debug)]
pub struct RBoundSettings {
    /// Cells in the geometric `u`-grid for the upper Riemann sum.
    pub cells: usize,
}

impl Default for RBoundSettings {
    fn default() -> Self {
        RBoundSettings { cells: 2048 }
    }
}

/// Checks that `R_COEFF ≥ 4 N` for the canonical weight.
pub fn coefficient_check() -> Result<f64> {
    static CHECK: OnceLock<f64> = OnceLock::new();
    let four_n = *CHECK.get_or_init(|| 4.0 * canonical_constants().n_kxi.hi);
    if four_n <= R_COEFF {
        Ok(four_n)
    } else {
        Err(Error::Contract(format!("4N = {four_n} exceeds the coefficient {R_COEFF}")))
    }
}

/// `𝔯(x, T, κ)` for the canonical weight.
pub fn r_bound(
    x: f64,
    t: f64,
    kappa: f64,
    lambda: f64,
    consts: &WeightConstants,
    series_tail: f64,
    mass: &dyn MassOracle,
    s: &RBoundSettings,
) -> Result<PerronErrorBound> {
    coefficient_check()?;
    if consts.k != 1 || consts.xi != 2.0 || 4.0 * consts.n_kxi.hi > R_COEFF {
        return Err(precondition("the 1.785 coefficient needs a k=1, xi=2 weight with 4N <= 1.785"));
    }
    if !(x >= 1.0 && t > 1.0 && kappa > 0.0) {
        return Err(precondition(format!("need x >= 1, T > 1, kappa > 0; got {x}, {t}, {kappa}")));
    }
    let u0 = consts.theta_prime.lo / t;
    if !(lambda >= u0) {
        return Err(precondition(format!("lambda={lambda} is below theta'/T={u0}")));
    }
    if !(series_tail >= 0.0) {
        return Err(Error::Contract(format!("series tail must be nonnegative, got {series_tail}")));
    }
    let t2 = t * t;
    let term_main = R_COEFF * (kappa * x.ln()).exp() * series_tail / (2.0 * lambda * lambda * t2);

    let mut integral = 0.0;
    if lambda > u0 {
        let cells = s.cells.max(1);
        let ratio = (lambda / u0).ln() / cells as f64;
        let mut u_prev = u0;
        let mut m_prev = check_mass(mass.mass(x, u0), u0)?;
        for i in 1..=cells {
            let u = if i == cells { lambda } else { u0 * (ratio * i as f64).exp() };
            let m = check_mass(mass.mass(x, u), u)?;
            if m < m_prev {
                return Err(Error::Contract(format!("mass decreased from {m_prev} to {m} at u={u}")));
            }
            integral += m * (u_prev.powi(-2) - u.powi(-2)) / 2.0;
            u_prev = u;
            m_prev = m;
        }
    }
    let term_tail = R_COEFF * (kappa * lambda).exp() / t2 * integral;
    Ok(PerronErrorBound { value: term_main + term_tail, term_main, term_tail })
}

fn check_mass(m: f64, u: f64) -> Result<f64> {
    if m >= 0.0 && m.is_finite() {
        Ok(m)
    } else {
        Err(Error::Contract(format!("mass oracle returned {m} at u={u}")))
    }
}

/// Interval variant: `𝔯(x + h) + 𝔯(x)` with a shared truncation height.
#[allow(clippy::too_many_arguments)]
pub fn interval_r_bound(
    x: f64,
    h: f64,
    t: f64,
    kappa: f64,
    lambda: f64,
    consts: &WeightConstants,
    series_tail: f64,
    mass: &dyn MassOracle,
    s: &RBoundSettings,
) -> Result<PerronErrorBound> {
    if !(h >= 0.0) {
        return Err(precondition(format!("h must be nonnegative, got {h}")));
    }
    let a = r_bound(x + h, t, kappa, lambda, consts, series_tail, mass, s)?;
    let b = r_bound(x, t, kappa, lambda, consts, series_tail, mass, s)?;
    Ok(PerronErrorBound {
        value: a.value + b.value,
        term_main: a.term_main + b.term_main,
        term_tail: a.term_tail + b.term_tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::canonical_weight;

    fn input(y: f64, kp: f64) -> DeltaInput {
        DeltaInput { y, kappa_prime: kp, consts: *canonical_constants() }
    }

    #[test]
    fn delta_at_zero() {
        assert!((delta(&input(0.0, 1.0)).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn delta_is_min_of_branches() {
        let (f, s) = delta_branches(&input(-10.0, 1.0));
        let f = f.unwrap();
        assert!(f < s);
        let n = canonical_constants().n_kxi.hi;
        assert!((f - 2.0 * (-10.0f64).exp() * n / 100.0).abs() < 1e-18);
        let (f, s) = delta_branches(&input(0.01, 1.0));
        assert!(s < f.unwrap());
        assert_eq!(delta(&input(0.01, 1.0)).unwrap(), s);
    }

    #[test]
    fn lemma_integral_at_zero_is_arctan_average() {
        let w = canonical_weight();
        let q = lemma_integral(0.0, 1.0, &w, &QuadratureSettings::default()).unwrap();
        // (1/π) ∫_1^2 arctan(τ) w(τ) dτ by Simpson on a fine grid.
        let n = 20_000;
        let h = 1.0 / n as f64;
        let f = |t: f64| t.atan() * w.eval(t) / PI;
        let mut s = f(1.0) + f(2.0);
        for i in 1..n {
            s += f(1.0 + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        assert!((q.value - s * h / 3.0).abs() < 1e-10);
    }

    #[test]
    fn lemma_integral_matches_reference_values() {
        // Nested adaptive quadrature of the original double integral at 30 digits.
        let w = canonical_weight();
        let s = QuadratureSettings::default();
        for (y, kp, want) in [
            (1.0, 0.2, 0.916_970_587_722_087_226_6),
            (-5.0, 1.0, 0.000_092_558_050_771_201_576_748),
            (0.0, 1.0, 0.310_544_587_515_712_370_3),
            (10.0, 0.05, 0.997_579_568_456_089_681_3),
        ] {
            let q = lemma_integral(y, kp, &w, &s).unwrap();
            assert!((q.value - want).abs() < 1e-9, "J({y}, {kp}) = {} vs {want}", q.value);
        }
    }

    #[test]
    fn zero_series_gives_zero() {
        let c = canonical_constants();
        let s = FiniteSeries::new(vec![(1, 0.0), (3, 0.0)], 1.5, 1.0).unwrap();
        assert_eq!(general_error(&s, 10.0, 10.0, c, 1.0).unwrap(), 0.0);
        let r = r_bound(10.0, 10.0, 1.5, 1.0, c, 0.0, &s, &RBoundSettings::default()).unwrap();
        assert_eq!(r, PerronErrorBound::ZERO);
    }

    #[test]
    fn single_term_closed_form() {
        let c = canonical_constants();
        let s = FiniteSeries::new(vec![(2, 1.0)], 1.5, 1.0).unwrap();
        let got = general_error(&s, 2.0, 10.0, c, 0.5).unwrap();
        // 2(k+1)N/T² · ∫_{θ'/T}^∞ u^{-3} du = 2N/θ'².
        let want = 2.0 * c.n_kxi.hi / (c.theta_prime.lo * c.theta_prime.lo);
        assert!((got - want).abs() < 1e-12 * want);
    }

    #[test]
    fn lambda_below_threshold_is_rejected() {
        let c = canonical_constants();
        let s = FiniteSeries::new(vec![(2, 1.0)], 1.5, 1.0).unwrap();
        assert!(matches!(general_error(&s, 2.0, 10.0, c, 0.01), Err(Error::Precondition(_))));
    }

    #[test]
    fn coefficient_dominates_four_n() {
        let four_n = coefficient_check().unwrap();
        assert!(four_n <= 4.0 * 0.4461 && 4.0 * 0.4461 <= R_COEFF);
    }

    #[test]
    fn negative_mass_is_a_contract_violation() {
        let c = canonical_constants();
        let bad = |_x: f64, _u: f64| -1.0;
        let e = r_bound(100.0, 10.0, 1.2, 0.5, c, 1.0, &bad, &RBoundSettings::default()).unwrap_err();
        assert!(matches!(e, Error::Contract(_)));
    }

    #[test]
    fn interval_with_zero_h_doubles() {
        let c = canonical_constants();
        let s = FiniteSeries::new((1..30).map(|n| (n, 1.0 / n as f64)).collect(), 1.2, 0.5).unwrap();
        let st = RBoundSettings::default();
        let one = r_bound(20.0, 10.0, 1.2, 0.5, c, s.abs_sum(), &s, &st).unwrap();
        let two = interval_r_bound(20.0, 0.0, 10.0, 1.2, 0.5, c, s.abs_sum(), &s, &st).unwrap();
        assert_eq!(two.value, 2.0 * one.value);
    }

    #[test]
    fn series_parse_errors_carry_line() {
        let e = FiniteSeries::parse("1 1.0\n2 x\n", 2.0, 1.0).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = FiniteSeries::parse("2 1.0\n1 1.0\n", 2.0, 1.0).unwrap_err();
        assert!(matches!(e, Error::Structural(_)));
    }
}
