//! Admissible weight functions and the constants they induce.
//!
//! A weight `w` on `[1, ξ]` is `(k, ξ)`-admissible when it is `k` times
//! differentiable, has unit mass, and its derivatives of order `0..=k-2`
//! vanish at both ends. For such a weight this module computes enclosures of
//!
//! * `N_{k,ξ}(w)`, with
//!   `2π N = |w^{(k-1)}(ξ)|/ξ + |w^{(k-1)}(1)| + k! Σ_{h≤k} (1/h!) ∫ |w^{(h)}(u)|/u du`,
//! * `L_ξ(w) = ∫ u |w(u)| du / π`,
//! * `θ'`, the positive solution of `2N / y^{k+1} = 1 + y L`.
//!
//! Weights are piecewise polynomials so that every integral above has an exact
//! antiderivative once the sign changes of the integrand are isolated.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightPiece {
    pub a: f64,
    pub b: f64,
    pub poly: Polynomial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseWeight {
    pieces: Vec<WeightPiece>,
    xi: f64,
    k: u32,
}

/// Tolerances shared by the admissibility check and the constant solvers.
#[derive(Clone, Copy, Debug)]
pub struct WeightTolerances {
    pub root: f64,
    pub admissibility: f64,
}

impl Default for WeightTolerances {
    fn default() -> Self {
        WeightTolerances { root: 1e-12, admissibility: 1e-12 }
    }
}

impl PiecewiseWeight {
    /// Builds a weight after checking the piece structure.
    pub fn new(k: u32, xi: f64, pieces: Vec<WeightPiece>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Structural("k must be a positive integer".into()));
        }
        if !(xi.is_finite() && xi > 1.0) {
            return Err(Error::Structural(format!("xi must be a finite real > 1, got {xi}")));
        }
        let (first, last) = match (pieces.first(), pieces.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(Error::Structural("weight has no pieces".into())),
        };
        if first.a != 1.0 || last.b != xi {
            return Err(Error::Structural(format!(
                "pieces must cover [1, {xi}] exactly, got [{}, {}]",
                first.a, last.b
            )));
        }
        for (i, p) in pieces.iter().enumerate() {
            if !(p.a < p.b) || !p.a.is_finite() || !p.b.is_finite() {
                return Err(Error::Structural(format!("piece {i} has invalid interval [{}, {}]", p.a, p.b)));
            }
            if !p.poly.coeffs().iter().all(|c| c.is_finite()) {
                return Err(Error::Structural(format!("piece {i} has non-finite coefficients")));
            }
        }
        for (i, pair) in pieces.windows(2).enumerate() {
            if pair[0].b != pair[1].a {
                return Err(Error::Structural(format!(
                    "pieces {i} and {} are not contiguous ({} vs {})",
                    i + 1,
                    pair[0].b,
                    pair[1].a
                )));
            }
        }
        Ok(PiecewiseWeight { pieces, xi, k })
    }

    pub fn pieces(&self) -> &[WeightPiece] {
        &self.pieces
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Same pieces, different smoothness order.
    pub fn with_k(&self, k: u32) -> Result<Self> {
        PiecewiseWeight::new(k, self.xi, self.pieces.clone())
    }

    pub fn scaled(&self, c: f64) -> Self {
        let pieces = self
            .pieces
            .iter()
            .map(|p| WeightPiece { a: p.a, b: p.b, poly: p.poly.scale(c) })
            .collect();
        PiecewiseWeight { pieces, xi: self.xi, k: self.k }
    }

    fn piece_at(&self, u: f64) -> &WeightPiece {
        self.pieces
            .iter()
            .find(|p| u <= p.b)
            .unwrap_or_else(|| self.pieces.last().expect("non-empty"))
    }

    pub fn eval(&self, u: f64) -> f64 {
        if !(1.0..=self.xi).contains(&u) {
            return 0.0;
        }
        self.piece_at(u).poly.eval(u)
    }

    /// `w^{(h)}` at `u`, taken from the piece containing `u` (left piece at breakpoints).
    pub fn derivative_at(&self, h: usize, u: f64) -> Interval {
        self.piece_at(u).poly.nth_derivative(h).eval_interval(Interval::point(u))
    }

    fn first_derivative_at_start(&self, h: usize) -> Interval {
        self.pieces[0].poly.nth_derivative(h).eval_interval(Interval::point(1.0))
    }

    fn last_derivative_at_end(&self, h: usize) -> Interval {
        let last = self.pieces.last().expect("non-empty");
        last.poly.nth_derivative(h).eval_interval(Interval::point(self.xi))
    }

    /// Enclosure of `∫_1^ξ w(t) dt`.
    pub fn mass(&self) -> Interval {
        self.pieces.iter().fold(Interval::point(0.0), |acc, p| {
            acc + p.poly.integral(Interval::point(p.a), Interval::point(p.b))
        })
    }

    /// Parses the text format: header `k=<int> xi=<decimal>`, then one piece per
    /// line as `a b c0 c1 c2 ...`. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(u32, f64)> = None;
        let mut pieces = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if header.is_none() {
                header = Some(parse_header(line).map_err(|message| Error::Parse { line: line_no, message })?);
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(f64::from_str)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse { line: line_no, message: format!("bad number: {e}") })?;
            if nums.len() < 3 {
                return Err(Error::Parse {
                    line: line_no,
                    message: "expected `a b c0 [c1 ...]`".into(),
                });
            }
            pieces.push(WeightPiece { a: nums[0], b: nums[1], poly: Polynomial::new(nums[2..].to_vec()) });
        }
        let (k, xi) = header.ok_or(Error::Parse { line: 1, message: "missing `k=<int> xi=<decimal>` header".into() })?;
        PiecewiseWeight::new(k, xi, pieces)
    }
}

impl fmt::Display for PiecewiseWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k={} xi={}", self.k, self.xi)?;
        for p in &self.pieces {
            write!(f, "{} {}", p.a, p.b)?;
            for c in p.poly.coeffs() {
                write!(f, " {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn parse_header(line: &str) -> std::result::Result<(u32, f64), String> {
    let mut k = None;
    let mut xi = None;
    for tok in line.split_whitespace() {
        match tok.split_once('=') {
            Some(("k", v)) => k = Some(v.parse::<u32>().map_err(|e| format!("bad k: {e}"))?),
            Some(("xi", v)) => xi = Some(v.parse::<f64>().map_err(|e| format!("bad xi: {e}"))?),
            _ => return Err(format!("unexpected header token `{tok}`")),
        }
    }
    match (k, xi) {
        (Some(k), Some(xi)) => Ok((k, xi)),
        _ => Err("header must define both k and xi".into()),
    }
}

/// `w(u) = 6 (u - 1)(2 - u)` on `[1, 2]` with `k = 1`.
pub fn canonical_weight() -> PiecewiseWeight {
    PiecewiseWeight {
        pieces: vec![WeightPiece { a: 1.0, b: 2.0, poly: Polynomial::new(vec![-12.0, 18.0, -6.0]) }],
        xi: 2.0,
        k: 1,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `k`-fold differentiability: derivatives of order below `k` match across breakpoints.
    Smoothness,
    /// Unit mass.
    UnitMass,
    /// Vanishing boundary derivatives of order `0..=k-2`.
    BoundaryVanishing,
}

#[derive(Clone, Debug)]
pub struct ConditionCheck {
    pub condition: Condition,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    pub checks: Vec<ConditionCheck>,
    pub tolerance: f64,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, c: Condition) -> &ConditionCheck {
        self.checks.iter().find(|x| x.condition == c).expect("all conditions are reported")
    }
}

fn magnitude(i: Interval) -> f64 {
    i.lo.abs().max(i.hi.abs())
}

pub fn check_admissible(w: &PiecewiseWeight, tol: &WeightTolerances) -> AdmissibilityReport {
    let k = w.k as usize;
    let eps = tol.admissibility;

    let mut smooth = 0.0f64;
    for pair in w.pieces.windows(2) {
        let at = Interval::point(pair[0].b);
        for h in 0..k {
            let l = pair[0].poly.nth_derivative(h).eval_interval(at);
            let r = pair[1].poly.nth_derivative(h).eval_interval(at);
            smooth = smooth.max(magnitude(l - r));
        }
    }

    let mass = magnitude(w.mass() - 1.0);

    let mut boundary = 0.0f64;
    for l in 0..k.saturating_sub(1) {
        boundary = boundary
            .max(magnitude(w.first_derivative_at_start(l)))
            .max(magnitude(w.last_derivative_at_end(l)));
    }

    let checks = [
        (Condition::Smoothness, smooth),
        (Condition::UnitMass, mass),
        (Condition::BoundaryVanishing, boundary),
    ]
    .into_iter()
    .map(|(condition, residual)| ConditionCheck { condition, residual, passed: residual <= eps })
    .collect();
    AdmissibilityReport { checks, tolerance: eps }
}

/// Enclosures of the weight constants.
#[derive(Clone, Copy, Debug)]
pub struct WeightConstants {
    pub n_kxi: Interval,
    pub l_xi: Interval,
    pub theta_prime: Interval,
    pub k: u32,
    pub xi: f64,
}

pub fn weight_constants(w: &PiecewiseWeight, tol: &WeightTolerances) -> Result<WeightConstants> {
    let report = check_admissible(w, tol);
    if !report.passed() {
        let failed: Vec<String> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{:?} (residual {:e})", c.condition, c.residual))
            .collect();
        return Err(Error::Precondition(format!("weight is not admissible: {}", failed.join(", "))));
    }
    let k = w.k as usize;

    let boundary = w.last_derivative_at_end(k - 1).abs() / w.xi + w.first_derivative_at_start(k - 1).abs();
    let mut sum = Interval::point(0.0);
    let mut h_fact = 1.0;
    for h in 0..=k {
        if h > 0 {
            h_fact *= h as f64;
        }
        let mut part = Interval::point(0.0);
        for p in &w.pieces {
            part = part + p.poly.nth_derivative(h).abs_integral_over_u(p.a, p.b, tol.root)?;
        }
        sum = sum + part / h_fact;
    }
    let k_fact: f64 = (1..=k).map(|v| v as f64).product();
    let two_pi_n = boundary + sum * k_fact;
    let n_kxi = two_pi_n / (Interval::pi() * 2.0);

    let mut first_moment = Interval::point(0.0);
    for p in &w.pieces {
        let mut c = vec![0.0];
        c.extend_from_slice(p.poly.coeffs());
        first_moment = first_moment + Polynomial::new(c).abs_integral(p.a, p.b, tol.root)?;
    }
    let l_xi = first_moment / Interval::pi();

    let theta_prime = theta_prime(n_kxi, l_xi, w.k, tol.root)?;
    Ok(WeightConstants { n_kxi, l_xi, theta_prime, k: w.k, xi: w.xi })
}

/// Enclosure of the positive solution of `2N / y^{k+1} = 1 + y L`.
///
/// The root grows with `N` and shrinks with `L`, so the lower end is solved
/// with `(N.lo, L.hi)` and the upper end with `(N.hi, L.lo)`.
pub fn theta_prime(n: Interval, l: Interval, k: u32, tol: f64) -> Result<Interval> {
    if !(n.lo > 0.0 && l.lo > 0.0) {
        return Err(Error::Precondition(format!("theta' needs positive constants, got N={n}, L={l}")));
    }
    let lo = bisect_root(n.lo, l.hi, k, tol).0;
    let hi = bisect_root(n.hi, l.lo, k, tol).1;
    Ok(Interval::new(lo, hi))
}

/// Bracket `[a, b]` with `g(a) > 0 > g(b)` for `g(y) = 2N - y^{k+1}(1 + yL)`.
fn bisect_root(n: f64, l: f64, k: u32, tol: f64) -> (f64, f64) {
    let g = |y: f64| {
        let yi = Interval::point(y);
        Interval::point(2.0 * n) - yi.powi(k + 1) * (Interval::point(1.0) + yi * l)
    };
    let mut a = 0.0;
    let mut b = 1.0;
    while g(b).sign() != Some(-1) {
        a = b;
        b *= 2.0;
    }
    while b - a > tol {
        let m = a + 0.5 * (b - a);
        if m <= a || m >= b {
            break;
        }
        match g(m).sign() {
            Some(1) => a = m,
            Some(_) => b = m,
            // The sign is unresolvable at double precision; the bracket is still valid.
            None => break,
        }
    }
    (a, b)
}

/// Canonical weight constants, computed once.
pub fn canonical_constants() -> &'static WeightConstants {
    static CONSTS: std::sync::OnceLock<WeightConstants> = std::sync::OnceLock::new();
    CONSTS.get_or_init(|| {
        weight_constants(&canonical_weight(), &WeightTolerances::default())
            .expect("canonical weight is admissible")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_coefficients_and_boundary() {
        let w = canonical_weight();
        assert_eq!(w.pieces()[0].poly.coeffs(), &[-12.0, 18.0, -6.0]);
        assert_eq!(w.eval(1.0), 0.0);
        assert_eq!(w.eval(2.0), 0.0);
        assert!(w.mass().contains(1.0));
    }

    #[test]
    fn canonical_is_admissible() {
        let r = check_admissible(&canonical_weight(), &WeightTolerances::default());
        assert!(r.passed());
        assert!(r.check(Condition::UnitMass).residual <= 1e-12);
    }

    #[test]
    fn doubled_weight_fails_mass_with_unit_residual() {
        let w = canonical_weight().scaled(2.0);
        let r = check_admissible(&w, &WeightTolerances::default());
        assert!(!r.passed());
        let c = r.check(Condition::UnitMass);
        assert!(!c.passed);
        assert!((c.residual - 1.0).abs() < 1e-12);
        assert!(weight_constants(&w, &WeightTolerances::default()).is_err());
    }

    #[test]
    fn k3_variant_fails_boundary_condition() {
        let w = canonical_weight().with_k(3).unwrap();
        let r = check_admissible(&w, &WeightTolerances::default());
        let c = r.check(Condition::BoundaryVanishing);
        assert!(!c.passed);
        // w'(1) = 18 - 12 = 6, evaluated directly.
        let direct = 18.0 - 12.0 * 1.0;
        assert!((c.residual - direct).abs() < 1e-12);
    }

    #[test]
    fn structural_errors() {
        let p = |a: f64, b: f64| WeightPiece { a, b, poly: Polynomial::new(vec![1.0]) };
        assert!(PiecewiseWeight::new(1, 2.0, vec![]).is_err());
        assert!(PiecewiseWeight::new(1, 2.0, vec![p(1.0, 1.5)]).is_err());
        assert!(PiecewiseWeight::new(1, 2.0, vec![p(1.0, 1.4), p(1.5, 2.0)]).is_err());
        assert!(PiecewiseWeight::new(0, 2.0, vec![p(1.0, 2.0)]).is_err());
        assert!(PiecewiseWeight::new(1, 1.0, vec![p(1.0, 1.0)]).is_err());
    }

    #[test]
    fn parse_round_trip_of_canonical() {
        let text = canonical_weight().to_string();
        assert_eq!(PiecewiseWeight::parse(&text).unwrap(), canonical_weight());
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = PiecewiseWeight::parse("k=1 xi=2\n1 2 -12 x -6\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = PiecewiseWeight::parse("xi=2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn smaller_n_gives_smaller_theta() {
        let c = canonical_constants();
        let half = Interval::new(c.n_kxi.lo * 0.5, c.n_kxi.hi * 0.5);
        let t = theta_prime(half, c.l_xi, 1, 1e-12).unwrap();
        assert!(t.hi < c.theta_prime.lo);
    }
}
