//! Primes between consecutive `m`-th powers: the positivity condition
//! `1 - F(x) - 2M G(x,h)/(x^μ h) + E(x)/h > 0` with `h = m x^{1-1/m}` and
//! `T = x^μ/2`, evaluated in `L = log x`.

use std::f64::consts::LN_2;

use rayon::prelude::*;

use crate::arith::PsiThetaConstants;
use crate::constants::admissible_log_t;
use crate::error::{precondition, Error, Result};
use crate::optimize::{minimize, SearchMethod, SearchSettings};
use crate::zeta::{ZeroSumParams, ZetaBoundsConfig};

/// `M` and `ω` as a step function of `log x`: each piece applies from its
/// `from_log_x` up to the next one.
#[derive(Clone, Debug, PartialEq)]
pub struct MSchedule {
    pieces: Vec<MPiece>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MPiece {
    pub from_log_x: f64,
    pub m: f64,
    pub omega: f64,
}

impl MSchedule {
    pub fn new(mut pieces: Vec<MPiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Config("M schedule needs at least one piece".into()));
        }
        pieces.sort_by(|a, b| a.from_log_x.total_cmp(&b.from_log_x));
        for p in &pieces {
            if !(p.m >= 0.0) || !(0.0..=1.0).contains(&p.omega) {
                return Err(Error::Config(format!("bad M piece {p:?}")));
            }
        }
        Ok(MSchedule { pieces })
    }

    pub fn constant(from_log_x: f64, m: f64, omega: f64) -> Self {
        MSchedule { pieces: vec![MPiece { from_log_x, m, omega }] }
    }

    /// `M = 6.555` from `log x = 10³` and `M = 5.602` from `4·10³`, both with `ω = 0.9`.
    pub fn primes_between_powers() -> Self {
        MSchedule {
            pieces: vec![
                MPiece { from_log_x: 1e3, m: 6.555, omega: 0.9 },
                MPiece { from_log_x: 4e3, m: 5.602, omega: 0.9 },
            ],
        }
    }

    pub fn pieces(&self) -> &[MPiece] {
        &self.pieces
    }

    pub fn at(&self, log_x: f64) -> Option<MPiece> {
        self.pieces.iter().rev().find(|p| p.from_log_x <= log_x).copied()
    }
}

/// How `E(x)/h` is obtained.
#[derive(Clone, Debug, PartialEq)]
pub enum EMode {
    /// `E(x) = -(a₁(x+h)^{1/2} + a₂(x+h)^{1/3})`.
    PsiThetaCorrection(PsiThetaConstants),
    /// `E ≡ 0`.
    Zero,
    /// `E(x)/h` linearly interpolated in `log x` from `(log x, value)` knots.
    Table(Vec<(f64, f64)>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admissibility {
    /// Inadmissible `T` is a precondition error.
    Enforce,
    /// Evaluate anyway and flag the report.
    Report,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapParams {
    pub m: u32,
    pub mu: f64,
    pub sigma1: f64,
    pub alpha: f64,
    pub schedule: MSchedule,
    pub e_mode: EMode,
    pub admissibility: Admissibility,
}

impl GapParams {
    /// `m = 90`, `σ₁ = 0.6`, `α = 1/85` and the two-piece `M` schedule.
    pub fn primes_between_powers(mu: f64) -> Self {
        GapParams {
            m: 90,
            mu,
            sigma1: 0.6,
            alpha: 1.0 / 85.0,
            schedule: MSchedule::primes_between_powers(),
            e_mode: EMode::PsiThetaCorrection(PsiThetaConstants::default()),
            admissibility: Admissibility::Enforce,
        }
    }

    pub fn with_mu(&self, mu: f64) -> Self {
        GapParams { mu, ..self.clone() }
    }

    pub fn with_m(&self, m: u32) -> Self {
        GapParams { m, ..self.clone() }
    }

    fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(precondition(format!("m must be at least 2, got {}", self.m)));
        }
        if !(self.mu > 0.0 && self.mu < 1.0) {
            return Err(precondition(format!("mu must lie in (0, 1), got {}", self.mu)));
        }
        if let EMode::Table(t) = &self.e_mode {
            if t.is_empty() || t.windows(2).any(|w| !(w[0].0 < w[1].0)) {
                return Err(Error::Config("E table must be non-empty and strictly increasing in log x".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionReport {
    pub log_x: f64,
    pub lhs: f64,
    /// Zero-sum bound `F(x) ≥ Σ_{|γ| ≤ 2T} x^{β-1}`.
    pub f: f64,
    /// `log h`, the scale the zero sum and `E` are normalized by.
    pub log_h: f64,
    pub error_term: f64,
    pub e_term: f64,
    /// Whether `max{51, log²x} < T < (x^α-2)/4` holds.
    pub admissible: bool,
    pub m_const: f64,
    pub omega: f64,
}

impl ConditionReport {
    pub fn reconstructed(&self) -> f64 {
        1.0 - self.f - self.error_term + self.e_term
    }
}

/// `log(x + h)` from `log x` and `log h`.
fn log_sum(log_x: f64, log_h: f64) -> f64 {
    log_x + (log_h - log_x).exp().ln_1p()
}

fn admissibility_violation(log_x: f64, log_t: f64, alpha: f64) -> Option<String> {
    match admissible_log_t(log_x, alpha) {
        None => Some(format!("x^alpha <= 2 at log x = {log_x}")),
        Some((lo, _)) if !(log_t > lo) => Some(format!("T > max(51, log^2 x) fails: log T = {log_t} <= {lo}")),
        Some((_, hi)) if !(log_t < hi) => Some(format!("T < (x^alpha - 2)/4 fails: log T = {log_t} >= {hi}")),
        _ => None,
    }
}

/// Left-hand side of the condition at `x = e^{log_x}`.
pub fn condition_lhs(log_x: f64, p: &GapParams, z: &ZetaBoundsConfig) -> Result<ConditionReport> {
    p.validate()?;
    let piece = p
        .schedule
        .at(log_x)
        .ok_or_else(|| precondition(format!("log x = {log_x} is below every x_M of the M schedule")))?;
    let l = log_x;
    let log_t = p.mu * l - LN_2;
    let violation = admissibility_violation(l, log_t, p.alpha);
    if let (Some(v), Admissibility::Enforce) = (&violation, p.admissibility) {
        return Err(precondition(v.clone()));
    }
    let m = p.m as f64;
    let log_h = m.ln() + l * (1.0 - 1.0 / m);
    let l_xh = log_sum(l, log_h);
    let shape = 1.0 - piece.omega;
    let error_term = 2.0
        * piece.m
        * ((l_xh - log_h - p.mu * l).exp() * l_xh.powf(shape) + (l - log_h - p.mu * l).exp() * l.powf(shape));
    let e_term = match &p.e_mode {
        EMode::Zero => 0.0,
        EMode::PsiThetaCorrection(c) => {
            if !(l_xh >= c.valid_from_log) {
                return Err(precondition(format!("psi - theta bound needs log(x+h) >= {}", c.valid_from_log)));
            }
            -(c.a1.ln() + l_xh / 2.0 - log_h).exp() - (c.a2.ln() + l_xh / 3.0 - log_h).exp()
        }
        EMode::Table(t) => interpolate(t, l)?,
    };
    let f = z.zero_sum_bound(&ZeroSumParams { log_x: l, log_t, sigma1: p.sigma1 })?.value;
    let lhs = 1.0 - f - error_term + e_term;
    Ok(ConditionReport {
        log_x: l,
        lhs,
        f,
        log_h,
        error_term,
        e_term,
        admissible: violation.is_none(),
        m_const: piece.m,
        omega: piece.omega,
    })
}

fn interpolate(t: &[(f64, f64)], l: f64) -> Result<f64> {
    let (first, last) = (t[0], t[t.len() - 1]);
    if !(first.0 <= l && l <= last.0) {
        return Err(precondition(format!("log x = {l} is outside the E table [{}, {}]", first.0, last.0)));
    }
    let i = t.partition_point(|k| k.0 <= l).clamp(1, t.len() - 1);
    let ((a, fa), (b, fb)) = (t[i - 1], t[i]);
    Ok(if b == a { fa } else { fa + (fb - fa) * (l - a) / (b - a) })
}

/// A zero-free regime change inside a scan: `log 2T` hits `log_t` at `log_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct RegimeMark {
    pub label: String,
    pub log_t: f64,
    pub log_x: f64,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub reports: Vec<ConditionReport>,
    pub min_lhs: f64,
    pub argmin_log_x: f64,
    pub marks: Vec<RegimeMark>,
    pub inadmissible: usize,
}

/// Sample points of a scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Grid {
    /// `lo, lo + step, …`, always including `hi`.
    Step(f64),
    /// `n + 1` geometrically spaced points.
    Geometric(usize),
}

pub fn grid_points(lo: f64, hi: f64, g: Grid) -> Result<Vec<f64>> {
    if !(lo <= hi) {
        return Err(precondition(format!("scan range must satisfy lo <= hi, got [{lo}, {hi}]")));
    }
    if lo == hi {
        return Ok(vec![lo]);
    }
    Ok(match g {
        Grid::Step(step) => {
            if !(step > 0.0) {
                return Err(precondition(format!("step must be positive, got {step}")));
            }
            let n = ((hi - lo) / step + 1e-9).floor() as usize;
            let mut v: Vec<f64> = (0..=n).map(|i| lo + step * i as f64).collect();
            if hi - v[v.len() - 1] > 1e-9 * hi.abs().max(1.0) {
                v.push(hi);
            }
            v
        }
        Grid::Geometric(n) => {
            if !(lo > 0.0) || n == 0 {
                return Err(precondition("geometric grid needs lo > 0 and at least one step"));
            }
            let mut v: Vec<f64> = (0..=n).map(|i| lo * (hi / lo).powf(i as f64 / n as f64)).collect();
            v[n] = hi;
            v
        }
    })
}

/// Evaluates the condition on a grid of `log x` (in parallel; output in grid order).
pub fn scan_condition(p: &GapParams, z: &ZetaBoundsConfig, lo: f64, hi: f64, grid: Grid) -> Result<ScanReport> {
    let points = grid_points(lo, hi, grid)?;
    let reports: Vec<ConditionReport> =
        points.par_iter().map(|&l| condition_lhs(l, p, z)).collect::<Result<Vec<_>>>()?;
    let (min_lhs, argmin_log_x) = reports
        .iter()
        .map(|r| (r.lhs, r.log_x))
        .fold((f64::INFINITY, lo), |a, b| if b.0 < a.0 { b } else { a });
    let mut marks = Vec::new();
    let mut push = |label: String, log_t: f64| {
        let log_x = log_t / p.mu;
        if lo <= log_x && log_x <= hi {
            marks.push(RegimeMark { label, log_t, log_x });
        }
    };
    push("rh_height".into(), z.log_rh_height());
    for (i, j, c) in z.standard_crossovers()? {
        push(format!("{i:?}->{j:?}"), c);
    }
    let inadmissible = reports.iter().filter(|r| !r.admissible).count();
    Ok(ScanReport { reports, min_lhs, argmin_log_x, marks, inadmissible })
}

/// Smallest `log x ≥ from` from which `T = x^μ/2` is admissible for all larger `x`.
pub fn admissible_from(mu: f64, alpha: f64, from: f64) -> Option<f64> {
    let ok = |l: f64| admissibility_violation(l, mu * l - LN_2, alpha).is_none();
    if ok(from) {
        return Some(from);
    }
    let mut hi = from.max(1.0);
    while !ok(hi) {
        hi *= 2.0;
        if hi > 1e300 {
            return None;
        }
    }
    let mut lo = from;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

#[derive(Clone, Copy, Debug)]
pub struct MuOptimum {
    pub mu: f64,
    pub min_lhs: f64,
    pub method: SearchMethod,
}

/// Maximizes the minimum of the condition over the scan grid in `μ ∈ bracket`.
pub fn optimize_mu(p: &GapParams, z: &ZetaBoundsConfig, lo: f64, hi: f64, grid: Grid, bracket: (f64, f64)) -> Result<MuOptimum> {
    let (a, b) = bracket;
    if !(a > 0.0 && a <= b && b < 1.0) {
        return Err(precondition(format!("mu bracket must lie in (0, 1) and be ordered, got [{a}, {b}]")));
    }
    let points = grid_points(lo, hi, grid)?;
    let worst = |mu: f64| -> Result<f64> {
        let q = p.with_mu(mu);
        let v = points
            .par_iter()
            .map(|&l| condition_lhs(l, &q, z).map(|r| r.lhs))
            .collect::<Result<Vec<_>>>()?;
        Ok(v.into_iter().fold(f64::INFINITY, f64::min))
    };
    let settings = SearchSettings { x_tol: 1e-7, ..SearchSettings::default() };
    let m = minimize(|mu| worst(mu).map(|v| -v), a, b, &settings)?;
    Ok(MuOptimum { mu: m.x, min_lhs: -m.value, method: m.method })
}

/// One `log x` range that must be covered, with its own `μ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub grid: Grid,
}

#[derive(Clone, Debug)]
pub struct SmallestMConfig {
    pub segments: Vec<Segment>,
    pub mu_bracket: (f64, f64),
    /// Inclusive search range for `m`.
    pub m_range: (u32, u32),
}

impl SmallestMConfig {
    /// `[10³, 4·10³]` step 10 and a geometric sample of `[4·10³, 10⁶]`, `μ ∈ [0.0105, 1/85]`.
    pub fn primes_between_powers() -> Self {
        SmallestMConfig {
            segments: vec![
                Segment { lo: 1e3, hi: 4e3, grid: Grid::Step(10.0) },
                Segment { lo: 4e3, hi: 1e6, grid: Grid::Geometric(200) },
            ],
            mu_bracket: (0.0105, 1.0 / 85.0),
            m_range: (60, 200),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MFeasibility {
    pub m: u32,
    pub feasible: bool,
    pub segments: Vec<MuOptimum>,
}

pub fn feasibility(m: u32, p: &GapParams, z: &ZetaBoundsConfig, cfg: &SmallestMConfig) -> Result<MFeasibility> {
    let q = p.with_m(m);
    let segments = cfg
        .segments
        .iter()
        .map(|s| optimize_mu(&q, z, s.lo, s.hi, s.grid, cfg.mu_bracket))
        .collect::<Result<Vec<_>>>()?;
    let feasible = segments.iter().all(|o| o.min_lhs > 0.0);
    Ok(MFeasibility { m, feasible, segments })
}

/// Binary search for the smallest feasible `m`, assuming feasibility is
/// monotone in `m`. `None` when even the top of the range is infeasible.
pub fn smallest_m(p: &GapParams, z: &ZetaBoundsConfig, cfg: &SmallestMConfig) -> Result<Option<MFeasibility>> {
    let (mut lo, mut hi) = cfg.m_range;
    if lo < 2 || lo > hi {
        return Err(precondition(format!("m range must satisfy 2 <= lo <= hi, got [{lo}, {hi}]")));
    }
    let mut best = feasibility(hi, p, z, cfg)?;
    if !best.feasible {
        return Ok(None);
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let f = feasibility(mid, p, z, cfg)?;
        if f.feasible {
            hi = mid;
            best = f;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Some(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::{ZeroCountShape, ZeroDensityShape};

    fn report_mode(mu: f64) -> GapParams {
        GapParams { admissibility: Admissibility::Report, ..GapParams::primes_between_powers(mu) }
    }

    #[test]
    fn zero_everything_gives_one() {
        let z = ZetaBoundsConfig::zero_free_only()
            .with_count(ZeroCountShape::Constant(0.0), "test")
            .with_density(ZeroDensityShape::Zero, "test");
        let p = GapParams {
            schedule: MSchedule::constant(1e3, 0.0, 0.9),
            e_mode: EMode::Zero,
            ..report_mode(0.0113)
        };
        let r = condition_lhs(2000.0, &p, &z).unwrap();
        assert_eq!(r.lhs, 1.0);
    }

    #[test]
    fn shipped_pipeline_points() {
        let z = ZetaBoundsConfig::shipped();
        let r = condition_lhs(1000.0, &report_mode(0.0113), &z).unwrap();
        assert!(r.lhs > 0.0, "{r:?}");
        assert!(!r.admissible);
        let r = condition_lhs(1e4, &GapParams::primes_between_powers(0.0112), &z).unwrap();
        assert!(r.lhs > 0.0 && r.admissible, "{r:?}");
    }

    #[test]
    fn enforce_names_the_inequality() {
        let z = ZetaBoundsConfig::shipped();
        let e = condition_lhs(1000.0, &GapParams::primes_between_powers(0.0113), &z).unwrap_err();
        assert!(e.to_string().contains("max(51, log^2 x) fails"), "{e}");
        let e = condition_lhs(1400.0, &GapParams::primes_between_powers(0.0113), &z).unwrap_err();
        assert!(e.to_string().contains("(x^alpha - 2)/4 fails"), "{e}");
        assert!(condition_lhs(500.0, &report_mode(0.0113), &z).is_err());
    }

    #[test]
    fn reconstruction_identity() {
        let z = ZetaBoundsConfig::shipped();
        let s = scan_condition(&report_mode(0.0113), &z, 1000.0, 4000.0, Grid::Step(50.0)).unwrap();
        for r in &s.reports {
            assert!((r.lhs - r.reconstructed()).abs() <= 1e-12);
        }
        assert_eq!(s.reports.len(), 61);
        assert!(s.min_lhs > 0.0);
        assert!(s.marks.iter().any(|m| m.label == "rh_height"));
    }

    #[test]
    fn lhs_decreases_with_m_and_zeta_constants() {
        let base = ZetaBoundsConfig::shipped();
        let big = base.clone().with_density(ZeroDensityShape::Kln { c1: 20.0, p: 8.0 / 3.0, q: 5.0, r: 2.0, c2: 12.0 }, "test");
        let bigger_count = base.clone().with_count(ZeroCountShape::Hsw { c_a: 0.2, c_b: 0.3, c_c: 11.0 }, "test");
        for l in [1200.0, 3000.0, 2e4, 3e5] {
            let p = report_mode(0.0112);
            let a = condition_lhs(l, &p, &base).unwrap().lhs;
            assert!(condition_lhs(l, &p, &big).unwrap().lhs <= a);
            assert!(condition_lhs(l, &p, &bigger_count).unwrap().lhs <= a);
            let q = GapParams { schedule: MSchedule::constant(1e3, 7.0, 0.9), ..p.clone() };
            assert!(condition_lhs(l, &q, &base).unwrap().lhs <= a);
        }
    }

    #[test]
    fn lhs_grows_beyond_last_crossover() {
        let z = ZetaBoundsConfig::shipped();
        let p = GapParams::primes_between_powers(0.0112);
        let last = z.standard_crossovers().unwrap()[2].2 / 0.0112;
        // Compared through the deficit 1 - lhs, since lhs itself rounds to 1.
        let deficit = |l: f64| {
            let r = condition_lhs(l, &p, &z).unwrap();
            r.f + r.error_term - r.e_term
        };
        for lo in [1.1 * last, 3.0 * last, 10.0 * last] {
            let (a, b) = (deficit(lo), deficit(10.0 * lo));
            assert!(0.0 < b && b < a, "{lo}: {a} -> {b}");
        }
    }

    #[test]
    fn mu_below_one_over_m_eventually_fails() {
        let z = ZetaBoundsConfig::shipped();
        let p = GapParams { m: 90, ..report_mode(0.0105) };
        let far = condition_lhs(1e6, &p, &z).unwrap();
        assert!(far.lhs < 0.0, "{far:?}");
    }

    #[test]
    fn admissibility_threshold() {
        let l = admissible_from(0.0113, 1.0 / 85.0, 1000.0).unwrap();
        assert_eq!(l.ceil(), 1492.0, "{l}");
    }

    #[test]
    fn grids() {
        assert_eq!(grid_points(5.0, 5.0, Grid::Step(1.0)).unwrap(), vec![5.0]);
        assert_eq!(grid_points(0.0, 1.0, Grid::Step(0.3)).unwrap().len(), 5);
        let g = grid_points(1.0, 100.0, Grid::Geometric(2)).unwrap();
        assert!((g[1] - 10.0).abs() < 1e-12 && g[2] == 100.0);
        assert!(grid_points(2.0, 1.0, Grid::Step(1.0)).is_err());
    }

    #[test]
    fn e_table_interpolates() {
        let t = vec![(0.0, 0.0), (10.0, -1.0)];
        assert_eq!(interpolate(&t, 5.0).unwrap(), -0.5);
        assert_eq!(interpolate(&t, 10.0).unwrap(), -1.0);
        assert!(interpolate(&t, 11.0).is_err());
    }

    #[test]
    fn degenerate_mu_bracket() {
        let z = ZetaBoundsConfig::shipped();
        let o = optimize_mu(&report_mode(0.0113), &z, 1000.0, 1100.0, Grid::Step(50.0), (0.0113, 0.0113)).unwrap();
        assert_eq!(o.mu, 0.0113);
    }
}
