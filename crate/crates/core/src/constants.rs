//! The error budget for the truncated explicit formula for `ψ(x)`, its
//! certified supremum over admissible `(x, T)`, and the optimization over `λ`.
//!
//! All quantities are normalized by `x (log x)^{1-ω} / T`, the shape of the
//! final error term, and `x` enters through `L = log x` only.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{E, LN_2};

use crate::arith::{c0, PsiThetaConstants};
use crate::config::parse_real;
use crate::error::{precondition, Error, Result};
use crate::interval::Interval;
use crate::optimize::{minimize, SearchMethod, SearchSettings};
use crate::perron::R_COEFF;

/// One row of the K table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KRow {
    pub log_x_k: f64,
    pub alpha: f64,
    pub omega: f64,
    pub k: f64,
    pub omega_bar: Option<f64>,
    pub d: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KTable {
    rows: Vec<KRow>,
    pub provenance: Vec<String>,
}

const KEY_TOL: f64 = 1e-12;

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= KEY_TOL * a.abs().max(b.abs()).max(1.0)
}

impl KTable {
    pub fn new(rows: Vec<KRow>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if !(r.k > 0.0) {
                return Err(Error::Config(format!("K must be positive, row {} has {}", i + 1, r.k)));
            }
            if rows[..i].iter().any(|q| same(q.log_x_k, r.log_x_k) && same(q.alpha, r.alpha) && same(q.omega, r.omega)) {
                return Err(Error::Config(format!(
                    "duplicate K row for (log x = {}, alpha = {}, omega = {})",
                    r.log_x_k, r.alpha, r.omega
                )));
            }
        }
        Ok(KTable { rows, provenance: Vec::new() })
    }

    /// Whitespace-separated `log_xK alpha omega K [omega_bar [D]]` per line;
    /// `-` marks a missing annotation.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut provenance = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(c) = line.strip_prefix('#') {
                if let Some(p) = c.trim().strip_prefix("provenance:") {
                    provenance.push(p.trim().to_string());
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let bad = |message: String| Error::Parse { line: i + 1, message };
            let cols: Vec<&str> = line.split_whitespace().collect();
            if !(4..=6).contains(&cols.len()) {
                return Err(bad(format!("expected 4 to 6 columns, got {}", cols.len())));
            }
            let num = |s: &str| parse_real(s).map_err(bad);
            let opt = |j: usize| match cols.get(j) {
                None | Some(&"-") | Some(&"---") => Ok(None),
                Some(s) => parse_real(s).map(Some).map_err(|m| Error::Parse { line: i + 1, message: m }),
            };
            rows.push(KRow {
                log_x_k: num(cols[0])?,
                alpha: num(cols[1])?,
                omega: num(cols[2])?,
                k: num(cols[3])?,
                omega_bar: opt(4)?,
                d: opt(5)?,
            });
        }
        let mut t = KTable::new(rows)?;
        t.provenance = provenance;
        Ok(t)
    }

    pub fn shipped() -> Self {
        KTable::parse(include_str!("../data/k_table.cfg")).expect("shipped K table parses")
    }

    pub fn rows(&self) -> &[KRow] {
        &self.rows
    }

    pub fn lookup(&self, log_x: f64, alpha: f64, omega: f64) -> Option<&KRow> {
        self.rows.iter().find(|r| same(r.log_x_k, log_x) && same(r.alpha, alpha) && same(r.omega, omega))
    }
}

/// Parameters of one constant `M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MSpec {
    pub log_x_m: f64,
    pub alpha: f64,
    pub omega: f64,
    pub lambda: f64,
    pub k: f64,
}

impl MSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 0.5) {
            return Err(precondition(format!("alpha must lie in (0, 1/2], got {}", self.alpha)));
        }
        if !(0.0..=1.0).contains(&self.omega) {
            return Err(precondition(format!("omega must lie in [0, 1], got {}", self.omega)));
        }
        if !(self.lambda > 0.0) || !(self.k >= 0.0) {
            return Err(precondition(format!("need lambda > 0 and K >= 0, got {} and {}", self.lambda, self.k)));
        }
        if !(self.alpha * self.log_x_m > LN_2) || !(self.log_x_m > 1.0) {
            return Err(precondition(format!("x_M^alpha must exceed 2 (log x_M = {})", self.log_x_m)));
        }
        Ok(())
    }

    pub fn with_lambda(&self, lambda: f64) -> MSpec {
        MSpec { lambda, ..*self }
    }
}

/// The four summands of the budget, each divided by `x (log x)^{1-ω}/T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorBudget {
    pub k_term: f64,
    pub delange_term: f64,
    pub bt_term: f64,
    pub sqrt_term: f64,
    pub total: f64,
    /// `log(x (log x)^{1-ω}/T)`; multiply by its exponential to undo the normalization.
    pub log_normalizer: f64,
}

impl ErrorBudget {
    /// Unnormalized total (infinite when it overflows).
    pub fn raw_total(&self) -> f64 {
        self.total * self.log_normalizer.exp()
    }
}

/// `log((x^α - 2)/4)`, or `None` when `x^α ≤ 2`.
fn log_t_upper(log_x: f64, alpha: f64) -> Option<f64> {
    let a = alpha * log_x;
    if a <= LN_2 {
        return None;
    }
    Some(a + (-2.0 * (-a).exp()).ln_1p() - 2.0 * LN_2)
}

/// `(log max{51, log²x}, log((x^α - 2)/4))`; the range may be empty.
pub fn admissible_log_t(log_x: f64, alpha: f64) -> Option<(f64, f64)> {
    let lo = 51f64.max(log_x * log_x).ln();
    log_t_upper(log_x, alpha).map(|hi| (lo, hi))
}

/// Smallest `log x ≥ from` at which the admissible `T` range is non-empty.
pub fn first_admissible_log_x(from: f64, alpha: f64) -> Option<f64> {
    let ok = |l: f64| admissible_log_t(l, alpha).is_some_and(|(a, b)| a < b);
    if ok(from) {
        return Some(from);
    }
    let mut hi = from.max(1.0);
    for _ in 0..200 {
        hi *= 2.0;
        if ok(hi) {
            let mut lo = from;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if ok(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Some(hi);
        }
    }
    None
}

/// The budget at `(x, T)`.
pub fn error_budget(x: f64, t: f64, spec: &MSpec, theta_prime: f64) -> Result<ErrorBudget> {
    if !(x > 1.0 && t > 0.0) {
        return Err(precondition(format!("need x > 1 and T > 0, got {x}, {t}")));
    }
    error_budget_log(x.ln(), t.ln(), spec, theta_prime)
}

/// The budget at `(e^{log_x}, e^{log_t})`. The admissible range is taken closed.
pub fn error_budget_log(log_x: f64, log_t: f64, spec: &MSpec, theta_prime: f64) -> Result<ErrorBudget> {
    spec.validate()?;
    if log_x < spec.log_x_m {
        return Err(precondition(format!("log x = {log_x} is below log x_M = {}", spec.log_x_m)));
    }
    let (lo, hi) = admissible_log_t(log_x, spec.alpha)
        .ok_or_else(|| precondition(format!("no admissible T at log x = {log_x}")))?;
    if !(lo <= log_t && log_t <= hi) {
        return Err(precondition(format!(
            "T must satisfy max(51, log^2 x) <= T <= (x^alpha - 2)/4, i.e. log T in [{lo}, {hi}], got {log_t}"
        )));
    }
    let l = log_x;
    let (lambda, omega) = (spec.lambda, spec.omega);
    let c0v = c0(lambda)?;
    let kappa = 1.0 + 1.0 / l;
    let growth = (kappa * lambda).exp();
    let log_q = ((c0v - 1.0) * lambda).ln_1p();
    let den = (c0v * theta_prime).ln() + l - log_t;
    if !(den > 0.0) {
        return Err(precondition(format!("log(c0 theta' x / T) = {den} must be positive")));
    }
    let e1 = 2.0 * (l + log_q) / den;
    let c = PsiThetaConstants::default();
    let lxq = l + log_q;
    let log_e2 = crate::zeta::log_add_exp(
        crate::zeta::log_add_exp(c.a1.ln() + lxq / 2.0, c.a2.ln() + lxq / 3.0),
        l.ln(),
    );
    let shape = (1.0 - omega) * l.ln();
    let k_term = spec.k;
    let delange_term = R_COEFF * E * (omega * l.ln() - log_t).exp() / (2.0 * lambda * lambda);
    let bt_term = R_COEFF * growth * c0v * e1 / (theta_prime * (shape).exp());
    let sqrt_term = (R_COEFF / (2.0 * theta_prime * theta_prime)).ln() + kappa * lambda + log_e2 + log_t - l - shape;
    let sqrt_term = sqrt_term.exp();
    Ok(ErrorBudget {
        k_term,
        delange_term,
        bt_term,
        sqrt_term,
        total: k_term + delange_term + bt_term + sqrt_term,
        log_normalizer: l - log_t + shape,
    })
}

/// Which summands enter the supremum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermMask {
    pub k: bool,
    pub delange: bool,
    pub bt: bool,
    pub sqrt: bool,
}

impl TermMask {
    pub const ALL: TermMask = TermMask { k: true, delange: true, bt: true, sqrt: true };
    pub const K_ONLY: TermMask = TermMask { k: true, delange: false, bt: false, sqrt: false };
}

/// Settings of the branch-and-bound over `log log x`.
#[derive(Clone, Copy, Debug)]
pub struct SupStrategy {
    pub rel_tol: f64,
    pub max_boxes: usize,
    pub initial_cells: usize,
    /// The search covers `log x ∈ [log x_M, log x_M · 2^cap_doublings]`; beyond
    /// that a monotone envelope is used.
    pub cap_doublings: u32,
    pub terms: TermMask,
}

impl Default for SupStrategy {
    fn default() -> Self {
        SupStrategy { rel_tol: 1e-7, max_boxes: 200_000, initial_cells: 64, cap_doublings: 40, terms: TermMask::ALL }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SupResult {
    /// Certified upper bound for the supremum of the normalized budget.
    pub value: f64,
    /// Best value attained at a sampled point.
    pub lower: f64,
    pub argmax_log_x: f64,
    pub tail_bound: f64,
    pub boxes: usize,
    /// Whether `value ≤ lower·(1 + rel_tol)` was reached within the box budget.
    pub converged: bool,
    /// Smallest `log x ≥ log x_M` with a non-empty `T` range.
    pub first_admissible_log_x: Option<f64>,
}

struct SupTerms {
    k: f64,
    lambda: f64,
    omega: f64,
    alpha: f64,
    c0: Interval,
    theta: Interval,
    coeff: Interval,
    log_a1: Interval,
    log_a2: Interval,
    terms: TermMask,
}

impl SupTerms {
    fn new(spec: &MSpec, theta: Interval, terms: TermMask) -> Result<Self> {
        let c = PsiThetaConstants::default();
        Ok(SupTerms {
            k: spec.k,
            lambda: spec.lambda,
            omega: spec.omega,
            alpha: spec.alpha,
            c0: Interval::widened(c0(spec.lambda)?, 8),
            theta,
            coeff: Interval::around(R_COEFF),
            log_a1: Interval::widened(c.a1.ln(), 4),
            log_a2: Interval::widened(c.a2.ln(), 4),
            terms,
        })
    }

    fn log_q(&self) -> Interval {
        ((self.c0 - 1.0) * self.lambda + 1.0).ln()
    }

    /// Enclosure of the normalized budget over `L ∈ l`, each term taken at its
    /// worst `T` endpoint. `None` when an enclosure is undefined.
    fn eval(&self, l: Interval) -> Option<Interval> {
        let one = Interval::point(1.0);
        let inv_l = l.recip();
        let growth = ((one + inv_l) * self.lambda).exp();
        let shape = l.powf(self.omega - 1.0);
        let log_q = self.log_q();
        let mut acc: Option<Interval> = None;
        let mut push = |v: Interval| acc = Some(acc.map_or(v, |a| a + v));
        if self.terms.k {
            push(Interval::point(self.k));
        }
        if self.terms.delange {
            let t_lo = l.powi(2).max(Interval::point(51.0));
            let c = self.coeff * Interval::around(E) / (2.0 * self.lambda * self.lambda);
            push(c * l.powf(self.omega) / t_lo);
        }
        let al = l * self.alpha;
        let gap = one - (-al).exp() * 2.0;
        if gap.lo <= 0.0 {
            return None;
        }
        if self.terms.bt {
            let ln4 = Interval::around(LN_2) * 2.0;
            let den = Interval::point(1.0 - self.alpha) + (ln4 + (self.c0 * self.theta).ln() - gap.ln()) * inv_l;
            if den.lo <= 0.0 {
                return None;
            }
            let e1 = (one + log_q * inv_l) * 2.0 / den;
            push(self.coeff * growth * self.c0 * e1 / self.theta * shape);
        }
        if self.terms.sqrt {
            push(self.sqrt_envelope(l, growth, gap, shape));
        }
        acc
    }

    /// `1.785 e^{κλ} 𝓔₂ T_hi /(2θ'² x)` written so that no large exponent cancels.
    fn sqrt_envelope(&self, l: Interval, growth: Interval, gap: Interval, shape: Interval) -> Interval {
        let lq = self.log_q();
        let a = (self.log_a1 + lq * 0.5 + l * (self.alpha - 0.5)).exp();
        let b = (self.log_a2 + lq * (1.0 / 3.0) + l * (self.alpha - 2.0 / 3.0)).exp();
        let c = l * (l * (self.alpha - 1.0)).exp();
        let th2 = self.theta.powi(2);
        self.coeff * growth / (th2 * 8.0) * gap * (a + b + c) * shape
    }

    /// Bound for all `L ≥ cap`, from monotone factors: `e^{κλ}`, `L^{ω-1}`,
    /// `L^ω/max(51, L²)` and the three `𝓔₂` summands are nonincreasing for
    /// `L ≥ max(√51, 1/(1-α))`, and `𝓔₁` is a Möbius function of `L` bounded
    /// by its value at `cap` or its limit.
    fn tail(&self, cap: f64) -> f64 {
        let l = Interval::point(cap);
        let one = Interval::point(1.0);
        let growth = ((one + l.recip()) * self.lambda).exp();
        let shape = l.powf(self.omega - 1.0);
        let mut acc: Option<Interval> = None;
        let mut push = |v: Interval| acc = Some(acc.map_or(v, |a| a + v));
        if self.terms.k {
            push(Interval::point(self.k));
        }
        if self.terms.delange {
            let c = self.coeff * Interval::around(E) / (2.0 * self.lambda * self.lambda);
            push(c * l.powf(self.omega) / l.powi(2).max(Interval::point(51.0)));
        }
        if self.terms.bt {
            let ln4 = Interval::around(LN_2) * 2.0;
            let c = ln4 + (self.c0 * self.theta).ln();
            let lq = self.log_q();
            let mobius = (l + lq) * 2.0 / (l * (1.0 - self.alpha) + c);
            let limit = Interval::point(2.0) / Interval::point(1.0 - self.alpha);
            let e1 = if c.lo >= 0.0 { (one + lq / l) * 2.0 / Interval::point(1.0 - self.alpha) } else { mobius.max(limit) };
            push(self.coeff * growth * self.c0 * e1 / self.theta * shape);
        }
        if self.terms.sqrt {
            push(self.sqrt_envelope(l, growth, one, shape));
        }
        acc.map_or(0.0, |v| v.hi)
    }
}

struct Cell {
    upper: f64,
    a: f64,
    b: f64,
}

impl PartialEq for Cell {
    fn eq(&self, o: &Self) -> bool {
        self.upper.total_cmp(&o.upper) == Ordering::Equal
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Cell {
    fn cmp(&self, o: &Self) -> Ordering {
        self.upper.total_cmp(&o.upper)
    }
}

/// Certified upper bound for `sup budget·T/(x (log x)^{1-ω})` over `x ≥ x_M`
/// and admissible `T`.
pub fn normalized_sup(spec: &MSpec, theta_prime: Interval, s: &SupStrategy) -> Result<SupResult> {
    spec.validate()?;
    let f = SupTerms::new(spec, theta_prime, s.terms)?;
    let l_m = spec.log_x_m;
    let cap = (l_m * 2f64.powi(s.cap_doublings as i32)).max(51f64.sqrt()).max(2.0 / (1.0 - spec.alpha));
    let (t0, t1) = (l_m.ln(), cap.ln());
    let upper_of = |a: f64, b: f64| f.eval(Interval::new(a, b).exp()).map_or(f64::INFINITY, |v| v.hi);
    let lower_at = |t: f64| f.eval(Interval::point(t.exp())).map_or(f64::NEG_INFINITY, |v| v.lo);

    let tail = f.tail(cap);
    let mut lower = f64::NEG_INFINITY;
    let mut arg = l_m;
    let note = |t: f64, lower: &mut f64, arg: &mut f64| {
        let v = lower_at(t);
        if v > *lower {
            *lower = v;
            *arg = t.exp();
        }
    };
    note(t0, &mut lower, &mut arg);
    note(t1, &mut lower, &mut arg);

    let mut heap = BinaryHeap::new();
    let n = s.initial_cells.max(1);
    for i in 0..n {
        let a = t0 + (t1 - t0) * i as f64 / n as f64;
        let b = if i + 1 == n { t1 } else { t0 + (t1 - t0) * (i + 1) as f64 / n as f64 };
        note(0.5 * (a + b), &mut lower, &mut arg);
        heap.push(Cell { upper: upper_of(a, b), a, b });
    }
    let mut boxes = n;
    let mut converged = false;
    let mut best_upper = f64::INFINITY;
    while let Some(cell) = heap.pop() {
        let target = lower.max(tail) * (1.0 + s.rel_tol);
        if cell.upper <= target {
            best_upper = cell.upper;
            converged = true;
            break;
        }
        let m = 0.5 * (cell.a + cell.b);
        if boxes >= s.max_boxes || !(cell.a < m && m < cell.b) {
            best_upper = cell.upper;
            break;
        }
        note(0.5 * (cell.a + m), &mut lower, &mut arg);
        note(0.5 * (m + cell.b), &mut lower, &mut arg);
        heap.push(Cell { upper: upper_of(cell.a, m), a: cell.a, b: m });
        heap.push(Cell { upper: upper_of(m, cell.b), a: m, b: cell.b });
        boxes += 2;
    }
    if heap.is_empty() && !converged && best_upper == f64::INFINITY {
        best_upper = lower;
    }
    let value = best_upper.max(tail).max(lower);
    if !value.is_finite() {
        return Err(precondition(format!("budget enclosure is unbounded for log x_M = {l_m}")));
    }
    Ok(SupResult {
        value,
        lower: lower.max(tail.min(value)),
        argmax_log_x: arg,
        tail_bound: tail,
        boxes,
        converged,
        first_admissible_log_x: first_admissible_log_x(l_m, spec.alpha),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct LambdaOptimum {
    pub lambda: f64,
    pub m: f64,
    pub method: SearchMethod,
}

/// Minimizes `normalized_sup` over `λ ∈ [lo, hi]` (the spec's `λ` is ignored).
pub fn optimize_lambda(spec: &MSpec, theta_prime: Interval, bracket: (f64, f64), s: &SupStrategy) -> Result<LambdaOptimum> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && lo <= hi) {
        return Err(precondition(format!("lambda bracket must be positive and ordered, got [{lo}, {hi}]")));
    }
    let settings = SearchSettings { log_scale: true, x_tol: 1e-6, ..SearchSettings::default() };
    let m = minimize(|lam| normalized_sup(&spec.with_lambda(lam), theta_prime, s).map(|r| r.value), lo, hi, &settings)?;
    Ok(LambdaOptimum { lambda: m.x, m: m.value, method: m.method })
}

/// `M((x+h)(log(x+h))^{1-ω} + x(log x)^{1-ω})/T`.
pub fn interval_error(x: f64, h: f64, m: f64, omega: f64, t: f64) -> Result<f64> {
    if !(x > 1.0 && h >= 0.0 && t > 0.0) || !(0.0..=1.0).contains(&omega) {
        return Err(precondition(format!("need x > 1, h >= 0, T > 0, omega in [0,1]; got {x}, {h}, {t}, {omega}")));
    }
    let top = (x + h).ln();
    if !(t > 51f64.max(top * top)) {
        return Err(precondition(format!("T = {t} must exceed max(51, log^2(x+h)) = {}", 51f64.max(top * top))));
    }
    Ok(m * g_shape(x, h, omega) / t)
}

/// `G(x, h) = (x+h)(log(x+h))^{1-ω} + x(log x)^{1-ω}`.
pub fn g_shape(x: f64, h: f64, omega: f64) -> f64 {
    let p = 1.0 - omega;
    (x + h) * (x + h).ln().powf(p) + x * x.ln().powf(p)
}

/// A printed row of the table of `M` values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MReference {
    pub log_x_m: f64,
    pub alpha: f64,
    pub omega: f64,
    pub lambda: f64,
    pub m: f64,
}

pub const M_REFERENCE: [MReference; 10] = [
    MReference { log_x_m: 40.0, alpha: 0.5, omega: 0.0, lambda: 0.43, m: 2.914 },
    MReference { log_x_m: 1e3, alpha: 0.5, omega: 0.0, lambda: 0.42, m: 1.706 },
    MReference { log_x_m: 1e10, alpha: 0.5, omega: 0.3, lambda: 0.42, m: 2.275 },
    MReference { log_x_m: 1e13, alpha: 0.5, omega: 1.0, lambda: 1e-4, m: 19.81 },
    MReference { log_x_m: 1e3, alpha: 0.1, omega: 0.2, lambda: 0.07, m: 1.260 },
    MReference { log_x_m: 1e10, alpha: 0.1, omega: 0.9, lambda: 1e-3, m: 4.431 },
    MReference { log_x_m: 1e3, alpha: 0.01, omega: 0.8, lambda: 0.07, m: 3.615 },
    MReference { log_x_m: 1e10, alpha: 0.01, omega: 1.0, lambda: 1e-3, m: 9.631 },
    MReference { log_x_m: 1e3, alpha: 1.0 / 85.0, omega: 0.9, lambda: 0.07, m: 6.391 },
    MReference { log_x_m: 4e3, alpha: 1.0 / 85.0, omega: 0.9, lambda: 0.05, m: 5.462 },
];

#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub reference: MReference,
    pub k: f64,
    pub computed: SupResult,
    pub ratio: f64,
    pub optimum: Option<LambdaOptimum>,
}

/// Recomputes every reference row with its printed `λ` (and optionally the
/// optimal `λ` over `bracket`).
pub fn table1(
    table: &KTable,
    theta_prime: Interval,
    s: &SupStrategy,
    bracket: Option<(f64, f64)>,
) -> Result<Vec<TableRow>> {
    use rayon::prelude::*;
    M_REFERENCE
        .par_iter()
        .map(|r| {
            let k = table
                .lookup(r.log_x_m, r.alpha, r.omega)
                .ok_or_else(|| Error::Config(format!("no K for (log x = {}, alpha = {}, omega = {})", r.log_x_m, r.alpha, r.omega)))?
                .k;
            let spec = MSpec { log_x_m: r.log_x_m, alpha: r.alpha, omega: r.omega, lambda: r.lambda, k };
            let computed = normalized_sup(&spec, theta_prime, s)?;
            let optimum = bracket.map(|b| optimize_lambda(&spec, theta_prime, b, s)).transpose()?;
            Ok(TableRow { reference: *r, k, computed, ratio: computed.value / r.m, optimum })
        })
        .collect()
}
