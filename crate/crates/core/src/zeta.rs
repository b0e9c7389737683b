//! Zero-free regions, zero-counting and zero-density bounds for `ζ(s)`, and
//! the resulting bound on `Σ_{|γ| ≤ 2T} x^{β-1}`.
//!
//! Heights enter as `log t` throughout: the interesting ranges reach
//! `t = exp(482036)`, far outside `f64`.

use std::f64::consts::{LN_2, PI};

use crate::config::{parse_sections, Section};
use crate::error::{precondition, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FordConstants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub j_coeff: f64,
    pub j_const: f64,
}

impl Default for FordConstants {
    fn default() -> Self {
        FordConstants { a: 0.685, b: 0.155, c: 0.04962, d: 0.0196, e: 1.15, j_coeff: 1.0 / 6.0, j_const: 0.618 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroFreeConstants {
    pub c_classical: f64,
    pub c_yang: f64,
    pub c_vk: f64,
    pub ford: FordConstants,
    pub rh_height: f64,
}

impl Default for ZeroFreeConstants {
    fn default() -> Self {
        ZeroFreeConstants {
            c_classical: 5.558691,
            c_yang: 21.233,
            c_vk: 53.989,
            ford: FordConstants::default(),
            rh_height: 3e12,
        }
    }
}

/// Upper bound for `N(T)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZeroCountShape {
    /// `(T/2π) log(T/2πe) + c_a log T + c_b log log T + c_c`.
    Hsw { c_a: f64, c_b: f64, c_c: f64 },
    /// A constant count, for tests.
    Constant(f64),
}

/// Upper bound for `N(σ, T)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZeroDensityShape {
    /// `C₁ T^{p(1-σ)} (log T)^{q - rσ} + C₂ log² T`.
    Kln { c1: f64, p: f64, q: f64, r: f64, c2: f64 },
    Zero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Configured<S> {
    pub shape: S,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZetaBoundsConfig {
    pub zero_free: ZeroFreeConstants,
    pub zero_count: Option<Configured<ZeroCountShape>>,
    pub zero_density: Option<Configured<ZeroDensityShape>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NuSelector {
    Classical,
    Ford,
    Yang,
    Vk,
    Combined,
}

impl NuSelector {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(NuSelector::Classical),
            2 => Some(NuSelector::Ford),
            3 => Some(NuSelector::Yang),
            4 => Some(NuSelector::Vk),
            _ => None,
        }
    }
}

/// Arguments of the zero-sum bound, in logarithmic coordinates.
#[derive(Clone, Copy, Debug)]
pub struct ZeroSumParams {
    pub log_x: f64,
    pub log_t: f64,
    pub sigma1: f64,
}

impl ZeroSumParams {
    pub fn new(x: f64, t: f64, sigma1: f64) -> Self {
        ZeroSumParams { log_x: x.ln(), log_t: t.ln(), sigma1 }
    }
}

/// The three summands of the zero-sum bound and their total.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroSumBound {
    pub value: f64,
    pub low_strip: f64,
    pub density: f64,
    pub count: f64,
    /// Upper end `1 - ν(2T)` of the density integral.
    pub sigma_max: f64,
}

pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// `log ∫_{s1}^{s2} exp(a + bσ) dσ` for `s1 < s2`.
fn log_exp_affine_integral(a: f64, b: f64, s1: f64, s2: f64) -> f64 {
    let w = s2 - s1;
    let bw = b.abs() * w;
    let peak = a + (b * s1).max(b * s2);
    if bw < 1e-12 {
        peak + w.ln()
    } else {
        peak + (-(-bw).exp_m1()).ln() - b.abs().ln()
    }
}

impl ZetaBoundsConfig {
    /// Zero-free constants only; count and density bounds must be added.
    pub fn zero_free_only() -> Self {
        ZetaBoundsConfig { zero_free: ZeroFreeConstants::default(), zero_count: None, zero_density: None }
    }

    pub fn with_count(mut self, shape: ZeroCountShape, provenance: &str) -> Self {
        self.zero_count = Some(Configured { shape, provenance: provenance.into() });
        self
    }

    pub fn with_density(mut self, shape: ZeroDensityShape, provenance: &str) -> Self {
        self.zero_density = Some(Configured { shape, provenance: provenance.into() });
        self
    }

    /// The configuration shipped in `data/zeta_bounds.cfg`.
    pub fn shipped() -> Self {
        ZetaBoundsConfig::parse(include_str!("../data/zeta_bounds.cfg")).expect("shipped config parses")
    }

    /// The toy configuration shipped in `data/zeta_toy.cfg`.
    pub fn toy() -> Self {
        ZetaBoundsConfig::parse(include_str!("../data/zeta_toy.cfg")).expect("toy config parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ZetaBoundsConfig::zero_free_only();
        for sec in parse_sections(text)? {
            match sec.name.as_str() {
                "" if sec.entries.is_empty() => {}
                "zero_free" => cfg.zero_free = parse_zero_free(&sec)?,
                "zero_count" => {
                    let shape = match shape_of(&sec)? {
                        "hsw" => ZeroCountShape::Hsw {
                            c_a: sec.real("c_a")?,
                            c_b: sec.real("c_b")?,
                            c_c: sec.real("c_c")?,
                        },
                        "constant" => ZeroCountShape::Constant(sec.real("value")?),
                        other => return Err(Error::Config(format!("unknown zero_count shape `{other}`"))),
                    };
                    cfg.zero_count = Some(Configured { shape, provenance: provenance_of(&sec)? });
                }
                "zero_density" => {
                    let shape = match shape_of(&sec)? {
                        "kln" => ZeroDensityShape::Kln {
                            c1: sec.real("c1")?,
                            p: sec.real("p")?,
                            q: sec.real("q")?,
                            r: sec.real("r")?,
                            c2: sec.real("c2")?,
                        },
                        "zero" => ZeroDensityShape::Zero,
                        other => return Err(Error::Config(format!("unknown zero_density shape `{other}`"))),
                    };
                    cfg.zero_density = Some(Configured { shape, provenance: provenance_of(&sec)? });
                }
                "" => return Err(Error::Config("entries outside of any section".into())),
                other => return Err(Error::Config(format!("unknown section [{other}]"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let z = &self.zero_free;
        let f = &z.ford;
        let all = [z.c_classical, z.c_yang, z.c_vk, z.rh_height, f.a, f.b, f.c, f.d, f.e, f.j_coeff, f.j_const];
        if all.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::Config("zero-free constants must be positive".into()));
        }
        if let Some(c) = &self.zero_count {
            let ok = match c.shape {
                ZeroCountShape::Hsw { c_a, c_b, c_c } => c_a >= 0.0 && c_b >= 0.0 && c_c >= 0.0,
                ZeroCountShape::Constant(v) => v >= 0.0,
            };
            if !ok {
                return Err(Error::Config("zero_count constants must be nonnegative".into()));
            }
        }
        if let Some(c) = &self.zero_density {
            if let ZeroDensityShape::Kln { c1, p, q, r, c2 } = c.shape {
                if [c1, p, q, r, c2].iter().any(|v| !(*v >= 0.0)) {
                    return Err(Error::Config("zero_density constants must be nonnegative".into()));
                }
            }
        }
        Ok(())
    }

    pub fn log_rh_height(&self) -> f64 {
        self.zero_free.rh_height.ln()
    }

    /// `J(t) = j_coeff·log t + log log t + log j_const`.
    pub fn ford_j(&self, log_t: f64) -> f64 {
        let f = &self.zero_free.ford;
        f.j_coeff * log_t + log_t.ln() + f.j_const.ln()
    }

    pub fn ford_r(&self, log_t: f64) -> f64 {
        let f = &self.zero_free.ford;
        let j = self.ford_j(log_t);
        (j + f.a + f.b * log_t.ln()) / (log_t * (f.c - f.d / (j + f.e)))
    }

    /// Width `ν` of the selected zero-free region at height `t = e^{log_t}`.
    pub fn nu(&self, log_t: f64, sel: NuSelector) -> Result<f64> {
        let z = &self.zero_free;
        if sel == NuSelector::Combined {
            if log_t <= self.log_rh_height() {
                return Ok(0.5);
            }
            let mut best = 0.0f64;
            for s in [NuSelector::Classical, NuSelector::Ford, NuSelector::Yang, NuSelector::Vk] {
                best = best.max(self.nu(log_t, s)?);
            }
            return Ok(best);
        }
        let min_log = if sel == NuSelector::Classical { LN_2 } else { 3f64.ln() };
        if !(log_t >= min_log) {
            return Err(precondition(format!("nu selector {sel:?} needs t >= {:.0}, got log t = {log_t}", min_log.exp())));
        }
        let ll = log_t.ln();
        Ok(match sel {
            NuSelector::Classical => 1.0 / (z.c_classical * log_t),
            NuSelector::Ford => 1.0 / (self.ford_r(log_t) * log_t),
            NuSelector::Yang => ll / (z.c_yang * log_t),
            NuSelector::Vk => 1.0 / (z.c_vk * log_t.powf(2.0 / 3.0) * ll.cbrt()),
            NuSelector::Combined => unreachable!(),
        })
    }

    /// The three successive crossovers of the combined region, as
    /// `(from, to, log t)`: classical to Ford, Ford to Yang, Yang to VK.
    pub fn standard_crossovers(&self) -> Result<Vec<(NuSelector, NuSelector, f64)>> {
        use NuSelector::*;
        [(Classical, Ford, 40.0, 60.0), (Ford, Yang, 150.0, 200.0), (Yang, Vk, 4e5, 6e5)]
            .into_iter()
            .map(|(i, j, lo, hi)| Ok((i, j, self.crossover(i, j, lo, hi)?)))
            .collect()
    }

    /// `log t` at which `ν_j - ν_i` changes sign inside `[lo, hi]` (log coordinates).
    pub fn crossover(&self, i: NuSelector, j: NuSelector, lo: f64, hi: f64) -> Result<f64> {
        const TOL: f64 = 1e-3;
        let d = |l: f64| -> Result<f64> { Ok(self.nu(l, j)? - self.nu(l, i)?) };
        let (mut a, mut b) = (lo, hi);
        let (da, db) = (d(a)?, d(b)?);
        if da == 0.0 {
            return Ok(a);
        }
        if db == 0.0 {
            return Ok(b);
        }
        if da.signum() == db.signum() {
            return Err(Error::Bracket(format!(
                "{j:?} - {i:?} has no sign change on log t in [{lo}, {hi}]"
            )));
        }
        while b - a > TOL {
            let m = 0.5 * (a + b);
            let dm = d(m)?;
            if dm == 0.0 {
                return Ok(m);
            }
            if dm.signum() == da.signum() {
                a = m;
            } else {
                b = m;
            }
        }
        Ok(0.5 * (a + b))
    }

    fn count(&self) -> Result<&ZeroCountShape> {
        self.zero_count
            .as_ref()
            .map(|c| &c.shape)
            .ok_or_else(|| Error::Config("no [zero_count] bound configured".into()))
    }

    fn density(&self) -> Result<&ZeroDensityShape> {
        self.zero_density
            .as_ref()
            .map(|c| &c.shape)
            .ok_or_else(|| Error::Config("no [zero_density] bound configured".into()))
    }

    /// `log N(T)` upper bound; `-inf` when the bound is zero.
    pub fn log_zero_count_upper(&self, log_t: f64) -> Result<f64> {
        let shape = self.count()?;
        if !(log_t >= LN_2) {
            return Err(precondition(format!("zero count needs T >= 2, got log T = {log_t}")));
        }
        let v = match *shape {
            ZeroCountShape::Constant(v) => v.ln(),
            ZeroCountShape::Hsw { c_a, c_b, c_c } => {
                let rest = c_a * log_t + c_b * log_t.ln() + c_c;
                let gap = log_t - (2.0 * PI * std::f64::consts::E).ln();
                if log_t < 600.0 {
                    let main = log_t.exp() / (2.0 * PI) * gap;
                    (main + rest).ln()
                } else {
                    let log_main = log_t - (2.0 * PI).ln() + gap.ln();
                    log_main + (rest * (-log_main).exp()).ln_1p()
                }
            }
        };
        Ok(v)
    }

    pub fn zero_count_upper(&self, t: f64) -> Result<f64> {
        Ok(self.log_zero_count_upper(t.ln())?.exp())
    }

    /// `log N(σ, T)` upper bound; `-inf` when the bound is zero.
    pub fn log_zero_density_upper(&self, sigma: f64, log_t: f64) -> Result<f64> {
        let shape = self.density()?;
        if !(0.5..1.0).contains(&sigma) {
            return Err(precondition(format!("sigma must lie in [1/2, 1), got {sigma}")));
        }
        if !(log_t >= LN_2) {
            return Err(precondition(format!("zero density needs T >= 2, got log T = {log_t}")));
        }
        Ok(match *shape {
            ZeroDensityShape::Zero => f64::NEG_INFINITY,
            ZeroDensityShape::Kln { c1, p, q, r, c2 } => {
                let ll = log_t.ln();
                let a = c1.ln() + p * (1.0 - sigma) * log_t + (q - r * sigma) * ll;
                log_add_exp(a, c2.ln() + 2.0 * ll)
            }
        })
    }

    pub fn zero_density_upper(&self, sigma: f64, t: f64) -> Result<f64> {
        Ok(self.log_zero_density_upper(sigma, t.ln())?.exp())
    }

    /// Bound for `Σ_{|γ| ≤ 2T} x^{β-1}` using the combined zero-free region at `2T`.
    pub fn zero_sum_bound(&self, p: &ZeroSumParams) -> Result<ZeroSumBound> {
        let nu = self.nu(p.log_t + LN_2, NuSelector::Combined)?;
        self.zero_sum_bound_with_nu(p, nu)
    }

    /// As [`Self::zero_sum_bound`] with an explicit zero-free width at `2T`.
    ///
    /// The density integral has an exact antiderivative for both configured
    /// shapes, since each summand of `x^{σ-1} N(σ, 2T)` is `exp` of an affine
    /// function of `σ`.
    pub fn zero_sum_bound_with_nu(&self, p: &ZeroSumParams, nu: f64) -> Result<ZeroSumBound> {
        if !(p.sigma1 > 0.5 && p.sigma1 < 1.0) {
            return Err(precondition(format!("sigma1 must lie in (1/2, 1), got {}", p.sigma1)));
        }
        if !(p.log_x > 0.0) {
            return Err(precondition("zero sum bound needs x > 1"));
        }
        if !(nu > 0.0 && nu <= 0.5) {
            return Err(precondition(format!("zero-free width must lie in (0, 1/2], got {nu}")));
        }
        let lx = p.log_x;
        let lt2 = p.log_t + LN_2;
        let log_n = self.log_zero_count_upper(lt2)?;
        let s1 = p.sigma1;
        let log_low = LN_2 + log_n + (s1 - 1.0) * lx + (-(-s1 * lx).exp_m1()).ln();
        let log_count = LN_2 + log_n - lx;

        let sigma_max = 1.0 - nu;
        let mut log_density = f64::NEG_INFINITY;
        if sigma_max > s1 {
            if let ZeroDensityShape::Kln { c1, p: pe, q, r, c2 } = *self.density()? {
                let ll = lt2.ln();
                let mut acc = f64::NEG_INFINITY;
                if c1 > 0.0 {
                    let a = c1.ln() - lx + pe * lt2 + q * ll;
                    let b = lx - pe * lt2 - r * ll;
                    acc = log_add_exp(acc, log_exp_affine_integral(a, b, s1, sigma_max));
                }
                if c2 > 0.0 {
                    acc = log_add_exp(acc, log_exp_affine_integral(c2.ln() + 2.0 * ll - lx, lx, s1, sigma_max));
                }
                log_density = (2.0 * lx).ln() + acc;
            }
        }
        let total = log_add_exp(log_add_exp(log_low, log_density), log_count);
        Ok(ZeroSumBound {
            value: total.exp(),
            low_strip: log_low.exp(),
            density: log_density.exp(),
            count: log_count.exp(),
            sigma_max,
        })
    }
}

fn shape_of(sec: &Section) -> Result<&str> {
    sec.get("shape")
        .map(|e| e.value.as_str())
        .ok_or_else(|| Error::Config(format!("[{}] needs a `shape` key", sec.name)))
}

fn provenance_of(sec: &Section) -> Result<String> {
    let notes: Vec<&str> = sec.provenance.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
    if notes.is_empty() {
        return Err(Error::Config(format!("[{}] needs at least one `# provenance:` line", sec.name)));
    }
    Ok(notes.join("; "))
}

fn parse_zero_free(sec: &Section) -> Result<ZeroFreeConstants> {
    let d = ZeroFreeConstants::default();
    let f = d.ford;
    Ok(ZeroFreeConstants {
        c_classical: sec.real_or("c_classical", d.c_classical)?,
        c_yang: sec.real_or("c_yang", d.c_yang)?,
        c_vk: sec.real_or("c_vk", d.c_vk)?,
        rh_height: sec.real_or("rh_height", d.rh_height)?,
        ford: FordConstants {
            a: sec.real_or("ford_a", f.a)?,
            b: sec.real_or("ford_b", f.b)?,
            c: sec.real_or("ford_c", f.c)?,
            d: sec.real_or("ford_d", f.d)?,
            e: sec.real_or("ford_e", f.e)?,
            j_coeff: sec.real_or("ford_j_coeff", f.j_coeff)?,
            j_const: sec.real_or("ford_j_const", f.j_const)?,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(count: ZeroCountShape, density: ZeroDensityShape) -> ZetaBoundsConfig {
        ZetaBoundsConfig::zero_free_only().with_count(count, "toy").with_density(density, "toy")
    }

    #[test]
    fn combined_below_rh_height() {
        let c = ZetaBoundsConfig::zero_free_only();
        assert_eq!(c.nu(1e10f64.ln(), NuSelector::Combined).unwrap(), 0.5);
    }

    #[test]
    fn classical_closed_form() {
        let c = ZetaBoundsConfig::zero_free_only();
        assert_eq!(c.nu(50.0, NuSelector::Classical).unwrap(), 1.0 / (5.558691 * 50.0));
    }

    #[test]
    fn ford_j_at_e6() {
        let c = ZetaBoundsConfig::zero_free_only();
        let want = 1.0 + 6f64.ln() + 0.618f64.ln();
        assert!((c.ford_j(6.0) - want).abs() < 1e-15);
    }

    #[test]
    fn domain_guard() {
        let c = ZetaBoundsConfig::zero_free_only();
        assert!(c.nu(1.0, NuSelector::Yang).is_err());
        assert!(c.nu(1.0, NuSelector::Classical).is_ok());
    }

    #[test]
    fn crossovers_match_reported_exponents() {
        let c = ZetaBoundsConfig::zero_free_only();
        use NuSelector::*;
        let a = c.crossover(Classical, Ford, 40.0, 60.0).unwrap();
        let b = c.crossover(Ford, Yang, 150.0, 200.0).unwrap();
        let d = c.crossover(Yang, Vk, 4e5, 6e5).unwrap();
        // Roots of the closed forms found with a 1e-12 Brent solve.
        assert!((a - 46.204_430_96).abs() < 1e-3, "{a}");
        assert!((b - 170.263_523_23).abs() < 1e-3, "{b}");
        assert!((d - 482_035.951_1).abs() < 1e-3, "{d}");
        // The reported thresholds are these roots rounded up to one decimal.
        for (root, reported) in [(a, 46.3), (b, 170.3), (d, 482_036.0)] {
            assert!(root <= reported && reported - root < 0.1);
        }
        assert!(c.crossover(Classical, Ford, 50.0, 60.0).is_err());
    }

    #[test]
    fn zero_count_toy_values() {
        let c = toy(ZeroCountShape::Hsw { c_a: 0.0, c_b: 0.0, c_c: 0.0 }, ZeroDensityShape::Zero);
        assert_eq!(c.zero_count_upper(2.0 * PI * std::f64::consts::E).unwrap(), 0.0);
        let c = toy(ZeroCountShape::Hsw { c_a: 1.0, c_b: 0.0, c_c: 0.0 }, ZeroDensityShape::Zero);
        let t = 100.0f64;
        let want = t / (2.0 * PI) * (t / (2.0 * PI * std::f64::consts::E)).ln() + t.ln();
        assert!((c.zero_count_upper(t).unwrap() - want).abs() < 1e-12 * want);
    }

    #[test]
    fn zero_count_log_branches_agree() {
        let c = ZetaBoundsConfig::shipped();
        let near = c.log_zero_count_upper(599.999_999_9).unwrap();
        let far = c.log_zero_count_upper(600.0).unwrap();
        assert!((far - near).abs() < 1e-6);
    }

    #[test]
    fn missing_config_is_reported() {
        let c = ZetaBoundsConfig::zero_free_only();
        assert!(matches!(c.zero_count_upper(100.0), Err(Error::Config(_))));
        assert!(matches!(c.zero_density_upper(0.7, 100.0), Err(Error::Config(_))));
    }

    #[test]
    fn density_toy_value() {
        let shape = ZeroDensityShape::Kln { c1: 1.0, p: 8.0 / 3.0, q: 5.0, r: 2.0, c2: 0.0 };
        let c = toy(ZeroCountShape::Constant(1.0), shape);
        let v = c.zero_density_upper(0.5, std::f64::consts::E).unwrap();
        assert!((v - (4.0f64 / 3.0).exp()).abs() < 1e-12);
        let t = 1e4f64;
        let mut prev = f64::INFINITY;
        for i in 0..50 {
            let s = 0.5 + 0.0099 * i as f64;
            let v = c.zero_density_upper(s, t).unwrap();
            assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn zero_sum_toy_closed_form() {
        let c = toy(ZeroCountShape::Constant(1.0), ZeroDensityShape::Zero);
        let p = ZeroSumParams { log_x: 10.0, log_t: 5.0, sigma1: 0.6 };
        let got = c.zero_sum_bound(&p).unwrap().value;
        let want = 2.0 * ((-4.0f64).exp() - (-10.0f64).exp()) + 2.0 * (-10.0f64).exp();
        assert!((got - want).abs() < 1e-15);
    }

    #[test]
    fn empty_density_range_below_rh_height() {
        let c = ZetaBoundsConfig::shipped();
        let p = ZeroSumParams { log_x: 100.0, log_t: 20.0, sigma1: 0.6 };
        let b = c.zero_sum_bound(&p).unwrap();
        assert_eq!(b.sigma_max, 0.5);
        assert_eq!(b.density, 0.0);
    }

    #[test]
    fn exp_affine_integral_matches_quadrature() {
        for &(a, b) in &[(0.3, 2.0), (-1.0, -40.0), (2.0, 1e-14), (0.0, 900.0)] {
            let (s1, s2) = (0.6, 0.9);
            let n = 200_000;
            let h = (s2 - s1) / n as f64;
            let peak = a + (b * s1).max(b * s2);
            let mut acc = 0.0;
            for i in 0..n {
                acc += (a + b * (s1 + (i as f64 + 0.5) * h) - peak).exp() * h;
            }
            let want = peak + acc.ln();
            let got = log_exp_affine_integral(a, b, s1, s2);
            assert!((got - want).abs() < 1e-6, "{a} {b}: {got} vs {want}");
        }
    }

    #[test]
    fn config_requires_provenance() {
        let text = "[zero_count]\nshape = constant\nvalue = 1\n";
        assert!(matches!(ZetaBoundsConfig::parse(text), Err(Error::Config(_))));
        let text = "[zero_count]\n# provenance: test\nshape = constant\nvalue = 1\n";
        assert!(ZetaBoundsConfig::parse(text).is_ok());
    }
}
