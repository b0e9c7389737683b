//! Dense real polynomials with exact calculus and certified sign splitting.

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Polynomial with coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

const MAX_ISOLATION_DEPTH: usize = 96;

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc.mul_add(x, c))
    }

    /// Horner evaluation in interval arithmetic.
    pub fn eval_interval(&self, x: Interval) -> Interval {
        self.coeffs
            .iter()
            .rev()
            .fold(Interval::point(0.0), |acc, &c| acc * x + Interval::point(c))
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::new(vec![0.0]);
        }
        let d = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| c * j as f64)
            .collect();
        Polynomial::new(d)
    }

    pub fn nth_derivative(&self, n: usize) -> Polynomial {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Enclosure of `∫_lo^hi p(u) du` over a point-or-interval range.
    pub fn integral(&self, lo: Interval, hi: Interval) -> Interval {
        self.antiderivative(hi) - self.antiderivative(lo)
    }

    fn antiderivative(&self, u: Interval) -> Interval {
        let mut acc = Interval::point(0.0);
        for (j, &c) in self.coeffs.iter().enumerate().rev() {
            acc = (acc + Interval::point(c) / (j as f64 + 1.0)) * u;
        }
        acc
    }

    /// Enclosure of `c_0 ln u + sum_{j>=1} c_j u^j / j`, an antiderivative of `p(u)/u`.
    pub fn log_antiderivative(&self, u: Interval) -> Interval {
        let mut acc = Interval::point(0.0);
        for (j, &c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = (acc + Interval::point(c) / j as f64) * u;
        }
        acc + Interval::point(self.coeffs[0]) * u.ln()
    }

    /// Value at `x` is indistinguishable from zero in floating point.
    fn vanishes_at(&self, x: f64) -> bool {
        self.eval_interval(Interval::point(x)).contains(0.0)
    }

    /// Coefficients of `p(a + (b - a) t)`.
    fn rescaled(&self, a: f64, b: f64) -> Vec<f64> {
        let mut c = taylor_shift(&self.coeffs, a);
        let w = b - a;
        let mut s = 1.0;
        for v in c.iter_mut() {
            *v *= s;
            s *= w;
        }
        c
    }

    /// Descartes bound on the number of roots in the open interval `(a, b)`.
    fn descartes_bound(&self, a: f64, b: f64) -> usize {
        let mut q = self.rescaled(a, b);
        strip_small_low_order(&mut q);
        q.reverse();
        let mut r = taylor_shift(&q, 1.0);
        strip_small_low_order(&mut r);
        sign_variations(&r)
    }

    /// Isolates every sign change of `p` in the open interval `(a, b)`.
    ///
    /// Returned enclosures are disjoint, ascending, and straddle a certified
    /// sign change at resolution `tol` (or at floating-point resolution when
    /// the root is ill-conditioned). Roots of even multiplicity are skipped,
    /// since they do not split the domain into regions of different sign.
    pub fn sign_changes(&self, a: f64, b: f64, tol: f64) -> Result<Vec<Interval>> {
        if !self.coeffs.iter().all(|c| c.is_finite()) || !(a < b) {
            return Err(Error::RootIsolation(format!(
                "non-finite coefficients or empty domain [{a}, {b}]"
            )));
        }
        if self.is_zero() || self.degree() == 0 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        self.isolate(a, b, tol, 0, &mut out)?;
        out.sort_by(|x, y| x.lo.total_cmp(&y.lo));
        Ok(out)
    }

    fn isolate(&self, a: f64, b: f64, tol: f64, depth: usize, out: &mut Vec<Interval>) -> Result<()> {
        let v = self.descartes_bound(a, b);
        if v == 0 {
            return Ok(());
        }
        let (sa, sb) = (self.sign_near(a, b, true), self.sign_near(a, b, false));
        if v == 1 {
            if let (Some(x), Some(y)) = (sa, sb) {
                if x != y {
                    out.push(self.refine(a, b, tol));
                    return Ok(());
                }
            }
        }
        let mid = a + 0.5 * (b - a);
        if mid <= a || mid >= b || depth >= MAX_ISOLATION_DEPTH {
            // Floating-point resolution reached: keep the cluster only if it flips sign.
            return match (sa, sb) {
                (Some(x), Some(y)) if x != y => {
                    out.push(Interval::new(a, b));
                    Ok(())
                }
                (Some(_), Some(_)) => Ok(()),
                _ => Err(Error::RootIsolation(format!(
                    "could not certify signs near cluster [{a}, {b}]"
                ))),
            };
        }
        if self.vanishes_at(mid) {
            // Root at (or numerically at) the split point: enclose it and recurse on both sides.
            let left = self.sign_near(a, mid, false);
            let right = self.sign_near(mid, b, true);
            if let (Some(l), Some(r)) = (left, right) {
                if l != r {
                    out.push(Interval::new(mid.next_down(), mid.next_up()));
                }
            }
        }
        self.isolate(a, mid, tol, depth + 1, out)?;
        self.isolate(mid, b, tol, depth + 1, out)
    }

    /// Certified sign of `p` just inside the interval end, stepping inward past
    /// any exact root at the endpoint.
    fn sign_near(&self, a: f64, b: f64, at_start: bool) -> Option<i8> {
        let width = b - a;
        let mut frac = 0.0;
        for _ in 0..40 {
            let x = if at_start { a + frac * width } else { b - frac * width };
            if let Some(s) = self.eval_interval(Interval::point(x)).sign() {
                return Some(s);
            }
            frac = if frac == 0.0 { 1.0 / 1024.0 } else { frac * 2.0 };
            if frac >= 0.5 {
                break;
            }
        }
        None
    }

    fn refine(&self, a: f64, b: f64, tol: f64) -> Interval {
        let (mut lo, mut hi) = (a, b);
        let s_lo = self.sign_near(a, b, true).unwrap_or(1);
        // Tighten endpoints onto points with certified sign first.
        if !self.eval_interval(Interval::point(lo)).sign().is_some() {
            lo = step_inward(self, lo, hi, true).unwrap_or(lo);
        }
        if !self.eval_interval(Interval::point(hi)).sign().is_some() {
            hi = step_inward(self, lo, hi, false).unwrap_or(hi);
        }
        while hi - lo > tol {
            let mid = lo + 0.5 * (hi - lo);
            if mid <= lo || mid >= hi {
                break;
            }
            match self.eval_interval(Interval::point(mid)).sign() {
                Some(s) if s == s_lo => lo = mid,
                Some(_) => hi = mid,
                None => {
                    // Uncertified at mid: find the nearest certified points on each side.
                    let (l, r) = (self.certified_toward(mid, lo), self.certified_toward(mid, hi));
                    let sl = self.eval_interval(Interval::point(l)).sign();
                    let sr = self.eval_interval(Interval::point(r)).sign();
                    match (sl, sr) {
                        (Some(x), Some(y)) if x == s_lo && y != s_lo => return Interval::new(l, r),
                        (Some(x), _) if x != s_lo => hi = l,
                        (_, Some(y)) if y == s_lo => lo = r,
                        _ => return Interval::new(lo, hi),
                    }
                }
            }
        }
        Interval::new(lo, hi)
    }

    /// Walks from `x` toward `limit` with doubling steps until the sign of `p`
    /// is certified, returning `limit` if it never is.
    fn certified_toward(&self, x: f64, limit: f64) -> f64 {
        let mut step = f64::EPSILON * x.abs().max(f64::MIN_POSITIVE);
        loop {
            let y = if limit > x { (x + step).min(limit) } else { (x - step).max(limit) };
            if y == limit || self.eval_interval(Interval::point(y)).sign().is_some() {
                return y;
            }
            step *= 2.0;
        }
    }

    /// Enclosure of `∫_a^b |p(u)| / u du` for `0 < a < b`.
    pub fn abs_integral_over_u(&self, a: f64, b: f64, tol: f64) -> Result<Interval> {
        assert!(a > 0.0, "integrand p(u)/u needs a positive domain");
        let roots = self.sign_changes(a, b, tol)?;
        let mut cuts = Vec::with_capacity(roots.len() + 2);
        cuts.push(Interval::point(a));
        cuts.extend(roots);
        cuts.push(Interval::point(b));
        let mut total = Interval::point(0.0);
        for pair in cuts.windows(2) {
            let (l, r) = (pair[0], pair[1]);
            let s = self.segment_sign(l.hi, r.lo)?;
            if s == 0 {
                continue;
            }
            let at = |c: Interval| {
                self.cut_value(c, |u| self.log_antiderivative(u), |u| self.eval_interval(u) / u)
            };
            let piece = at(r) - at(l);
            let piece = if s > 0 { piece } else { -piece };
            total = total + Interval::new(piece.lo.max(0.0), piece.hi.max(0.0));
        }
        Ok(total)
    }

    /// Enclosure of `∫_a^b |p(u)| du`.
    pub fn abs_integral(&self, a: f64, b: f64, tol: f64) -> Result<Interval> {
        let roots = self.sign_changes(a, b, tol)?;
        let mut cuts = Vec::with_capacity(roots.len() + 2);
        cuts.push(Interval::point(a));
        cuts.extend(roots);
        cuts.push(Interval::point(b));
        let mut total = Interval::point(0.0);
        for pair in cuts.windows(2) {
            let (l, r) = (pair[0], pair[1]);
            let s = self.segment_sign(l.hi, r.lo)?;
            if s == 0 {
                continue;
            }
            let at = |c: Interval| {
                self.cut_value(c, |u| self.antiderivative(u), |u| self.eval_interval(u))
            };
            let piece = at(r) - at(l);
            let piece = if s > 0 { piece } else { -piece };
            total = total + Interval::new(piece.lo.max(0.0), piece.hi.max(0.0));
        }
        Ok(total)
    }

    /// Antiderivative at a cut point. At a root enclosure the antiderivative is
    /// taken at the midpoint and padded by `sup |integrand| * width`, which is
    /// far tighter than evaluating it over the whole enclosure.
    fn cut_value(
        &self,
        c: Interval,
        anti: impl Fn(Interval) -> Interval,
        integrand: impl Fn(Interval) -> Interval,
    ) -> Interval {
        if c.width() == 0.0 {
            return anti(c);
        }
        let g = integrand(c);
        let pad = g.lo.abs().max(g.hi.abs()) * c.width();
        anti(Interval::point(c.mid())) + Interval::new(-pad, pad)
    }

    /// Sign of `p` on a root-free segment, certified at an interior point.
    fn segment_sign(&self, l: f64, r: f64) -> Result<i8> {
        if self.is_zero() {
            return Ok(0);
        }
        for frac in [0.5, 0.25, 0.75, 0.125, 0.875, 0.375, 0.625] {
            let x = l + frac * (r - l);
            if let Some(s) = self.eval_interval(Interval::point(x)).sign() {
                return Ok(s);
            }
        }
        if r - l <= 4.0 * f64::EPSILON * r.abs().max(1.0) {
            // Degenerate sliver between two adjacent enclosures.
            return Ok(0);
        }
        Err(Error::RootIsolation(format!("sign of polynomial undetermined on [{l}, {r}]")))
    }
}

fn step_inward(p: &Polynomial, lo: f64, hi: f64, from_lo: bool) -> Option<f64> {
    let w = hi - lo;
    let mut frac = 1.0 / (1u64 << 40) as f64;
    while frac < 0.5 {
        let x = if from_lo { lo + frac * w } else { hi - frac * w };
        if p.eval_interval(Interval::point(x)).sign().is_some() {
            return Some(x);
        }
        frac *= 2.0;
    }
    None
}

/// Coefficients of `p(t + s)` by repeated synthetic division.
fn taylor_shift(c: &[f64], s: f64) -> Vec<f64> {
    let mut a = c.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            a[j] += s * a[j + 1];
        }
    }
    a
}

fn strip_small_low_order(c: &mut Vec<f64>) {
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let eps = 64.0 * f64::EPSILON * scale;
    let lead = c.iter().position(|v| v.abs() > eps).unwrap_or(c.len());
    c.drain(..lead);
}

fn sign_variations(c: &[f64]) -> usize {
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let eps = 64.0 * f64::EPSILON * scale;
    let mut last = 0i8;
    let mut count = 0;
    for &v in c {
        if v.abs() <= eps {
            continue;
        }
        let s = if v > 0.0 { 1 } else { -1 };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_canonical_weight() {
        let w = Polynomial::new(vec![-12.0, 18.0, -6.0]);
        assert_eq!(w.derivative().coeffs(), &[18.0, -12.0]);
        assert_eq!(w.nth_derivative(3).coeffs(), &[0.0]);
    }

    #[test]
    fn sign_change_of_linear_factor() {
        let p = Polynomial::new(vec![18.0, -12.0]);
        let r = p.sign_changes(1.0, 2.0, 1e-14).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].contains(1.5));
    }

    #[test]
    fn endpoint_roots_are_not_interior_sign_changes() {
        let w = Polynomial::new(vec![-12.0, 18.0, -6.0]);
        assert!(w.sign_changes(1.0, 2.0, 1e-14).unwrap().is_empty());
    }

    #[test]
    fn double_root_is_skipped() {
        // (u - 1.5)^2
        let p = Polynomial::new(vec![2.25, -3.0, 1.0]);
        assert!(p.sign_changes(1.0, 2.0, 1e-14).unwrap().is_empty());
    }

    #[test]
    fn three_close_roots_are_separated() {
        // (u - 1.2)(u - 1.21)(u - 1.8)
        let r = [1.2, 1.21, 1.8];
        let p = Polynomial::new(vec![
            -r[0] * r[1] * r[2],
            r[0] * r[1] + r[0] * r[2] + r[1] * r[2],
            -(r[0] + r[1] + r[2]),
            1.0,
        ]);
        let found = p.sign_changes(1.0, 2.0, 1e-13).unwrap();
        assert_eq!(found.len(), 3);
        for (enc, want) in found.iter().zip(r) {
            assert!(enc.lo <= want + 1e-12 && want - 1e-12 <= enc.hi, "{enc} vs {want}");
        }
    }

    #[test]
    fn non_finite_coefficients_are_diagnosed() {
        let p = Polynomial::new(vec![1.0, f64::NAN]);
        assert!(matches!(p.sign_changes(1.0, 2.0, 1e-12), Err(Error::RootIsolation(_))));
    }

    #[test]
    fn abs_integral_over_u_matches_hand_antiderivative() {
        // |18 - 12u| / u over [1, 2], split at 3/2.
        let p = Polynomial::new(vec![18.0, -12.0]);
        let got = p.abs_integral_over_u(1.0, 2.0, 1e-14).unwrap();
        let want = (18.0 * 1.5f64.ln() - 6.0) + (6.0 - 18.0 * (4.0f64 / 3.0).ln());
        assert!(got.contains(want) || (got.mid() - want).abs() < 1e-14, "{got} vs {want}");
        assert!(got.width() < 1e-12);
    }
}
