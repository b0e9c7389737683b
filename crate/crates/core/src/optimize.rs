//! One-dimensional minimization: golden-section search guarded by a sampled
//! unimodality check, with a grid scan when the check fails.

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMethod {
    Golden,
    GridFallback,
    Degenerate,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchSettings {
    /// Initial samples used for the unimodality check.
    pub samples: usize,
    /// Points of the fallback grid.
    pub grid: usize,
    /// Absolute tolerance on the abscissa (in the search coordinate).
    pub x_tol: f64,
    /// Search in `ln x` rather than `x`; needs a positive bracket.
    pub log_scale: bool,
}

impl Default for SearchSettings {
    fn default() -> Self {
        SearchSettings { samples: 24, grid: 240, x_tol: 1e-7, log_scale: false }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub method: SearchMethod,
    pub evaluations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// True when the samples fall and then rise, up to relative slack `eps`.
pub fn is_unimodal(values: &[f64], eps: f64) -> bool {
    let mut rising = false;
    for w in values.windows(2) {
        let slack = eps * w[0].abs().max(w[1].abs());
        if w[1] > w[0] + slack {
            rising = true;
        } else if w[1] < w[0] - slack && rising {
            return false;
        }
    }
    true
}

/// Golden-section search for a minimum of `f` on `[a, b]`.
pub fn golden_section<F: FnMut(f64) -> Result<f64>>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64, usize)> {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut n = 2;
    while (b - a).abs() > tol && n < 400 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
        n += 1;
    }
    Ok(if fc <= fd { (c, fc, n) } else { (d, fd, n) })
}

/// Minimizes `f` over `[lo, hi]`. Always terminates; the method used is
/// reported in the result.
pub fn minimize<F: FnMut(f64) -> Result<f64>>(mut f: F, lo: f64, hi: f64, s: &SearchSettings) -> Result<Minimum> {
    if lo == hi {
        let value = f(lo)?;
        return Ok(Minimum { x: lo, value, method: SearchMethod::Degenerate, evaluations: 1 });
    }
    let (to, from): (fn(f64) -> f64, fn(f64) -> f64) =
        if s.log_scale { (f64::ln, f64::exp) } else { (|v| v, |v| v) };
    let (a, b) = (to(lo), to(hi));
    let mut g = |t: f64| f(from(t).clamp(lo, hi));

    let sample = |n: usize| (0..n).map(move |i| a + (b - a) * i as f64 / (n - 1) as f64);
    let mut evals = 0;
    let mut pts = Vec::with_capacity(s.samples);
    for t in sample(s.samples.max(3)) {
        pts.push((t, g(t)?));
        evals += 1;
    }
    let values: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let method = if is_unimodal(&values, 1e-12) {
        SearchMethod::Golden
    } else {
        pts.clear();
        for t in sample(s.grid.max(3)) {
            pts.push((t, g(t)?));
            evals += 1;
        }
        SearchMethod::GridFallback
    };
    let i = pts
        .iter()
        .enumerate()
        .min_by(|x, y| x.1 .1.total_cmp(&y.1 .1))
        .map(|(i, _)| i)
        .expect("non-empty samples");
    let left = pts[i.saturating_sub(1)].0;
    let right = pts[(i + 1).min(pts.len() - 1)].0;
    let (t, v, n) = golden_section(&mut g, left, right, s.x_tol)?;
    evals += n;
    let (t, v) = if v <= pts[i].1 { (t, v) } else { pts[i] };
    Ok(Minimum { x: from(t).clamp(lo, hi), value: v, method, evaluations: evals })
}
