//! Ordinates of nontrivial zeros of `ζ`, read from plain text.

use std::io::BufRead;

use crate::error::{precondition, Error, Result};

/// Zeros `1/2 + iγ` with `0 < γ₁ < γ₂ < …`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZerosDataset {
    gammas: Vec<f64>,
    /// Every zero up to this height is present.
    complete_to: f64,
}

/// Height below which every zero is known to lie on the critical line.
pub const RH_HEIGHT: f64 = 3e12;

impl ZerosDataset {
    pub fn new(gammas: Vec<f64>) -> Result<Self> {
        for (i, w) in gammas.windows(2).enumerate() {
            if !(w[0] < w[1]) {
                return Err(Error::Parse { line: i + 2, message: format!("ordinates must increase strictly: {} then {}", w[0], w[1]) });
            }
        }
        if let Some(&g) = gammas.first() {
            if !(g > 0.0) {
                return Err(Error::Parse { line: 1, message: format!("ordinates must be positive, got {g}") });
            }
        }
        if let Some(&g) = gammas.last() {
            if !(g <= RH_HEIGHT) {
                return Err(precondition(format!("ordinate {g} lies above the RH verification height {RH_HEIGHT}")));
            }
        }
        let complete_to = gammas.last().copied().unwrap_or(0.0);
        Ok(ZerosDataset { gammas, complete_to })
    }

    /// The zeros with `γ ≤ t`, complete up to `t` when `t` is below the current height.
    pub fn truncated(&self, t: f64) -> Self {
        let gammas = self.gammas[..self.count_upto(t)].to_vec();
        ZerosDataset { gammas, complete_to: t.min(self.complete_to) }
    }

    /// The 1526 zeros below 2010 shipped with the crate.
    pub fn bundled() -> Self {
        load_zeros(include_str!("../../data/zeros_2010.txt").as_bytes()).expect("bundled zeros parse")
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// Height up to which the dataset is complete (the largest ordinate unless truncated).
    pub fn height(&self) -> f64 {
        self.complete_to
    }

    /// Number of ordinates `≤ t`.
    pub fn count_upto(&self, t: f64) -> usize {
        self.gammas.partition_point(|&g| g <= t)
    }
}

/// One decimal ordinate per line; blank lines and `#` comments are skipped.
pub fn load_zeros<R: BufRead>(source: R) -> Result<ZerosDataset> {
    let mut gammas: Vec<f64> = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let s = line.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let g: f64 = s.parse().map_err(|e| Error::Parse { line: i + 1, message: format!("bad ordinate `{s}`: {e}") })?;
        if !g.is_finite() || g <= 0.0 {
            return Err(Error::Parse { line: i + 1, message: format!("ordinate must be positive and finite, got `{s}`") });
        }
        if let Some(&prev) = gammas.last() {
            if !(g > prev) {
                return Err(Error::Parse { line: i + 1, message: format!("ordinates must increase strictly: {prev} then {g}") });
            }
        }
        gammas.push(g);
    }
    ZerosDataset::new(gammas)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_inputs() {
        let d = load_zeros("2.5\n3.5".as_bytes()).unwrap();
        assert_eq!(d.gammas(), &[2.5, 3.5]);
        assert!(load_zeros("".as_bytes()).unwrap().is_empty());
        assert_eq!(load_zeros("# header\n\n1\n".as_bytes()).unwrap().len(), 1);
    }

    #[test]
    fn ordering_errors_carry_line() {
        assert!(matches!(load_zeros("3.5\n2.5\n".as_bytes()), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load_zeros("1\n1\n".as_bytes()), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load_zeros("1\nx\n".as_bytes()), Err(Error::Parse { line: 2, .. })));
        assert!(load_zeros("4e12\n".as_bytes()).is_err());
    }

    #[test]
    fn bundled_table() {
        let d = ZerosDataset::bundled();
        assert_eq!(d.len(), 1526);
        assert!((d.gammas()[0] - 14.134725).abs() < 1e-6);
        assert!(d.height() > 2000.0 && d.height() < 2010.0);
        assert_eq!(d.count_upto(100.0), 29);
        let t = d.truncated(100.0);
        assert_eq!((t.len(), t.height()), (29, 100.0));
        assert_eq!(d.truncated(1e4).height(), d.height());
    }
}
