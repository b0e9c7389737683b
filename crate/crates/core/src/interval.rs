//! Closed real intervals with outward rounding.
//!
//! Every arithmetic result is widened by one ulp on each side, which is enough
//! for the correctly rounded IEEE operations. Library transcendental functions
//! are not guaranteed to be correctly rounded, so their results are widened by
//! [`LIBM_ULPS`] ulps instead.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Widening applied to `ln`, `exp`, `atan`, `powf` and friends.
pub const LIBM_ULPS: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn down(x: f64, n: u32) -> f64 {
    (0..n).fold(x, |v, _| v.next_down())
}

fn up(x: f64, n: u32) -> f64 {
    (0..n).fold(x, |v, _| v.next_up())
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Degenerate interval holding an exactly representable value.
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Interval guaranteed to contain a real constant whose nearest double is `x`.
    pub fn around(x: f64) -> Self {
        Interval { lo: x.next_down(), hi: x.next_up() }
    }

    /// `x` widened by `ulps` on each side, for values computed by a few roundings.
    pub fn widened(x: f64, ulps: u32) -> Self {
        Interval { lo: down(x, ulps), hi: up(x, ulps) }
    }

    /// `ln(e^a + e^b)`, monotone in both arguments.
    pub fn log_add_exp(&self, other: Interval) -> Interval {
        let f = |a: f64, b: f64| {
            let m = a.max(b);
            m + ((a - m).exp() + (b - m).exp()).ln()
        };
        Interval { lo: down(f(self.lo, other.lo), 2 * LIBM_ULPS), hi: up(f(self.hi, other.hi), 2 * LIBM_ULPS) }
    }

    pub fn pi() -> Self {
        Interval::around(std::f64::consts::PI)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_within(&self, lo: f64, hi: f64) -> bool {
        lo <= self.lo && self.hi <= hi
    }

    pub fn hull(&self, other: Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Sign of every point in the interval, if it is constant.
    pub fn sign(&self) -> Option<i8> {
        if self.lo > 0.0 {
            Some(1)
        } else if self.hi < 0.0 {
            Some(-1)
        } else {
            None
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            Interval { lo: -self.hi, hi: -self.lo }
        } else {
            Interval { lo: 0.0, hi: self.hi.max(-self.lo) }
        }
    }

    /// Integer power by repeated multiplication (tight for even powers of
    /// sign-changing intervals).
    pub fn powi(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::point(1.0);
        }
        let base = if n.is_multiple_of(2) { self.abs() } else { *self };
        let mut acc = base;
        for _ in 1..n {
            acc = acc * base;
        }
        acc
    }

    pub fn ln(&self) -> Interval {
        assert!(self.lo > 0.0, "ln of non-positive interval");
        Interval { lo: down(self.lo.ln(), LIBM_ULPS), hi: up(self.hi.ln(), LIBM_ULPS) }
    }

    pub fn exp(&self) -> Interval {
        Interval {
            lo: down(self.lo.exp(), LIBM_ULPS).max(0.0),
            hi: up(self.hi.exp(), LIBM_ULPS),
        }
    }

    pub fn sqrt(&self) -> Interval {
        assert!(self.lo >= 0.0, "sqrt of negative interval");
        Interval { lo: down(self.lo.sqrt(), 1).max(0.0), hi: up(self.hi.sqrt(), 1) }
    }

    pub fn atan(&self) -> Interval {
        Interval { lo: down(self.lo.atan(), LIBM_ULPS), hi: up(self.hi.atan(), LIBM_ULPS) }
    }

    /// `self^p` for a positive base and real exponent.
    pub fn powf(&self, p: f64) -> Interval {
        assert!(self.lo > 0.0, "powf of non-positive interval");
        (self.ln() * Interval::point(p)).exp()
    }

    pub fn recip(&self) -> Interval {
        Interval::point(1.0) / *self
    }

    pub fn max(&self, other: Interval) -> Interval {
        Interval { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn min(&self, other: Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.min(other.hi) }
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval { lo: down(self.lo + rhs.lo, 1), hi: up(self.hi + rhs.hi, 1) }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval { lo: down(self.lo - rhs.hi, 1), hi: up(self.hi - rhs.lo, 1) }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let c = [self.lo * rhs.lo, self.lo * rhs.hi, self.hi * rhs.lo, self.hi * rhs.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo: down(lo, 1), hi: up(hi, 1) }
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        assert!(rhs.lo > 0.0 || rhs.hi < 0.0, "division by interval containing zero");
        let c = [self.lo / rhs.lo, self.lo / rhs.hi, self.hi / rhs.lo, self.hi / rhs.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo: down(lo, 1), hi: up(hi, 1) }
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<f64> for Interval {
            type Output = Interval;
            fn $method(self, rhs: f64) -> Interval {
                $tr::$method(self, Interval::point(rhs))
            }
        }
        impl $tr<Interval> for f64 {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                $tr::$method(Interval::point(self), rhs)
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn third_is_enclosed() {
        let t = Interval::point(1.0) / Interval::point(3.0);
        assert!(t.lo < t.hi);
        assert!((t * 3.0).contains(1.0));
    }

    #[test]
    fn abs_of_straddling_interval() {
        let a = Interval::new(-2.0, 1.0).abs();
        assert_eq!(a, Interval::new(0.0, 2.0));
    }

    proptest! {
        #[test]
        fn arithmetic_encloses_point_results(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            let (ia, ib) = (Interval::point(a), Interval::point(b));
            prop_assert!((ia + ib).contains(a + b));
            prop_assert!((ia - ib).contains(a - b));
            prop_assert!((ia * ib).contains(a * b));
            if b != 0.0 {
                prop_assert!((ia / ib).contains(a / b));
            }
        }

        #[test]
        fn ln_exp_round_trip_is_enclosed(x in 1e-3f64..1e3) {
            let e = Interval::point(x).ln().exp();
            prop_assert!(e.contains(x));
        }
    }
}
