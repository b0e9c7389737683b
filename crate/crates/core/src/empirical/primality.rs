//! Primality testing for arbitrary-size integers.
//!
//! Below 2⁶⁴ Miller–Rabin with the first twelve prime bases is a proof.
//! Above, a candidate must survive trial division, a strong probable-prime
//! test to base 2 and a strong Lucas test with Selfridge parameters (the
//! Baillie–PSW combination, for which no counterexample is known).

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestPolicy {
    /// The number is below the trial-division bound and was factored directly.
    TrialDivision,
    /// Deterministic Miller–Rabin, bases 2 to 37.
    MillerRabin64,
    /// Trial division, strong base-2 test and strong Lucas test.
    BailliePsw,
}

impl fmt::Display for TestPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestPolicy::TrialDivision => "trial-division",
            TestPolicy::MillerRabin64 => "mr64-bases-2..37",
            TestPolicy::BailliePsw => "bpsw(mr2+strong-lucas-selfridge)",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certification {
    pub prime: bool,
    pub policy: TestPolicy,
}

pub(crate) const TRIAL_BOUND: u32 = 2000;

pub(crate) fn small_primes() -> &'static [u32] {
    static P: OnceLock<Vec<u32>> = OnceLock::new();
    P.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut comp = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !comp[i] {
                out.push(i as u32);
                for j in (i * i..=n).step_by(i) {
                    comp[j] = true;
                }
            }
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic for every `n < 2⁶⁴`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Strong probable-prime test to base `a` for odd `n > 2`.
pub fn strong_probable_prime(n: &BigUint, a: u32) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = BigUint::from(a).modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

fn jacobi_u64(mut a: u64, mut n: u64) -> i32 {
    let mut t = 1;
    a %= n;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Jacobi symbol `(a/n)` for small `a` and odd `n`.
fn jacobi_small(a: i64, n: &BigUint) -> i32 {
    let n_mod8 = (n % 8u32).to_u32().expect("small");
    let mut t = 1;
    if a < 0 && n_mod8 % 4 == 3 {
        t = -t;
    }
    let mut a = a.unsigned_abs();
    if a == 0 {
        return if n.is_one() { 1 } else { 0 };
    }
    while a.is_multiple_of(2) {
        a /= 2;
        if n_mod8 == 3 || n_mod8 == 5 {
            t = -t;
        }
    }
    if a == 1 {
        return t;
    }
    if a % 4 == 3 && n_mod8 % 4 == 3 {
        t = -t;
    }
    let r = (n % a).to_u64().expect("small");
    t * jacobi_u64(r, a)
}

fn to_residue(v: i64, n: &BigUint) -> BigUint {
    let m = BigUint::from(v.unsigned_abs()) % n;
    if v < 0 && !m.is_zero() {
        n - m
    } else {
        m
    }
}

fn half_mod(v: BigUint, n: &BigUint) -> BigUint {
    if v.is_odd() {
        (v + n) >> 1
    } else {
        v >> 1
    }
}

/// Strong Lucas probable-prime test with Selfridge's choice of `D`, `P = 1`,
/// `Q = (1 - D)/4`, for odd `n > 2` that is not a perfect square.
pub fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let root = n.sqrt();
    if &root * &root == *n {
        return false;
    }
    let mut d: i64 = 5;
    loop {
        match jacobi_small(d, n) {
            -1 => break,
            0 if BigUint::from(d.unsigned_abs()) != *n => return false,
            _ => {}
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let q = (1 - d) / 4;
    let dm = to_residue(d, n);
    let qm = to_residue(q, n);
    let two = BigUint::from(2u32);

    let np1 = n + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    let bits = k.bits();
    let mut u = BigUint::one();
    let mut v = BigUint::one();
    let mut qk = qm.clone();
    for i in (0..bits - 1).rev() {
        u = (&u * &v) % n;
        v = (&v * &v + n * &two - (&qk * &two) % n) % n;
        qk = (&qk * &qk) % n;
        if k.bit(i) {
            let nu = half_mod(&u + &v, n);
            let nv = half_mod((&dm * &u + &v) % n, n);
            u = nu % n;
            v = nv % n;
            qk = (&qk * &qm) % n;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v + n * &two - (&qk * &two) % n) % n;
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk) % n;
    }
    false
}

pub fn is_prime(n: &BigUint) -> Certification {
    if let Some(v) = n.to_u64() {
        if v <= TRIAL_BOUND as u64 {
            return Certification { prime: small_primes().binary_search(&(v as u32)).is_ok(), policy: TestPolicy::TrialDivision };
        }
        return Certification { prime: is_prime_u64(v), policy: TestPolicy::MillerRabin64 };
    }
    let policy = TestPolicy::BailliePsw;
    for &p in small_primes() {
        if (n % p).is_zero() {
            return Certification { prime: false, policy };
        }
    }
    let prime = strong_probable_prime(n, 2) && strong_lucas_probable_prime(n);
    Certification { prime, policy }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn small_range_agrees_with_sieve() {
        let table = crate::arith::ChebyshevTable::new(200_000).unwrap();
        for n in 0..200_000u64 {
            assert_eq!(is_prime_u64(n), table.is_prime(n), "{n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_are_rejected() {
        // 3215031751 is a strong pseudoprime to bases 2, 3, 5, 7.
        assert!(!is_prime_u64(3_215_031_751));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        // 2047 = 23·89 is a strong base-2 pseudoprime; the Lucas test rejects it.
        assert!(strong_probable_prime(&BigUint::from(2047u32), 2));
        assert!(!strong_lucas_probable_prime(&BigUint::from(2047u32)));
        // 5459 = 53·103 and 5777 = 53·109 are strong Lucas pseudoprimes; base 2 rejects them.
        for n in [5459u32, 5777] {
            assert!(strong_lucas_probable_prime(&BigUint::from(n)), "{n}");
            assert!(!strong_probable_prime(&BigUint::from(n), 2), "{n}");
        }
    }

    #[test]
    fn lucas_agrees_on_primes() {
        for &p in &small_primes()[1..] {
            if p > 5 {
                assert!(strong_lucas_probable_prime(&BigUint::from(p)), "{p}");
            }
        }
    }

    #[test]
    fn large_known_values() {
        // 2^127 - 1 and 2^89 - 1 are Mersenne primes; 2^128 + 1 is composite.
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert_eq!(is_prime(&m127), Certification { prime: true, policy: TestPolicy::BailliePsw });
        assert!(is_prime(&((BigUint::one() << 89u32) - 1u32)).prime);
        assert!(!is_prime(&((BigUint::one() << 128u32) + 1u32)).prime);
        // The two smallest primes above 10^39, and their products.
        let p = big("1000000000000000000000000000000000000003");
        let q = big("1000000000000000000000000000000000000037");
        assert!(is_prime(&p).prime && is_prime(&q).prime);
        assert!(!is_prime(&(&p * &q)).prime);
        assert!(!is_prime(&(&p * &p)).prime);
    }
}
