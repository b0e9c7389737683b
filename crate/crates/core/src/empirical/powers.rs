//! Primes strictly between `n^m` and `(n+1)^m`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::primality::{is_prime, small_primes, TestPolicy};
use crate::error::{precondition, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerIntervalWitness {
    pub n: u64,
    pub m: u32,
    pub p: BigUint,
    /// `p - n^m`.
    pub offset: u64,
    pub policy: TestPolicy,
}

impl PowerIntervalWitness {
    pub fn digits(&self) -> usize {
        self.p.to_str_radix(10).len()
    }

    /// Re-checks `n^m < p < (n+1)^m` exactly and reruns the primality battery.
    pub fn verify(&self) -> bool {
        let lo = BigUint::from(self.n).pow(self.m);
        let hi = BigUint::from(self.n + 1).pow(self.m);
        lo < self.p && self.p < hi && &lo + self.offset == self.p && is_prime(&self.p).prime
    }
}

/// The first prime above `n^m`, provided it lies below `(n+1)^m`.
///
/// Candidates are screened by their residues modulo the small primes before
/// the full test.
pub fn find_prime_in_power_interval(n: u64, m: u32) -> Result<PowerIntervalWitness> {
    if n < 1 || m < 2 {
        return Err(precondition(format!("need n >= 1 and m >= 2, got n = {n}, m = {m}")));
    }
    let lo = BigUint::from(n).pow(m);
    let hi = BigUint::from(n + 1).pow(m);
    let width = (&hi - &lo).to_u64().unwrap_or(u64::MAX);
    let primes = small_primes();
    let residues: Vec<u64> = primes.iter().map(|&p| (&lo % p).to_u64().expect("small")).collect();
    let lo_odd = lo.bit(0);
    // Below this every candidate is tested directly, since it may equal a screening prime.
    let direct = lo.to_u64().map_or(0, |l| (super::primality::TRIAL_BOUND as u64).saturating_sub(l));
    for k in 1..width {
        let even = lo_odd == (k % 2 == 1);
        if even && !(lo.to_u64().is_some_and(|l| l + k == 2)) {
            continue;
        }
        if k > direct && residues.iter().zip(primes).any(|(&r, &p)| (r + k) % p as u64 == 0) {
            continue;
        }
        let c = &lo + k;
        let cert = is_prime(&c);
        if cert.prime {
            return Ok(PowerIntervalWitness { n, m, p: c, offset: k, policy: cert.policy });
        }
    }
    Err(Error::SearchExhausted(format!("no prime in ({n}^{m}, {}^{m})", n + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_witnesses_match_reference_offsets() {
        // Offsets of the first prime above n^90 for n = 1..=30, from an
        // independent big-integer next-prime routine.
        let want = [
            1u64, 133, 44, 15, 138, 385, 354, 127, 250, 289, 16, 143, 220, 393, 446, 105, 82, 23, 100, 291, 38, 163,
            304, 163, 66, 163, 344, 85, 16, 283,
        ];
        for (i, &o) in want.iter().enumerate() {
            let w = find_prime_in_power_interval(i as u64 + 1, 90).unwrap();
            assert_eq!(w.offset, o, "n = {}", i + 1);
            assert!(w.verify());
        }
    }

    #[test]
    fn small_cases() {
        let w = find_prime_in_power_interval(1, 90).unwrap();
        assert_eq!(w.p, BigUint::from(2u32));
        let w = find_prime_in_power_interval(2, 2).unwrap();
        assert_eq!(w.p, BigUint::from(5u32));
        let w = find_prime_in_power_interval(10, 90).unwrap();
        assert_eq!((w.offset, w.digits()), (289, 91));
        assert!(find_prime_in_power_interval(0, 90).is_err());
        assert!(find_prime_in_power_interval(3, 1).is_err());
    }

    #[test]
    fn tampered_witness_fails_verification() {
        let mut w = find_prime_in_power_interval(3, 90).unwrap();
        w.offset += 2;
        w.p += 2u32;
        assert!(!w.verify());
    }
}
