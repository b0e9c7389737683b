//! Exact `Λ`, `ψ` and `θ` up to a fixed limit.
//!
//! Primes are stored as an odd-only bitset (bit `i` is the integer `2i + 1`).
//! Proper prime powers `p^k, k ≥ 2` are few (about `√limit / log √limit`) and
//! live in a sorted side table. `θ` is cached at every multiple of the stride,
//! so a query costs one checkpoint lookup plus a scan of at most one stride.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{precondition, Error, Result};

pub const DEFAULT_CEILING: u64 = 1 << 34;
pub const DEFAULT_STRIDE: u64 = 1 << 16;

const MAGIC: &[u8; 8] = b"RVMSIEVE";
const VERSION: u32 = 1;
/// Words per parallel sieving segment (`2^22` integers).
const SEGMENT_WORDS: usize = 1 << 15;

#[derive(Clone, Copy, Debug)]
pub struct SieveOptions {
    pub ceiling: u64,
    /// Checkpoint spacing; rounded up to a multiple of 128.
    pub stride: u64,
}

impl Default for SieveOptions {
    fn default() -> Self {
        SieveOptions { ceiling: DEFAULT_CEILING, stride: DEFAULT_STRIDE }
    }
}

/// Compensated (Neumaier) summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new(start: f64) -> Self {
        KahanSum { sum: start, comp: 0.0 }
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Clone, Debug)]
pub struct ChebyshevTable {
    limit: u64,
    stride: u64,
    odd_primes: Vec<u64>,
    /// `theta_cp[b] = Σ_{p < b·stride} log p`.
    theta_cp: Vec<f64>,
    /// Proper prime powers with their base, ascending.
    powers: Vec<(u64, u64)>,
    /// `powers_prefix[i] = Σ_{j < i} log base_j`.
    powers_prefix: Vec<f64>,
}

fn small_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut is = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if is[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                is[j] = false;
                j += i;
            }
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

impl ChebyshevTable {
    pub fn new(limit: u64) -> Result<Self> {
        ChebyshevTable::with_options(limit, &SieveOptions::default())
    }

    pub fn with_options(limit: u64, opt: &SieveOptions) -> Result<Self> {
        if limit > opt.ceiling {
            return Err(Error::Resource(format!("sieve limit {limit} exceeds the ceiling {}", opt.ceiling)));
        }
        let stride = opt.stride.max(128).div_ceil(128) * 128;
        let words = (limit / 128 + 1) as usize;
        let mut bits = vec![u64::MAX; words];
        let base: Vec<u64> = small_primes(isqrt(limit)).into_iter().skip(1).collect();

        bits.par_chunks_mut(SEGMENT_WORDS).enumerate().for_each(|(seg, chunk)| {
            let lo = (seg * SEGMENT_WORDS) as u64 * 128;
            let hi = lo + chunk.len() as u64 * 128;
            for &p in &base {
                let mut m = (p * p).max(lo.div_ceil(p) * p);
                if m % 2 == 0 {
                    m += p;
                }
                while m < hi {
                    let i = ((m - lo) / 2) as usize;
                    chunk[i / 64] &= !(1u64 << (i % 64));
                    m += 2 * p;
                }
            }
        });
        bits[0] &= !1;
        let last_bit = (limit.saturating_sub(1) / 2) as usize;
        if limit < 1 {
            bits[0] = 0;
        } else {
            let w = last_bit / 64;
            let keep = last_bit % 64;
            if keep < 63 {
                bits[w] &= (1u64 << (keep + 1)) - 1;
            }
            for v in bits.iter_mut().skip(w + 1) {
                *v = 0;
            }
        }
        Ok(ChebyshevTable::from_bits(limit, stride, bits))
    }

    fn from_bits(limit: u64, stride: u64, odd_primes: Vec<u64>) -> Self {
        let words_per_block = (stride / 128) as usize;
        let blocks = (limit / stride + 1) as usize;
        let sums: Vec<KahanSum> = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut acc = KahanSum::default();
                if b == 0 && limit >= 2 {
                    acc.add(std::f64::consts::LN_2);
                }
                let w0 = b * words_per_block;
                let w1 = ((b + 1) * words_per_block).min(odd_primes.len());
                for w in w0..w1 {
                    let mut word = odd_primes[w];
                    while word != 0 {
                        let i = word.trailing_zeros() as u64;
                        acc.add((((128 * w as u64) + 2 * i + 1) as f64).ln());
                        word &= word - 1;
                    }
                }
                acc
            })
            .collect();
        let mut theta_cp = Vec::with_capacity(blocks + 1);
        let mut run = KahanSum::default();
        theta_cp.push(0.0);
        for s in &sums {
            run.add(s.sum);
            run.add(s.comp);
            theta_cp.push(run.value());
        }

        let mut powers = Vec::new();
        for p in small_primes(isqrt(limit)) {
            let mut q = p * p;
            loop {
                powers.push((q, p));
                match q.checked_mul(p) {
                    Some(n) if n <= limit => q = n,
                    _ => break,
                }
            }
        }
        powers.sort_unstable();
        let mut powers_prefix = Vec::with_capacity(powers.len() + 1);
        let mut acc = KahanSum::default();
        powers_prefix.push(0.0);
        for &(_, p) in &powers {
            acc.add((p as f64).ln());
            powers_prefix.push(acc.value());
        }
        ChebyshevTable { limit, stride, odd_primes, theta_cp, powers, powers_prefix }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn stride(&self) -> u64 {
        self.stride
    }

    fn check(&self, n: u64) -> Result<()> {
        if n > self.limit {
            return Err(precondition(format!("{n} exceeds the sieve limit {}", self.limit)));
        }
        Ok(())
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n == 2 {
            return true;
        }
        if n.is_multiple_of(2) || n > self.limit {
            return false;
        }
        let i = (n / 2) as usize;
        self.odd_primes[i / 64] >> (i % 64) & 1 == 1
    }

    /// `Λ(n)`, or 0 beyond the limit.
    pub fn von_mangoldt(&self, n: u64) -> f64 {
        if n < 2 || n > self.limit {
            return 0.0;
        }
        if self.is_prime(n) {
            return (n as f64).ln();
        }
        match self.powers.binary_search_by_key(&n, |&(q, _)| q) {
            Ok(i) => (self.powers[i].1 as f64).ln(),
            Err(_) => 0.0,
        }
    }

    fn theta_int(&self, n: u64) -> f64 {
        let b = (n / self.stride) as usize;
        let mut acc = KahanSum::new(self.theta_cp[b]);
        let start = b as u64 * self.stride;
        if b == 0 && n >= 2 {
            acc.add(std::f64::consts::LN_2);
        }
        let w0 = (start / 128) as usize;
        let w1 = (n / 128) as usize;
        for w in w0..=w1.min(self.odd_primes.len() - 1) {
            let mut word = self.odd_primes[w];
            if w == w1 {
                let bit = ((n % 128) / 2) as u32;
                // Keep bits for 2i+1 <= n.
                let keep = if n % 2 == 1 { bit + 1 } else { bit };
                word &= if keep >= 64 { u64::MAX } else { (1u64 << keep) - 1 };
            }
            while word != 0 {
                let i = word.trailing_zeros() as u64;
                acc.add(((128 * w as u64 + 2 * i + 1) as f64).ln());
                word &= word - 1;
            }
        }
        acc.value()
    }

    fn powers_int(&self, n: u64) -> f64 {
        let k = self.powers.partition_point(|&(q, _)| q <= n);
        self.powers_prefix[k]
    }

    /// `θ(x) = Σ_{p ≤ x} log p`.
    pub fn theta(&self, x: f64) -> Result<f64> {
        if x < 2.0 {
            return Ok(0.0);
        }
        let n = x.floor() as u64;
        self.check(n)?;
        Ok(self.theta_int(n))
    }

    /// `ψ(x) = Σ_{n ≤ x} Λ(n)`.
    pub fn psi(&self, x: f64) -> Result<f64> {
        if x < 2.0 {
            return Ok(0.0);
        }
        let n = x.floor() as u64;
        self.check(n)?;
        Ok(self.theta_int(n) + self.powers_int(n))
    }

    /// `Σ_{a ≤ n ≤ b} Λ(n)` summed term by term.
    pub fn lambda_mass(&self, a: f64, b: f64) -> Result<f64> {
        let lo = a.ceil().max(1.0) as u64;
        let hi = b.floor();
        if hi < lo as f64 {
            return Ok(0.0);
        }
        let hi = hi as u64;
        self.check(hi)?;
        let mut acc = KahanSum::default();
        for n in lo..=hi {
            let v = self.von_mangoldt(n);
            if v != 0.0 {
                acc.add(v);
            }
        }
        Ok(acc.value())
    }

    /// Primes in `[a, b]`, ascending.
    pub fn primes_between(&self, a: u64, b: u64) -> Vec<u64> {
        let b = b.min(self.limit);
        let mut out = Vec::new();
        if a <= 2 && b >= 2 {
            out.push(2);
        }
        let mut n = a.max(3) | 1;
        while n <= b {
            if self.is_prime(n) {
                out.push(n);
            }
            n += 2;
        }
        out
    }

    /// Writes the table in the versioned cache format.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::with_capacity(32 + 8 * (self.odd_primes.len() + self.theta_cp.len()));
        buf.extend_from_slice(MAGIC);
        buf.extend_from_slice(&VERSION.to_le_bytes());
        buf.extend_from_slice(&self.limit.to_le_bytes());
        buf.extend_from_slice(&self.stride.to_le_bytes());
        buf.extend_from_slice(&(self.odd_primes.len() as u64).to_le_bytes());
        for w in &self.odd_primes {
            buf.extend_from_slice(&w.to_le_bytes());
        }
        let digest = Sha256::digest(&buf);
        buf.extend_from_slice(&digest);
        let mut f = fs::File::create(path)?;
        f.write_all(&buf)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut buf = Vec::new();
        fs::File::open(path)?.read_to_end(&mut buf)?;
        ChebyshevTable::decode(&buf)
    }

    fn decode(buf: &[u8]) -> Result<Self> {
        let err = |m: &str| Error::Cache(m.to_string());
        if buf.len() < 36 + 32 {
            return Err(err("file too short"));
        }
        let (body, digest) = buf.split_at(buf.len() - 32);
        if body[..8] != MAGIC[..] {
            return Err(err("bad magic bytes"));
        }
        if Sha256::digest(body)[..] != digest[..] {
            return Err(err("checksum mismatch"));
        }
        let u64_at = |o: usize| u64::from_le_bytes(body[o..o + 8].try_into().expect("8 bytes"));
        let version = u32::from_le_bytes(body[8..12].try_into().expect("4 bytes"));
        if version != VERSION {
            return Err(err(&format!("unsupported version {version}")));
        }
        let limit = u64_at(12);
        let stride = u64_at(20);
        let words = u64_at(28) as usize;
        if stride == 0 || stride % 128 != 0 || words != (limit / 128 + 1) as usize || body.len() != 36 + 8 * words {
            return Err(err("inconsistent header"));
        }
        let bits = (0..words).map(|i| u64_at(36 + 8 * i)).collect();
        Ok(ChebyshevTable::from_bits(limit, stride, bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let t = ChebyshevTable::new(1000).unwrap();
        let want_psi = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((t.psi(10.0).unwrap() - want_psi).abs() < 1e-12);
        assert!((t.theta(10.0).unwrap() - 210f64.ln()).abs() < 1e-12);
        assert_eq!(t.psi(1.0).unwrap(), 0.0);
        assert!((t.psi(2.5).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(t.von_mangoldt(8), 2f64.ln());
        assert_eq!(t.von_mangoldt(12), 0.0);
        assert!(t.psi(1001.0).is_err());
    }

    #[test]
    fn prime_count_matches_known_values() {
        let t = ChebyshevTable::with_options(1_000_000, &SieveOptions { stride: 256, ..Default::default() }).unwrap();
        assert_eq!(t.primes_between(0, 1_000_000).len(), 78_498);
        assert_eq!(t.primes_between(0, 100).len(), 25);
    }

    #[test]
    fn queries_agree_with_direct_summation() {
        let t = ChebyshevTable::with_options(50_000, &SieveOptions { stride: 1024, ..Default::default() }).unwrap();
        let mut psi = KahanSum::default();
        let mut theta = KahanSum::default();
        for n in 1..=50_000u64 {
            let l = t.von_mangoldt(n);
            psi.add(l);
            if t.is_prime(n) {
                theta.add(l);
            }
            if n % 977 == 0 || n == 50_000 {
                assert!((t.psi(n as f64).unwrap() - psi.value()).abs() < 1e-9);
                assert!((t.theta(n as f64).unwrap() - theta.value()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        let o = SieveOptions { ceiling: 100, ..Default::default() };
        assert!(matches!(ChebyshevTable::with_options(101, &o), Err(Error::Resource(_))));
    }

    #[test]
    fn cache_round_trip_and_corruption() {
        let t = ChebyshevTable::new(100_000).unwrap();
        let dir = std::env::temp_dir().join(format!("rvm-sieve-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t.bin");
        t.save(&path).unwrap();
        let u = ChebyshevTable::load(&path).unwrap();
        assert_eq!(t.psi(99_999.0).unwrap(), u.psi(99_999.0).unwrap());
        let mut raw = fs::read(&path).unwrap();
        raw[40] ^= 1;
        assert!(matches!(ChebyshevTable::decode(&raw), Err(Error::Cache(_))));
        raw[0] = b'X';
        assert!(matches!(ChebyshevTable::decode(&raw), Err(Error::Cache(_))));
        fs::remove_dir_all(&dir).ok();
    }
}
