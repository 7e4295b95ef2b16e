use std::sync::OnceLock;

use crate::error::{domain, Result};

/// Primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    pub limit: u64,
    pub primes: Vec<u64>,
}

impl PrimeTable {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes in the closed interval `[lo, hi]`.
    pub fn range(&self, lo: u64, hi: u64) -> &[u64] {
        let a = self.primes.partition_point(|&p| p < lo);
        let b = self.primes.partition_point(|&p| p <= hi);
        if a >= b {
            &[]
        } else {
            &self.primes[a..b]
        }
    }
}

/// Sieve of Eratosthenes over odd numbers.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return domain(format!("sieve limit {limit} < 2"));
    }
    if limit > 4_000_000_000 {
        return domain(format!("sieve limit {limit} exceeds 4e9"));
    }
    let n = limit as usize;
    // index i represents 2i+1
    let half = n / 2 + 1;
    let mut composite = vec![false; half];
    composite[0] = true;
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(estimate_count(limit));
    primes.push(2);
    for (k, &c) in composite.iter().enumerate() {
        let v = 2 * k + 1;
        if !c && v <= n {
            primes.push(v as u64);
        }
    }
    Ok(PrimeTable { limit, primes })
}

fn estimate_count(limit: u64) -> usize {
    let x = limit as f64;
    (1.26 * x / x.ln().max(1.0)) as usize + 16
}

/// Primes up to one million, built once and shared.
pub(crate) fn small_primes() -> &'static [u64] {
    static TABLE: OnceLock<PrimeTable> = OnceLock::new();
    &TABLE
        .get_or_init(|| sieve_primes(1_000_000).expect("fixed limit"))
        .primes
}

/// Primes in `[lo, hi]`, using the shared table when possible.
pub fn primes_between(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if hi < 2 || hi < lo {
        return Ok(Vec::new());
    }
    if hi <= 1_000_000 {
        let sp = small_primes();
        let a = sp.partition_point(|&p| p < lo);
        let b = sp.partition_point(|&p| p <= hi);
        return Ok(sp[a..b].to_vec());
    }
    Ok(sieve_primes(hi)?.range(lo, hi).to_vec())
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

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The `k`-th prime, 1-based.
pub fn nth_prime(k: usize) -> Result<u64> {
    if k == 0 {
        return domain("nth_prime is 1-based");
    }
    small_primes()
        .get(k - 1)
        .copied()
        .ok_or_else(|| crate::Error::Unsupported(format!("prime index {k} beyond table")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_primes() {
        let t = sieve_primes(30).unwrap();
        assert_eq!(t.primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn counts() {
        assert_eq!(sieve_primes(1_000_000).unwrap().len(), 78_498);
        assert_eq!(sieve_primes(2).unwrap().primes, vec![2]);
        assert_eq!(sieve_primes(3).unwrap().primes, vec![2, 3]);
    }

    #[test]
    fn rejects_tiny_limit() {
        assert!(sieve_primes(1).is_err());
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let t = sieve_primes(100_000).unwrap();
        let mut it = t.primes.iter().peekable();
        for n in 0..=100_000u64 {
            let expect = it.peek().map(|&&p| p == n).unwrap_or(false);
            if expect {
                it.next();
            }
            assert_eq!(is_prime(n), expect, "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn range_queries() {
        let t = sieve_primes(200).unwrap();
        assert_eq!(t.range(100, 113), &[101, 103, 107, 109, 113]);
        assert!(t.range(24, 28).is_empty());
        assert_eq!(primes_between(95, 110).unwrap(), vec![97, 101, 103, 107, 109]);
    }
}
