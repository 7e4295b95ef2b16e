use num_rational::Ratio;

use super::primes::small_primes;
use crate::error::{domain, Error, Result};
use crate::tol::FACTOR_MAX;

/// Prime factorization as `(p, k)` pairs with ascending `p`.
pub type Factorization = Vec<(u64, u32)>;

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return domain("cannot factor 0");
    }
    if n > FACTOR_MAX {
        return Err(Error::Unsupported(format!(
            "{n} exceeds trial-division bound {FACTOR_MAX}"
        )));
    }
    let mut m = n;
    let mut out = Vec::new();
    for &p in small_primes() {
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            out.push((p, k));
        }
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(out)
}

pub fn is_squarefree(n: u64) -> Result<bool> {
    Ok(factorize(n)?.iter().all(|&(_, k)| k == 1))
}

pub fn mobius(n: u64) -> Result<i32> {
    let f = factorize(n)?;
    if f.iter().any(|&(_, k)| k > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

pub fn tau(n: u64) -> Result<u64> {
    Ok(factorize(n)?.iter().map(|&(_, k)| k as u64 + 1).product())
}

pub fn sigma(n: u64) -> Result<u64> {
    Ok(factorize(n)?
        .iter()
        .map(|&(p, k)| (p.pow(k + 1) - 1) / (p - 1))
        .product())
}

pub fn omega(n: u64) -> Result<u32> {
    Ok(factorize(n)?.len() as u32)
}

/// `h(p) = 1 + 1/p + 1/p² − 4/(p(p+1))`, independent of the exponent.
pub fn h_prime(p: u64) -> f64 {
    let x = p as f64;
    1.0 + 1.0 / x + 1.0 / (x * x) - 4.0 / (x * (x + 1.0))
}

/// `h(p)` as the reduced fraction `(p³ + 2p² − 2p + 1)/(p²(p+1))`.
pub fn h_prime_exact(p: u64) -> Result<Ratio<i128>> {
    let q = p as i128;
    let num = q
        .checked_pow(3)
        .and_then(|c| c.checked_add(2 * q * q - 2 * q + 1));
    let den = q.checked_mul(q).and_then(|s| s.checked_mul(q + 1));
    match (num, den) {
        (Some(a), Some(b)) => Ok(Ratio::new(a, b)),
        _ => Err(Error::Unsupported(format!("h({p}) overflows i128"))),
    }
}

pub fn h_func(n: u64) -> Result<f64> {
    Ok(factorize(n)?.iter().map(|&(p, _)| h_prime(p)).product())
}

/// Exact `h(n)`; fails when numerator or denominator leaves `i128`.
pub fn h_func_exact(n: u64) -> Result<Ratio<i128>> {
    let mut acc = Ratio::from_integer(1i128);
    for (p, _) in factorize(n)? {
        let hp = h_prime_exact(p)?;
        let num = acc.numer().checked_mul(*hp.numer());
        let den = acc.denom().checked_mul(*hp.denom());
        match (num, den) {
            (Some(a), Some(b)) => acc = Ratio::new(a, b),
            _ => return Err(Error::Unsupported(format!("h({n}) overflows i128"))),
        }
    }
    Ok(acc)
}

/// `ε_D(n) = D^{ω(n)}`.
pub fn epsilon_d(big_d: f64, n: u64) -> Result<f64> {
    Ok(big_d.powi(omega(n)? as i32))
}

/// Sieve of `τ(n)` for `n ≤ limit`; index 0 is unused.
pub fn tau_table(limit: usize) -> Vec<u32> {
    let mut t = vec![0u32; limit + 1];
    for d in 1..=limit {
        let mut m = d;
        while m <= limit {
            t[m] += 1;
            m += d;
        }
    }
    t
}

/// Smallest-prime-factor table for `n ≤ limit`.
pub fn spf_table(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Factor `n` with a smallest-prime-factor table.
pub fn factor_with(spf: &[u32], mut n: usize) -> Factorization {
    let mut out: Factorization = Vec::new();
    while n > 1 {
        let p = spf[n] as usize;
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        out.push((p as u64, k));
    }
    out
}

/// Squarefree flags for `n ≤ limit`.
pub fn squarefree_table(limit: usize) -> Vec<bool> {
    let mut sf = vec![true; limit + 1];
    if limit >= 1 {
        sf[0] = false;
    }
    let mut q = 2usize;
    while q * q <= limit {
        let s = q * q;
        let mut j = s;
        while j <= limit {
            sf[j] = false;
            j += s;
        }
        q += 1;
    }
    sf
}
