use super::functions::squarefree_table;
use crate::error::{domain, Error, Result};

/// Kronecker symbol `(d/n)`.
pub fn kronecker(d: i64, n: i64) -> i32 {
    if n == 0 {
        return i32::from(d == 1 || d == -1);
    }
    let mut sign = 1;
    let mut m = n.unsigned_abs();
    if n < 0 && d < 0 {
        sign = -sign;
    }
    let tz = m.trailing_zeros();
    if tz > 0 {
        if d % 2 == 0 {
            return 0;
        }
        m >>= tz;
        if tz % 2 == 1 {
            let r = d.rem_euclid(8);
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
    }
    sign * jacobi(d, m)
}

/// Jacobi symbol `(a/m)` for odd positive `m`.
fn jacobi(a: i64, m: u64) -> i32 {
    debug_assert!(m % 2 == 1);
    let mut a = (a as i128).rem_euclid(m as i128) as u64;
    let mut m = m;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = m % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            t = -t;
        }
        a %= m;
    }
    if m == 1 {
        t
    } else {
        0
    }
}

/// Values `χ_d(0), …, χ_d(|d|−1)` over one period.
pub fn character_table(d: i64) -> Vec<i8> {
    let q = d.unsigned_abs() as usize;
    (0..q).map(|n| kronecker(d, n as i64) as i8).collect()
}

fn squarefree_u64(n: u64) -> bool {
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        if m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

/// Fundamental discriminant test; `1` is excluded.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let r = d.rem_euclid(4);
    if r == 1 {
        return squarefree_u64(d.unsigned_abs());
    }
    if r == 0 {
        let m = d / 4;
        let s = m.rem_euclid(4);
        return (s == 2 || s == 3) && squarefree_u64(m.unsigned_abs());
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    Both,
}

/// Fundamental discriminants with `lo ≤ |d| ≤ hi`, ordered by `|d|`, negative first.
pub fn enumerate_fundamental(lo: u64, hi: u64, sign: Sign) -> Result<Vec<i64>> {
    if lo > hi {
        return domain(format!("empty range [{lo}, {hi}]"));
    }
    if hi > 1_000_000_000 {
        return Err(Error::Unsupported(format!("|d| ≤ {hi} too large")));
    }
    let sf = squarefree_table(hi as usize);
    let sqf = |n: u64| n < sf.len() as u64 && sf[n as usize];
    let fundamental = |d: i64| -> bool {
        if d == 0 || d == 1 {
            return false;
        }
        match d.rem_euclid(4) {
            1 => sqf(d.unsigned_abs()),
            0 => {
                let m = d / 4;
                matches!(m.rem_euclid(4), 2 | 3) && sqf(m.unsigned_abs())
            }
            _ => false,
        }
    };
    let mut out = Vec::new();
    for a in lo.max(1)..=hi {
        let a = a as i64;
        if matches!(sign, Sign::Negative | Sign::Both) && fundamental(-a) {
            out.push(-a);
        }
        if matches!(sign, Sign::Positive | Sign::Both) && fundamental(a) {
            out.push(a);
        }
    }
    Ok(out)
}

/// Odd squarefree `d` in `[lo, hi]`; these are exactly the `d > 0` with `8d` fundamental.
pub fn family_8d(lo: f64, hi: f64) -> Vec<u64> {
    if !(hi >= lo) || hi < 1.0 {
        return Vec::new();
    }
    let a = lo.ceil().max(1.0) as u64;
    let b = hi.floor() as u64;
    if a > b {
        return Vec::new();
    }
    let sf = squarefree_table(b as usize);
    (a..=b).filter(|&d| d % 2 == 1 && sf[d as usize]).collect()
}

/// The family `X/16 ≤ d ≤ X/8` with `μ(2d)² = 1`.
pub fn enumerate_8d_family(x: f64) -> Result<Vec<u64>> {
    if !(x > 0.0) {
        return domain(format!("family size X = {x} must be positive"));
    }
    Ok(family_8d(x / 16.0, x / 8.0))
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd((a % m) as i128, m as i128);
    (g == 1).then(|| x.rem_euclid(m as i128) as u128)
}

/// Chinese remaindering; returns `(x, M)` with `0 ≤ x < M = Π moduli`.
pub fn crt(residues: &[i128], moduli: &[u64]) -> Result<(u128, u128)> {
    if residues.len() != moduli.len() {
        return domain("residues and moduli differ in length");
    }
    let mut x: u128 = 0;
    let mut big_m: u128 = 1;
    for (&r, &m) in residues.iter().zip(moduli) {
        if m == 0 {
            return domain("modulus 0");
        }
        let m = m as u128;
        let inv = mod_inverse(big_m % m, m).ok_or_else(|| {
            Error::Domain(format!("modulus {m} is not coprime to the others"))
        })?;
        let r = r.rem_euclid(m as i128) as u128;
        let k = ((r + m - x % m) % m) * inv % m;
        let next_m = big_m
            .checked_mul(m)
            .ok_or_else(|| Error::Unsupported("modulus product exceeds 2^128".into()))?;
        x += big_m * k;
        big_m = next_m;
    }
    Ok((x, big_m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_values() {
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(12, 35), 1);
        assert_eq!(kronecker(7, 1), 1);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(5, 0), 0);
        assert_eq!(kronecker(5, -1), 1);
        assert_eq!(kronecker(-4, -1), -1);
        assert_eq!(kronecker(8, 2), 0);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(17, 2), 1);
    }

    fn legendre_brute(a: i64, p: i64) -> i32 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == a) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn matches_euler_criterion_on_odd_primes() {
        for &p in &[3i64, 5, 7, 11, 13, 29, 97] {
            for a in -50..50 {
                assert_eq!(kronecker(a, p), legendre_brute(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn characters_are_periodic_with_zero_mean() {
        for d in enumerate_fundamental(1, 500, Sign::Both).unwrap() {
            let q = d.unsigned_abs() as i64;
            let mut total = 0;
            for n in 0..q {
                let c = kronecker(d, n);
                assert_eq!(c, kronecker(d, n + q), "d = {d}");
                total += c;
            }
            assert_eq!(total, 0, "d = {d}");
            for m in 1..40 {
                for n in 1..40 {
                    assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
                }
            }
        }
    }

    #[test]
    fn fundamental_discriminants() {
        assert!(!is_fundamental(9));
        assert!(is_fundamental(12));
        assert!(!is_fundamental(1));
        assert!(is_fundamental(-4));
        assert!(is_fundamental(-3));
        assert!(!is_fundamental(-1));
        assert_eq!(
            enumerate_fundamental(1, 20, Sign::Positive).unwrap(),
            vec![5, 8, 12, 13, 17]
        );
        let both = enumerate_fundamental(1, 300, Sign::Both).unwrap();
        for d in -300i64..=300 {
            assert_eq!(both.contains(&d), is_fundamental(d), "d = {d}");
        }
    }

    #[test]
    fn eight_d_family() {
        assert_eq!(enumerate_8d_family(160.0).unwrap(), vec![11, 13, 15, 17, 19]);
        assert_eq!(enumerate_8d_family(16.0).unwrap(), vec![1]);
        assert!(enumerate_8d_family(7.0).unwrap().is_empty());
        assert!(enumerate_8d_family(0.0).is_err());
        for d in enumerate_8d_family(10_000.0).unwrap() {
            assert!(is_fundamental(8 * d as i64));
        }
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(&[1, 1], &[2, 3]).unwrap().0, 1);
        assert_eq!(crt(&[1, 0], &[2, 3]).unwrap().0, 3);
        assert_eq!(crt(&[0, 0], &[7, 11]).unwrap().0, 0);
        assert!(crt(&[1, 1], &[4, 6]).is_err());
        assert!(crt(&[1], &[4, 6]).is_err());
    }
}
