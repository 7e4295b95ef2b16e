//! `A_{α1,α2}(l) = Σ_{m odd} (1/m) Σ_{n1 n2 = l1 m²} n1^{-α1} n2^{-α2} Π_{p | lm} p/(p+1)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::eta::decompose_l;
use crate::arith::{factor_with, factorize, spf_table};
use crate::error::{domain, Error, Result};
use crate::sum::Neumaier;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AValue {
    pub value: f64,
    /// Estimate of the omitted `m > truncation` terms.
    pub remainder: f64,
    pub terms: u64,
}

/// `Σ_{n1 n2 = N} n1^{-α1} n2^{-α2}` for `N = Π p^e`, one prime at a time.
fn local_divisor_sum(p: u64, e: u32, a1: f64, a2: f64) -> f64 {
    let lp = (p as f64).ln();
    (0..=e)
        .map(|j| (-(j as f64) * a1 * lp - (e - j) as f64 * a2 * lp).exp())
        .sum()
}

/// Truncated at odd `m ≤ truncation`; both `α1, α2` must be positive for the
/// `m`-sum to converge.
pub fn a_func(alpha1: f64, alpha2: f64, l: u64, truncation: u64) -> Result<AValue> {
    if !(alpha1 > 0.0 && alpha2 > 0.0) {
        return domain(format!(
            "A needs α1, α2 > 0 for convergence, got ({alpha1}, {alpha2})"
        ));
    }
    if truncation == 0 {
        return domain("truncation must be at least 1");
    }
    if truncation > 50_000_000 {
        return Err(Error::Unsupported(format!("truncation {truncation} beyond budget")));
    }
    let idx = decompose_l(l)?;
    let l_fac: BTreeMap<u64, u32> = factorize(l)?.into_iter().collect();
    let l1_fac: BTreeMap<u64, u32> = factorize(idx.l1)?.into_iter().collect();
    let spf = spf_table(truncation as usize);
    let mut acc = Neumaier::new();
    let mut m = 1u64;
    while m <= truncation {
        let mut n_fac = l1_fac.clone();
        let mut primes: BTreeMap<u64, ()> = l_fac.keys().map(|&p| (p, ())).collect();
        for (p, k) in factor_with(&spf, m as usize) {
            *n_fac.entry(p).or_insert(0) += 2 * k;
            primes.insert(p, ());
        }
        let mut inner = 1.0;
        for (&p, &e) in &n_fac {
            inner *= local_divisor_sum(p, e, alpha1, alpha2);
        }
        let mut euler = 1.0;
        for &p in primes.keys() {
            euler *= p as f64 / (p as f64 + 1.0);
        }
        acc.add(inner * euler / m as f64);
        m += 2;
    }
    // terms are at most τ(l1) l1^{-β/2} τ(m²) m^{-1-β} with β = 2 min(α1, α2);
    // Σ_{m ≤ x} τ(m)² ~ x log³x/π² by partial summation
    let amin = alpha1.min(alpha2);
    let beta = 2.0 * amin;
    let t = truncation as f64;
    let lt = t.ln().max(1.0);
    let tau_l1 = 2f64.powi(l1_fac.len() as i32);
    let tail_int = t.powf(-beta)
        * (lt.powi(3) / beta + 3.0 * lt * lt / beta.powi(2) + 6.0 * lt / beta.powi(3) + 6.0 / beta.powi(4));
    let remainder = tau_l1 * (idx.l1 as f64).powf(-amin) * (1.0 + beta) / (PI * PI) * tail_int;
    Ok(AValue { value: acc.value(), remainder, terms: truncation.div_ceil(2) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_squarefree, tau};
    use crate::special::riemann_zeta_real;

    #[test]
    fn two_cutoffs_agree() {
        let a = a_func(1.5, 1.5, 1, 20_000).unwrap();
        let b = a_func(1.5, 1.5, 1, 40_000).unwrap();
        assert!((a.value - b.value).abs() < 1e-8);
        assert!((a.value - b.value).abs() <= a.remainder);
        assert!(b.remainder < a.remainder);
    }

    #[test]
    fn large_alpha_tends_to_one() {
        let a = a_func(20.0, 20.0, 1, 1_000).unwrap();
        assert!(a.value >= 1.0 && a.value < 1.0 + 1e-6);
    }

    #[test]
    fn sono_bound_on_triples() {
        let c = 0.8;
        let z = riemann_zeta_real(2.0 * c).unwrap().powi(3) / riemann_zeta_real(4.0 * c).unwrap();
        for (a, r, s) in [(1u64, 1u64, 1u64), (1, 3, 5), (7, 3, 11), (5, 1, 13), (1, 15, 7), (11, 2, 3)] {
            assert!(is_squarefree(r * s).unwrap());
            let rs = (r * s) as f64;
            let lhs = a_func(c - 0.5, c - 0.5, a * a * r * s, 20_001).unwrap().value / rs.sqrt();
            let rhs = tau(r * s).unwrap() as f64 / rs.powf(c) * z;
            assert!(lhs <= rhs, "({a},{r},{s}): {lhs} > {rhs}");
        }
    }

    #[test]
    fn direct_divisor_enumeration() {
        // m ≤ 5 by explicit divisor lists for l = 6 (l1 = 6)
        let (a1, a2) = (0.7, 1.1);
        let mut want = 0.0;
        for m in [1u64, 3, 5] {
            let n = 6 * m * m;
            let mut inner = 0.0;
            for n1 in 1..=n {
                if n % n1 == 0 {
                    inner += (n1 as f64).powf(-a1) * ((n / n1) as f64).powf(-a2);
                }
            }
            let mut e = 1.0;
            for p in [2u64, 3, 5] {
                if (6 * m) % p == 0 {
                    e *= p as f64 / (p as f64 + 1.0);
                }
            }
            want += inner * e / m as f64;
        }
        let got = a_func(a1, a2, 6, 5).unwrap().value;
        assert!((got - want).abs() < 1e-13);
        assert!(a_func(-0.1, 0.5, 1, 10).is_err());
    }
}
