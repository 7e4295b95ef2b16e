//! `L(s, χ_d)` as a sum over full periods plus an Euler–Maclaurin tail in
//! each residue class.
//!
//! For `M = Kq` with `q = |d|`,
//! `Σ_{n≥M} χ(n) n^{-s} = q^{-s} Σ_a χ(a) Σ_{k≥0} (k + K + a/q)^{-s}`,
//! and the inner sums are expanded by Euler–Maclaurin. The pole term
//! `y^{1-s}/(s-1)` is replaced by `(y^{1-s} - 1)/(s-1)`, which is the same
//! after summing against `χ` (zero mean) and is regular at `s = 1`.

use num_complex::Complex64;

use crate::arith::{character_table, is_fundamental};
use crate::error::{domain, Result};
use crate::special::em_corrections;
use crate::sum::Neumaier;

/// Default number of direct periods.
const MIN_PERIODS: u64 = 6;

/// An evaluated L-value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexLValue {
    pub value: Complex64,
    pub error: f64,
    /// Number of explicit terms `n` summed.
    pub terms: u64,
}

pub(crate) fn check_fundamental(d: i64) -> Result<()> {
    if !is_fundamental(d) {
        return domain(format!("{d} is not a fundamental discriminant"));
    }
    Ok(())
}

/// `(e^{z} - 1)/z`.
fn phi1(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        Complex64::new(1.0, 0.0) + z / 2.0 + z * z / 6.0 + z * z * z / 24.0
    } else {
        (z.exp() - 1.0) / z
    }
}

fn periods_for(s: Complex64, q: u64, budget: Option<u64>) -> u64 {
    let needed = MIN_PERIODS + (s.norm() / 2.0).ceil() as u64;
    match budget {
        Some(b) => (b / q).max(1),
        None => needed,
    }
}

/// `L(s, χ_d)` for complex `s` (entire for fundamental `d`).
pub fn dirichlet_l(s: Complex64, d: i64, budget: Option<u64>) -> Result<ComplexLValue> {
    check_fundamental(d)?;
    let table = character_table(d);
    Ok(dirichlet_l_with(s, &table, budget))
}

pub(crate) fn dirichlet_l_with(s: Complex64, chi: &[i8], budget: Option<u64>) -> ComplexLValue {
    let q = chi.len() as u64;
    let k = periods_for(s, q, budget);
    let m = k * q;
    let mut re = Neumaier::new();
    let mut im = Neumaier::new();
    let mut abs = 0.0;
    for n in 1..m {
        let c = chi[(n % q) as usize];
        if c == 0 {
            continue;
        }
        let v = (-s * (n as f64).ln()).exp() * c as f64;
        re.add(v.re);
        im.add(v.im);
        abs += v.norm();
    }
    let qf = q as f64;
    let q_pow = (-s * qf.ln()).exp();
    let one = Complex64::new(1.0, 0.0);
    let mut err = 0.0;
    for a in 1..q {
        let c = chi[a as usize];
        if c == 0 {
            continue;
        }
        let y = k as f64 + a as f64 / qf;
        let ly = y.ln();
        let y_pow = (-s * ly).exp();
        let pole = -phi1((one - s) * ly) * ly;
        let head = pole + y_pow * 0.5;
        let (corr, last) = em_corrections(s, y, y_pow, 15, 1e-18, y_pow.norm() * y);
        let v = q_pow * (head + corr) * c as f64;
        re.add(v.re);
        im.add(v.im);
        abs += v.norm();
        err += 2.0 * last * q_pow.norm();
    }
    err += 4.0 * f64::EPSILON * abs;
    ComplexLValue { value: Complex64::new(re.value(), im.value()), error: err, terms: m - 1 }
}

/// Real-argument variant of [`dirichlet_l_with`].
pub(crate) fn dirichlet_l_real_with(sigma: f64, chi: &[i8], budget: Option<u64>) -> (f64, f64, u64) {
    let q = chi.len() as u64;
    let k = periods_for(Complex64::new(sigma, 0.0), q, budget);
    let m = k * q;
    let mut acc = Neumaier::new();
    let mut abs = 0.0;
    for n in 1..m {
        let c = chi[(n % q) as usize];
        if c == 0 {
            continue;
        }
        let v = (-sigma * (n as f64).ln()).exp();
        acc.add(if c > 0 { v } else { -v });
        abs += v;
    }
    let qf = q as f64;
    let q_pow = (-sigma * qf.ln()).exp();
    let s = Complex64::new(sigma, 0.0);
    let mut err = 0.0;
    for a in 1..q {
        let c = chi[a as usize];
        if c == 0 {
            continue;
        }
        let y = k as f64 + a as f64 / qf;
        let ly = y.ln();
        let y_pow = (-sigma * ly).exp();
        let z = (1.0 - sigma) * ly;
        let phi = if z.abs() < 1e-4 { 1.0 + z / 2.0 + z * z / 6.0 } else { z.exp_m1() / z };
        let head = -phi * ly + 0.5 * y_pow;
        let (corr, last) =
            em_corrections(s, y, Complex64::new(y_pow, 0.0), 15, 1e-18, y_pow * y);
        let v = q_pow * (head + corr.re) * c as f64;
        acc.add(v);
        abs += v.abs();
        err += 2.0 * last * q_pow;
    }
    err += 4.0 * f64::EPSILON * abs;
    (acc.value(), err, m - 1)
}

/// Truncated Euler product for `Re s > 1` with its tail bound.
pub fn euler_product_l(sigma: f64, d: i64, cutoff: u64) -> Result<(f64, f64)> {
    check_fundamental(d)?;
    if !(sigma > 1.0) {
        return domain(format!("Euler product needs σ > 1, got {sigma}"));
    }
    let primes = crate::arith::primes_between(2, cutoff)?;
    let mut lg = Neumaier::new();
    for p in primes {
        let c = crate::arith::kronecker(d, p as i64);
        if c != 0 {
            lg.add(-(-(c as f64) * (p as f64).powf(-sigma)).ln_1p());
        }
    }
    let x = cutoff as f64;
    let tail = 2.0 * x.powf(1.0 - sigma) / ((sigma - 1.0) * x.ln());
    let v = lg.value().exp();
    Ok((v, v * tail.exp_m1()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cx(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn classical_values() {
        let l = dirichlet_l(cx(1.0), -4, None).unwrap();
        assert!((l.value.re - PI / 4.0).abs() < 1e-13);
        let catalan = 0.915_965_594_177_219_015;
        let l = dirichlet_l(cx(2.0), -4, None).unwrap();
        assert!((l.value.re - catalan).abs() < 1e-13);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let l = dirichlet_l(cx(1.0), 5, None).unwrap();
        assert!((l.value.re - 2.0 / 5f64.sqrt() * phi.ln()).abs() < 1e-13);
    }

    #[test]
    fn negative_integer_values_match_bernoulli() {
        // L(0, χ_d) = -B_{1,χ} = -(1/q) Σ χ(a) a ; L(-1, χ_5) = -2/5
        for d in [-3i64, -4, -7, -8, -20] {
            let q = d.unsigned_abs() as i64;
            let b1: f64 = (1..q)
                .map(|a| crate::arith::kronecker(d, a) as f64 * a as f64)
                .sum::<f64>()
                / q as f64;
            let l = dirichlet_l(cx(0.0), d, None).unwrap();
            assert!((l.value.re + b1).abs() < 1e-12, "d = {d}");
        }
        let l = dirichlet_l(cx(-1.0), 5, None).unwrap();
        assert!((l.value.re + 0.4).abs() < 1e-12);
    }

    #[test]
    fn real_and_complex_paths_agree() {
        for d in [5i64, 8, -23, 1_001 * 8] {
            let chi = character_table(d);
            for sigma in [0.5, 0.75, 1.0, 1.5, -0.5] {
                let (r, e, _) = dirichlet_l_real_with(sigma, &chi, None);
                let c = dirichlet_l_with(cx(sigma), &chi, None);
                assert!((r - c.value.re).abs() < 1e-12 * (1.0 + r.abs()), "d={d} σ={sigma}");
                assert!(e < 1e-10 * (1.0 + r.abs()), "d={d} σ={sigma} err={e}");
            }
        }
    }

    #[test]
    fn halving_budget_moves_less_than_error() {
        let chi = character_table(8 * 101);
        let (a, ea, _) = dirichlet_l_real_with(0.5, &chi, Some(8 * 808 * 12));
        let (b, eb, _) = dirichlet_l_real_with(0.5, &chi, Some(8 * 808 * 6));
        assert!((a - b).abs() <= ea + eb + 1e-15);
    }

    #[test]
    fn euler_product_agrees_for_large_sigma() {
        let (v, e) = euler_product_l(3.0, -4, 100_000).unwrap();
        let l = dirichlet_l(cx(3.0), -4, None).unwrap().value.re;
        // L(3, χ_{-4}) = π³/32
        assert!((l - PI.powi(3) / 32.0).abs() < 1e-13);
        assert!((v - l).abs() <= e + 1e-13);
    }

    #[test]
    fn rejects_non_fundamental() {
        assert!(dirichlet_l(cx(0.5), 9, None).is_err());
        assert!(dirichlet_l(cx(0.5), 1, None).is_err());
    }
}
