//! Stieltjes constants `γ_j` from the forward-difference series
//!
//! `γ_j = -1/(j+1) Σ_{n≥0} 1/(n+1) Σ_k (-1)^k C(n,k) log^{j+1}(k+1)`.
//!
//! The inner alternating sums lose all precision in floating point beyond
//! `n ≈ 40`. Each one equals `(-1)^m m! ∫_0^∞ e^{-t}(1-e^{-t})^n P_m(log t) dt/t`
//! with `m = j+1` and `P_m(y) = Σ_{k=1}^m a_k y^{m-k}/(m-k)!`, where `a_k` are
//! the Taylor coefficients of `1/Γ` at `0`; the integrand is positive in `n`,
//! so partial sums over `n` are summed under the integral without cancellation.

use num_complex::Complex64;

use super::zeta::riemann_zeta_real;
use crate::error::{domain, Result};
use crate::quad::tanh_sinh;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Taylor coefficients `a_0..=a_n` of `1/Γ(s)` at `s = 0`.
pub fn rgamma_taylor(n: usize) -> Result<Vec<f64>> {
    // 1/Γ(1+s) = exp(γ s - Σ_{k≥2} ζ(k) (-s)^k / k)
    let mut lg = vec![0.0; n + 1];
    if n >= 1 {
        lg[1] = EULER_GAMMA;
    }
    for (k, c) in lg.iter_mut().enumerate().skip(2) {
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        *c = sign * riemann_zeta_real(k as f64)? / k as f64;
    }
    let e = series_exp(&lg);
    let mut a = vec![0.0; n + 1];
    for k in 1..=n {
        a[k] = e[k - 1];
    }
    Ok(a)
}

/// Coefficients of `exp(f)` for a power series `f` with `f[0] = 0`.
pub(crate) fn series_exp(f: &[f64]) -> Vec<f64> {
    let n = f.len();
    let mut e = vec![0.0; n];
    if n == 0 {
        return e;
    }
    e[0] = f[0].exp();
    for k in 1..n {
        let mut s = 0.0;
        for j in 1..=k {
            s += j as f64 * f[j] * e[k - j];
        }
        e[k] = s / k as f64;
    }
    e
}

/// `γ_j` for `j ≤ 5`. With `terms = Some(N)` only the outer terms `n < N`
/// are included; `None` sums the full series.
pub fn stieltjes_gamma(j: usize, terms: Option<usize>) -> Result<f64> {
    if j > 5 {
        return domain(format!("Stieltjes index {j} > 5 not supported"));
    }
    if terms == Some(0) {
        return Ok(0.0);
    }
    let m = j + 1;
    let a = rgamma_taylor(m)?;
    let fact: f64 = (1..=m).map(|k| k as f64).product();
    let poly = |y: f64| -> f64 {
        let mut s = 0.0;
        let mut f = 1.0;
        for k in (1..=m).rev() {
            // y^{m-k}/(m-k)!
            let e = m - k;
            if e > 0 {
                f *= y / e as f64;
            }
            s += a[k] * f;
        }
        s
    };
    // Σ_{1 ≤ n < N} u^n/(n+1), or its closed form (t-u)/u for N = ∞
    let partial = |u: f64, t: f64| -> f64 {
        match terms {
            None => {
                if u < 1e-4 {
                    u / 2.0 + u * u / 3.0 + u * u * u / 4.0
                } else {
                    (t - u) / u
                }
            }
            Some(n) => {
                let mut s = 0.0;
                let mut p = u;
                for k in 1..n {
                    s += p / (k + 1) as f64;
                    p *= u;
                    if p < 1e-300 {
                        break;
                    }
                }
                s
            }
        }
    };
    let integrand = |t: f64| -> f64 {
        let u = -(-t).exp_m1();
        partial(u, t) / t * poly(t.ln()) * (-t).exp()
    };
    let tol = 1e-14;
    let mut total = 0.0;
    for (a0, b0) in [(0.0, 1.0), (1.0, 8.0), (8.0, 40.0), (40.0, 80.0)] {
        total += tanh_sinh(integrand, a0, b0, tol)?.value;
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(-sign * fact * total / m as f64)
}

/// `ζ(1 + 2w) = 1/(2w) + Σ_j (-2)^j γ_j w^j / j!`: returns the regular-part
/// coefficients `[γ_0, -2γ_1, 2γ_2, …]` up to `w^n`.
pub fn zeta_one_plus_2w_regular(n: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut fact = 1.0;
    for j in 0..=n {
        if j > 0 {
            fact *= j as f64;
        }
        out.push((-2.0f64).powi(j as i32) * stieltjes_gamma(j, None)? / fact);
    }
    Ok(out)
}

/// `ζ(s) - 1/(s-1)` evaluated directly (regular near `s = 1`).
pub fn zeta_regular_part(s: Complex64) -> Result<Complex64> {
    Ok(super::zeta::riemann_zeta(s)? - 1.0 / (s - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::circle_integral;

    #[test]
    fn euler_gamma_against_harmonic_numbers() {
        let n = 1_000_000u64;
        let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
        let nf = n as f64;
        let oracle = h - nf.ln() - 1.0 / (2.0 * nf) + 1.0 / (12.0 * nf * nf);
        assert!((stieltjes_gamma(0, None).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn against_laurent_coefficients_of_zeta() {
        // γ_j = (-1)^j j! [s-1]^j (ζ(s) - 1/(s-1))
        let mut fact = 1.0;
        for j in 0..=3 {
            if j > 0 {
                fact *= j as f64;
            }
            let c = circle_integral(
                |s| {
                    let w = s - 1.0;
                    zeta_regular_part(s).unwrap() / w.powi(j as i32 + 1)
                },
                Complex64::new(1.0, 0.0),
                0.5,
                128,
            );
            let oracle = (-1.0f64).powi(j as i32) * fact * c.re;
            let v = stieltjes_gamma(j, None).unwrap();
            assert!((v - oracle).abs() < 1e-11, "j = {j}: {v} vs {oracle}");
        }
    }

    #[test]
    fn first_constant_value() {
        assert!((stieltjes_gamma(1, None).unwrap() + 0.072_815_845_4).abs() < 1e-9);
    }

    #[test]
    fn partial_sums_converge() {
        let g0 = stieltjes_gamma(0, Some(5000)).unwrap();
        assert!((g0 - 0.577_215_664_9).abs() < 1e-4);
        let g1 = stieltjes_gamma(1, Some(5000)).unwrap();
        assert!((g1 + 0.072_815_845_4).abs() < 1e-3);
        // the first terms reproduce the naive alternating sums
        let naive = |n_terms: usize| -> f64 {
            let mut tot = 0.0;
            for n in 0..n_terms {
                let mut inner = 0.0;
                let mut binom = 1.0;
                for k in 0..=n {
                    if k > 0 {
                        binom *= (n - k + 1) as f64 / k as f64;
                    }
                    let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
                    inner += sgn * binom * ((k + 1) as f64).ln();
                }
                tot += inner / (n + 1) as f64;
            }
            -tot
        };
        for n in [2usize, 5, 10, 20] {
            assert!((stieltjes_gamma(0, Some(n)).unwrap() - naive(n)).abs() < 1e-10);
        }
    }

    #[test]
    fn reciprocal_gamma_coefficients() {
        let a = rgamma_taylor(4).unwrap();
        assert_eq!(a[0], 0.0);
        assert!((a[1] - 1.0).abs() < 1e-15);
        assert!((a[2] - EULER_GAMMA).abs() < 1e-15);
        assert!((a[3] + 0.655_878_071_520_253_8).abs() < 1e-13);
        assert!((a[4] + 0.042_002_635_034_095_24).abs() < 1e-13);
    }

    #[test]
    fn rejects_large_index() {
        assert!(stieltjes_gamma(6, None).is_err());
    }
}
