//! Smoothed sums: the central square, the exponentially twisted series and
//! the moment sum over `8d`.

use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::OnceLock;

use super::direct::{check_fundamental, dirichlet_l_real_with};
use crate::arith::{character_table, family_8d, kronecker, tau_table};
use crate::error::{domain, Result};
use crate::special::{phi_weight, W2Kernel};
use crate::sum::Neumaier;
use crate::tol::HALF_SQUARE_XI_MAX;

fn kernel() -> &'static W2Kernel {
    static K: OnceLock<W2Kernel> = OnceLock::new();
    K.get_or_init(W2Kernel::new)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSquare {
    pub value: f64,
    pub error: f64,
    pub terms: u64,
}

/// `L(1/2, χ_{8d})² = 2 Σ τ(n) n^{-1/2} χ_{8d}(n) W2(nπ/(8d))`, cut at
/// `nπ/(8d) ≤ 40`. Small negative results from rounding are clamped to 0.
pub fn l_half_square(d: u64) -> Result<HalfSquare> {
    if d == 0 || d % 2 == 0 {
        return domain(format!("d = {d} must be odd and positive"));
    }
    let q = 8 * d as i64;
    check_fundamental(q)?;
    let n_max = (HALF_SQUARE_XI_MAX * q as f64 / PI).floor() as usize;
    let taus = tau_table(n_max);
    let chi = character_table(q);
    let k = kernel();
    let scale = PI / q as f64;
    let mut acc = Neumaier::new();
    let mut abs = 0.0;
    let mut terms = 0u64;
    for n in (1..=n_max).step_by(2) {
        let c = chi[n % chi.len()];
        if c == 0 {
            continue;
        }
        let t = taus[n] as f64 / (n as f64).sqrt() * k.eval(n as f64 * scale);
        acc.add(if c > 0 { t } else { -t });
        abs += t.abs();
        terms += 1;
    }
    let v = 2.0 * acc.value();
    // kernel accuracy ~1e-13 per node sum; tail beyond ξ = 40 is below e^{-40} relative
    let error = 2.0 * abs * (1e-13 + (-HALF_SQUARE_XI_MAX).exp());
    Ok(HalfSquare { value: v.max(0.0), error, terms })
}

/// `Σ χ_d(n) n^{-σ} e^{-n/X²}`, truncated at `n = X² log(1/tol)`.
/// Returns the value and the number of terms.
pub fn l_twisted_exp(sigma: f64, d: i64, x: f64, tol: f64) -> Result<(f64, u64)> {
    check_fundamental(d)?;
    if !(sigma > 0.5 && sigma < 1.0) {
        return domain(format!("twisted series needs 1/2 < σ < 1, got {sigma}"));
    }
    if !(x > 1.0) {
        return domain(format!("twist length X = {x} must exceed 1"));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return domain("tolerance must lie in (0, 1)");
    }
    let x2 = x * x;
    let n_max = (x2 * (1.0 / tol).ln()).ceil() as u64;
    let chi = character_table(d);
    let q = chi.len() as u64;
    let chunk = 1u64 << 16;
    let parts: Vec<Neumaier> = (0..n_max.div_ceil(chunk))
        .into_par_iter()
        .map(|b| {
            let mut acc = Neumaier::new();
            let lo = (b * chunk).max(1);
            let hi = ((b + 1) * chunk).min(n_max + 1);
            for n in lo..hi {
                let c = chi[(n % q) as usize];
                if c != 0 {
                    let nf = n as f64;
                    let t = (-sigma * nf.ln() - nf / x2).exp();
                    acc.add(if c > 0 { t } else { -t });
                }
            }
            acc
        })
        .collect();
    let mut total = Neumaier::new();
    for p in &parts {
        total.merge(p);
    }
    Ok((total.value(), n_max))
}

/// `M(α1, α2; l, X) = Σ_{d odd squarefree} L(1/2+α1, χ_{8d}) L(1/2+α2, χ_{8d}) χ_{8d}(l) Φ(d/X)`.
pub fn sono_m(alpha1: f64, alpha2: f64, l: u64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("X = {x} must be positive"));
    }
    if l == 0 {
        return domain("l must be at least 1");
    }
    let ds = family_8d(x / 2.0, 3.0 * x);
    let terms: Vec<(u64, f64)> = ds
        .par_iter()
        .filter(|&&d| (d as f64) > x / 2.0 && (d as f64) < 3.0 * x)
        .map(|&d| {
            let q = 8 * d as i64;
            let c = kronecker(q, l as i64);
            let w = phi_weight(d as f64 / x);
            if c == 0 || w == 0.0 {
                return (d, 0.0);
            }
            let chi = character_table(q);
            let l1 = dirichlet_l_real_with(0.5 + alpha1, &chi, None).0;
            let l2 = if alpha2 == alpha1 { l1 } else { dirichlet_l_real_with(0.5 + alpha2, &chi, None).0 };
            (d, l1 * l2 * c as f64 * w)
        })
        .collect();
    // par_iter preserves order, so the sum is deterministic
    Ok(terms.iter().map(|t| t.1).collect::<Neumaier>().value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::l_direct;

    #[test]
    fn square_matches_direct() {
        for d in [1u64, 3, 5, 7, 11, 23] {
            let sq = l_half_square(d).unwrap();
            let l = l_direct(0.5, 8 * d as i64, None).unwrap().value;
            assert!((sq.value - l * l).abs() <= 1e-6 * l * l + sq.error, "d = {d}");
        }
        assert!(l_half_square(2).is_err());
        assert!(l_half_square(9).is_err());
    }

    #[test]
    fn twisted_series_approaches_l() {
        // L_X = Σ_k (-1)^k/k! L(σ-k) X^{-2k}; the k = 1 term dominates the gap
        let (v, _) = l_twisted_exp(0.75, 24, 100.0, 1e-14).unwrap();
        let chi = character_table(24);
        let l0 = dirichlet_l_real_with(0.75, &chi, None).0;
        let l1 = dirichlet_l_real_with(-0.25, &chi, None).0;
        let l2 = dirichlet_l_real_with(-1.25, &chi, None).0;
        let pred = l0 - l1 * 1e-4 + l2 * 1e-8 / 2.0;
        assert!((v - pred).abs() < 1e-10, "{v} vs {pred}");
        assert!(l_twisted_exp(0.5, 24, 100.0, 1e-12).is_err());
        assert!(l_twisted_exp(0.75, 24, 1.0, 1e-12).is_err());
    }

    #[test]
    fn truncation_doubling_is_stable() {
        let (a, _) = l_twisted_exp(0.9, 5, 50.0, 1e-12).unwrap();
        let (b, _) = l_twisted_exp(0.9, 5, 50.0, 1e-24).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn moment_sum_small_window() {
        // X = 2: d ∈ {3, 5}; Φ(1/2) = 0 removes d = 1
        let m = sono_m(0.25, 0.25, 1, 2.0).unwrap();
        let mut brute = 0.0;
        for d in [3i64, 5] {
            let l = l_direct(0.75, 8 * d, None).unwrap().value;
            brute += l * l * phi_weight(d as f64 / 2.0);
        }
        assert!((m - brute).abs() < 1e-13);
        assert!(sono_m(0.25, 0.25, 0, 2.0).is_err());
    }
}
