use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::gamma;
use super::zeta::exp_integral_e1;
use crate::arith::{h_prime, sieve_primes};
use crate::error::{domain, Result};
use crate::quad::tanh_sinh;
use crate::sum::Neumaier;

/// A constant together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// `c6 = (1/8) Π_{p≥3} (1 - 1/p) h(p)`, truncated at `P` with the tail
/// `Π_{p>P} ≈ exp(-4 Σ_{p>P} p^{-2}) ≈ exp(-4 E1(log P))` applied.
pub fn const_c6(prime_cutoff: u64) -> Result<Estimate> {
    if prime_cutoff < 100 {
        return domain(format!("c6 cutoff {prime_cutoff} too small"));
    }
    let table = sieve_primes(prime_cutoff)?;
    let mut lg = Neumaier::new();
    for &p in &table.primes[1..] {
        let x = p as f64;
        lg.add(((1.0 - 1.0 / x) * h_prime(p)).ln());
    }
    let tail = -4.0 * exp_integral_e1((prime_cutoff as f64).ln());
    let value = (lg.value() + tail).exp() / 8.0;
    // second-order tail terms are O(1/(P² log P)); the PNT error in the
    // first-order term is bounded generously by 1% of it
    let x = prime_cutoff as f64;
    let error = value * (0.01 * tail.abs() + 8.0 / (x * x * x.ln()));
    Ok(Estimate { value, error })
}

/// `c5 = c6 / (96 π²)`.
pub fn const_c5(prime_cutoff: u64) -> Result<Estimate> {
    let c6 = const_c6(prime_cutoff)?;
    let k = 96.0 * PI * PI;
    Ok(Estimate { value: c6.value / k, error: c6.error / k })
}

/// `c10(δ) = e^{1/2}/(4π²) ∫_ℝ |Γ(it - δ)| dt`.
pub fn const_c10(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return domain(format!("c10 needs 0 < δ < 1, got {delta}"));
    }
    let f = |t: f64| gamma(Complex64::new(-delta, t)).map(|g| g.norm()).unwrap_or(0.0);
    let mut total = 0.0;
    for (a, b) in [(0.0, 2.0), (2.0, 20.0), (20.0, 60.0)] {
        total += tanh_sinh(f, a, b, 1e-13)?.value;
    }
    Ok(0.5f64.exp() / (4.0 * PI * PI) * 2.0 * total)
}

fn ln_cosh(x: f64) -> f64 {
    if x < 1.0 {
        (2.0 * (x / 2.0).sinh().powi(2)).ln_1p()
    } else {
        x + (-2.0 * x).exp().ln_1p() - std::f64::consts::LN_2
    }
}

/// `∫_0^∞ log cosh(x) x^{-1/σ} dx/x`.
pub fn log_cosh_moment(sigma: f64) -> Result<f64> {
    if !(sigma > 0.5 && sigma < 1.0) {
        return domain(format!("σ = {sigma} outside (1/2, 1)"));
    }
    let e = 1.0 / sigma + 1.0;
    let f = |x: f64| ln_cosh(x) * x.powf(-e);
    // on [0, 1] the integrand is x^{1-1/σ} log cosh(x)/x²; x = t^{1/k} with
    // k = 2 - 1/σ removes the singularity
    let k = 2.0 - 1.0 / sigma;
    let g = |t: f64| {
        let x = t.powf(1.0 / k);
        if x < 1e-6 {
            0.5 - x * x / 12.0
        } else {
            ln_cosh(x) / (x * x)
        }
    };
    let cut = 40.0;
    let mut total = tanh_sinh(g, 0.0, 1.0, 1e-14)?.value / k;
    for (a, b) in [(1.0, 8.0), (8.0, cut)] {
        total += tanh_sinh(f, a, b, 1e-14)?.value;
    }
    // beyond the cut log cosh x = x - log 2 up to e^{-80}
    let k = 1.0 / sigma - 1.0;
    total += cut.powf(-k) / k - std::f64::consts::LN_2 * sigma * cut.powf(-1.0 / sigma);
    Ok(total)
}

/// `c20(σ) = σ^{2σ/(1-σ)} (1-σ)^{(2σ-1)/(σ-1)} (∫_0^∞ log cosh(x) x^{-1/σ} dx/x)^{σ/(σ-1)}`.
pub fn const_c20(sigma: f64) -> Result<f64> {
    let i = log_cosh_moment(sigma)?;
    let a = sigma.powf(2.0 * sigma / (1.0 - sigma));
    let b = (1.0 - sigma).powf((2.0 * sigma - 1.0) / (sigma - 1.0));
    Ok(a * b * i.powf(sigma / (sigma - 1.0)))
}

/// `c21 = exp(∫_1^∞ (1 - tanh x) dx/x - ∫_0^1 tanh x dx/x)`.
pub fn const_c21() -> Result<f64> {
    let upper = |x: f64| 2.0 / ((2.0 * x).exp() + 1.0) / x;
    let lower = |x: f64| x.tanh() / x;
    let mut a = 0.0;
    for (lo, hi) in [(1.0, 8.0), (8.0, 40.0)] {
        a += tanh_sinh(upper, lo, hi, 1e-15)?.value;
    }
    let b = tanh_sinh(lower, 0.0, 1.0, 1e-15)?.value;
    Ok((a - b).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c6_at_moderate_cutoff() {
        let c = const_c6(1_000_000).unwrap();
        assert!((c.value - 0.068_586_928_786).abs() < 1e-10);
        assert!(c.error < 1e-9);
    }

    #[test]
    fn c21_value() {
        assert!((const_c21().unwrap() - 0.440_969_247_215).abs() < 1e-11);
    }

    #[test]
    fn log_cosh_moment_references() {
        // 40-digit values: Bernoulli series of log cosh on [0, 1], quadrature beyond
        for (sigma, want, c20) in [
            (0.55, 3.587_177_384_858_287_6, 0.058_125_090_205_182_78),
            (0.75, 3.236_145_886_977_779_4, 0.084_023_987_576_495_19),
            (0.95, 18.880_304_162_391_165, 0.021_274_833_948_779_35),
        ] {
            let v = log_cosh_moment(sigma).unwrap();
            assert!((v - want).abs() < 1e-12 * want, "σ = {sigma}: {v}");
            assert!((const_c20(sigma).unwrap() - c20).abs() < 1e-11 * c20);
        }
    }

    #[test]
    fn c10_positive_and_finite() {
        let v = const_c10(0.25).unwrap();
        assert!(v.is_finite() && v > 0.0);
        assert!(const_c10(0.0).is_err());
    }
}
