//! The random Euler product `L(σ, X) = Π_{p ≤ y} (1 - X_p p^{-σ})^{-1}` with
//! independent fair signs `X_p`, its tail probabilities, the limiting density
//! formulas for small and large values, and empirical densities over
//! quadratic fields.
//!
//! Sample `i` draws its signs from the ChaCha8 stream `i` of the seed, and the
//! `j`-th prime always uses bit `j` of that stream. Results therefore depend
//! neither on the number of workers nor on `y` beyond the primes included.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{enumerate_fundamental, sieve_primes, Sign};
use crate::error::{domain, Result};
use crate::lfunc::l_direct;
use crate::special::{const_c20, const_c21, riemann_zeta_real, EULER_GAMMA};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomEulerSpec {
    pub sigma: f64,
    /// Prime cutoff.
    pub y: u64,
    pub samples: usize,
    pub seed: u64,
}

impl RandomEulerSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.5 && self.sigma <= 1.0) {
            return domain(format!("σ = {} not in (1/2, 1]", self.sigma));
        }
        if self.samples == 0 {
            return domain("need at least one sample");
        }
        Ok(())
    }
}

/// Per-prime `(-log(1 - p^{-σ}), -log(1 + p^{-σ}))`.
fn log_factors(sigma: f64, y: u64) -> Result<Vec<(f64, f64)>> {
    if y < 2 {
        return Ok(Vec::new());
    }
    Ok(sieve_primes(y)?
        .primes
        .iter()
        .map(|&p| {
            let t = (p as f64).powf(-sigma);
            (-(-t).ln_1p(), -t.ln_1p())
        })
        .collect())
}

fn sample_log(factors: &[(f64, f64)], seed: u64, index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut acc = 0.0;
    let mut bits = 0u64;
    for (j, &(plus, minus)) in factors.iter().enumerate() {
        if j % 64 == 0 {
            bits = rng.next_u64();
        }
        acc += if bits >> (j % 64) & 1 == 1 { plus } else { minus };
    }
    acc
}

/// `log L(σ, X)` for each sample.
pub fn sample_log_random_euler(spec: &RandomEulerSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let factors = log_factors(spec.sigma, spec.y)?;
    Ok((0..spec.samples as u64).into_par_iter().map(|i| sample_log(&factors, spec.seed, i)).collect())
}

pub fn sample_random_euler(spec: &RandomEulerSpec) -> Result<Vec<f64>> {
    Ok(sample_log_random_euler(spec)?.into_iter().map(f64::exp).collect())
}

/// `E L = Π (1 - p^{-2σ})^{-1}` and
/// `E L² = Π ½[(1 - p^{-σ})^{-2} + (1 + p^{-σ})^{-2}]` over `p ≤ y`.
pub fn closed_form_moments(sigma: f64, y: u64) -> Result<(f64, f64)> {
    let (mut m1, mut m2) = (0.0, 0.0);
    for (a, b) in log_factors(sigma, y)? {
        // a = -log(1 - t), b = -log(1 + t)
        m1 += a + b;
        m2 += (0.5 * ((2.0 * a).exp() + (2.0 * b).exp())).ln();
    }
    Ok((m1.exp(), m2.exp()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `P(L ≤ B)`.
    Lower,
    /// `P(L ≥ B)`.
    Upper,
}

impl std::str::FromStr for Side {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(Side::Lower),
            "upper" => Ok(Side::Upper),
            _ => domain(format!("side must be lower or upper, got {s}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub b: f64,
    pub side: Side,
    pub hits: usize,
    pub total: usize,
    pub empirical: f64,
    /// 95% normal-approximation half-width.
    pub half_width: f64,
    /// One-sided 95% upper bound `1 - 0.05^{1/n}` when there are no hits.
    pub zero_hit_bound: Option<f64>,
    /// Limiting density formula, when defined at this `B`.
    pub prediction: Option<f64>,
}

fn tail_report(values: &[f64], b: f64, side: Side) -> Result<DensityReport> {
    if !(b > 0.0) {
        return domain(format!("B = {b} must be positive"));
    }
    if values.is_empty() {
        return domain("no values");
    }
    let hits = values
        .iter()
        .filter(|&&v| match side {
            Side::Lower => v <= b,
            Side::Upper => v >= b,
        })
        .count();
    let n = values.len() as f64;
    let p = hits as f64 / n;
    Ok(DensityReport {
        b,
        side,
        hits,
        total: values.len(),
        empirical: p,
        half_width: 1.96 * (p * (1.0 - p) / n).sqrt(),
        zero_hit_bound: (hits == 0).then(|| 1.0 - 0.05f64.powf(1.0 / n)),
        prediction: None,
    })
}

/// Monte-Carlo tail probability over a sample set; the prediction is the
/// density formula at `σ` when it is defined.
pub fn mc_tail(samples: &[f64], sigma: f64, b: f64, side: Side) -> Result<DensityReport> {
    let mut r = tail_report(samples, b, side)?;
    r.prediction = prediction(sigma, b, side);
    Ok(r)
}

fn prediction(sigma: f64, b: f64, side: Side) -> Option<f64> {
    if sigma == 1.0 {
        (side == Side::Lower).then(|| gs_prediction(b).ok()).flatten()
    } else {
        lamzouri_prediction(sigma, b, side).ok()
    }
}

/// `exp(-c20(σ) log(|ζ(σ)|/B)^{1/(1-σ)} log log(|ζ(σ)|/B)^{σ/(1-σ)})` for the
/// lower tail, with `B/|ζ(σ)|` in place of `|ζ(σ)|/B` for the upper tail.
/// Needs the inner logarithm to exceed 1.
pub fn lamzouri_prediction(sigma: f64, b: f64, side: Side) -> Result<f64> {
    if !(sigma > 0.5 && sigma < 1.0) {
        return domain(format!("σ = {sigma} not in (1/2, 1)"));
    }
    if !(b > 0.0) {
        return domain("B must be positive");
    }
    let z = riemann_zeta_real(sigma)?.abs();
    let u = match side {
        Side::Lower => (z / b).ln(),
        Side::Upper => (b / z).ln(),
    };
    if !(u > 1.0) {
        return domain(format!("log ratio {u} must exceed 1"));
    }
    let e = 1.0 / (1.0 - sigma);
    Ok((-const_c20(sigma)? * u.powf(e) * u.ln().powf(sigma * e)).exp())
}

/// `exp(-c21 e^u/u)` with `u = ζ(2)/(B e^{γ0}) ≥ 1`.
pub fn gs_prediction(b: f64) -> Result<f64> {
    if !(b > 0.0) {
        return domain("B must be positive");
    }
    let u = riemann_zeta_real(2.0)? / (b * EULER_GAMMA.exp());
    if u < 1.0 - 1e-12 {
        return domain(format!("B = {b} too large: ζ(2)/(B e^γ) = {u} < 1"));
    }
    Ok((-const_c21()? * u.exp() / u).exp())
}

/// `h_σ(K)` over real and imaginary quadratic fields with `|Δ| ≤ X`:
/// `|ζ(σ) L(σ, χ_d)|` for `σ < 1` and `|L(1, χ_d)|` at `σ = 1`.
pub fn quadratic_heights(sigma: f64, x: f64) -> Result<Vec<(i64, f64)>> {
    if !(sigma > 0.5 && sigma <= 1.0) {
        return domain(format!("σ = {sigma} not in (1/2, 1]"));
    }
    if !(x >= 100.0) {
        return domain(format!("X = {x} must be at least 100"));
    }
    let scale = if sigma == 1.0 { 1.0 } else { riemann_zeta_real(sigma)?.abs() };
    let ds: Vec<i64> = enumerate_fundamental(2, x.floor() as u64, Sign::Both)?;
    ds.par_iter()
        .map(|&d| Ok((d, scale * l_direct(sigma, d, None)?.value.abs())))
        .collect()
}

pub fn empirical_density(sigma: f64, x: f64, bs: &[f64], side: Side) -> Result<Vec<DensityReport>> {
    let heights: Vec<f64> = quadratic_heights(sigma, x)?.into_iter().map(|(_, h)| h).collect();
    bs.iter()
        .map(|&b| {
            let mut r = tail_report(&heights, b, side)?;
            r.prediction = prediction(sigma, b, side);
            Ok(r)
        })
        .collect()
}
