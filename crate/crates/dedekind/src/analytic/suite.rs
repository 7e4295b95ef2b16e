//! A fixed battery of finite identity checks with their observed deviations.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::eta::{eta_closed_form_1, eta_product, EulerProductSpec};
use super::identities::{h_abs_sum, multiplicative_identity_check, rankin_tail_center, rankin_tail_right};
use super::laurent::{residue_integrand, residue_lemma_with, ResidueMode};
use crate::arith::{primes_between, Weights};
use crate::error::Result;
use crate::quad::circle_integral;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, devs: &[f64], tolerance: f64) -> Self {
        let max_deviation = devs.iter().copied().fold(0.0, f64::max);
        Check {
            name: name.into(),
            cases: devs.len(),
            max_deviation,
            tolerance,
            pass: devs.iter().all(|d| d.is_finite() && *d <= tolerance),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub pass: bool,
    pub checks: Vec<Check>,
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

/// `count` triples `(a, r, s)` of odd, pairwise coprime integers built from
/// distinct primes below 100, with `a` prime or 1 and `r, s` squarefree with
/// at most two prime factors.
pub fn admissible_triples(count: usize, seed: u64) -> Result<Vec<(u64, u64, u64)>> {
    let odd: Vec<u64> = primes_between(3, 100)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut ps = odd.clone();
        ps.shuffle(&mut rng);
        let mut it = ps.into_iter();
        let mut take = |k: usize| -> u64 { (&mut it).take(k).product() };
        let a = take(rng.gen_range(0..=1));
        let r = take(rng.gen_range(0..=2));
        let s = take(rng.gen_range(0..=2));
        out.push((a, r, s));
    }
    Ok(out)
}

/// `η(1; a²rs)` at `P = 10⁶` against the closed form.
pub fn eta_closed_form_deviations(triples: &[(u64, u64, u64)]) -> Result<Vec<f64>> {
    let spec = EulerProductSpec::new(1_000_000);
    triples
        .iter()
        .map(|&(a, r, s)| Ok(rel(eta_product(1.0, a * a * r * s, &spec)?.value, eta_closed_form_1(a, r, s)?)))
        .collect()
}

/// Every prime support of size at most 3 below 100, in ascending order.
pub fn small_supports() -> Result<Vec<Vec<u64>>> {
    let ps = primes_between(2, 100)?;
    let mut out = vec![];
    for i in 0..ps.len() {
        out.push(vec![ps[i]]);
        for j in i + 1..ps.len() {
            out.push(vec![ps[i], ps[j]]);
            for k in j + 1..ps.len() {
                out.push(vec![ps[i], ps[j], ps[k]]);
            }
        }
    }
    Ok(out)
}

pub fn multiplicative_deviations(w: &Weights, supports: &[Vec<u64>], t_max: u32) -> Result<Vec<f64>> {
    let mut out = vec![];
    for sup in supports {
        let w = w.clone().restricted_to(sup);
        for t in 0..=t_max {
            let (l, r) = multiplicative_identity_check(&w, t)?;
            out.push(rel(l, r));
        }
    }
    Ok(out)
}

/// Configurations `(X, a, r, s)` for the residue checks.
pub const RESIDUE_CONFIGS: [(f64, u64, u64, u64); 5] =
    [(1e4, 1, 1, 1), (1e5, 1, 3, 5), (1e5, 3, 5, 7), (1e6, 1, 15, 7), (1e4, 5, 3, 1)];

/// Series residue against a 256-point circle of radius 0.1.
pub fn residue_contour_deviation(x: f64, a: u64, r: u64, s: u64, spec: &EulerProductSpec) -> Result<f64> {
    let series = residue_lemma_with(x, a, r, s, ResidueMode::Series, spec)?;
    // a failed evaluation turns into NaN, which fails the comparison
    let contour = circle_integral(
        |w| residue_integrand(w, x, a, r, s, spec).unwrap_or(Complex64::new(f64::NAN, 0.0)),
        Complex64::new(0.0, 0.0),
        0.1,
        256,
    );
    if !contour.re.is_finite() {
        return Ok(f64::NAN);
    }
    Ok(rel(series, contour.re))
}

/// `(series - leading)/log²(X/rs)` at `X = 10³, …, 10⁶`.
pub fn residue_lower_order(a: u64, r: u64, s: u64, spec: &EulerProductSpec) -> Result<Vec<f64>> {
    [1e3, 1e4, 1e5, 1e6]
        .iter()
        .map(|&x| {
            let se = residue_lemma_with(x, a, r, s, ResidueMode::Series, spec)?;
            let le = residue_lemma_with(x, a, r, s, ResidueMode::Leading, spec)?;
            Ok((se - le) / (x / (r * s) as f64).ln().powi(2))
        })
        .collect()
}

pub fn identity_suite() -> Result<SuiteReport> {
    let mut checks = vec![];

    let triples = admissible_triples(50, 2024)?;
    checks.push(Check::new("eta_product_vs_closed_form", &eta_closed_form_deviations(&triples)?, 1e-8));

    let supports = small_supports()?;
    let mut devs = multiplicative_deviations(&Weights::center(2.0)?, &supports, 3)?;
    devs.extend(multiplicative_deviations(&Weights::right(2.0, 0.75)?, &supports, 3)?);
    checks.push(Check::new("multiplicative_identity", &devs, 1e-10));

    let spec = EulerProductSpec::new(100_000);
    let devs: Vec<f64> = RESIDUE_CONFIGS
        .iter()
        .map(|&(x, a, r, s)| residue_contour_deviation(x, a, r, s, &spec))
        .collect::<Result<_>>()?;
    checks.push(Check::new("residue_series_vs_contour", &devs, 1e-6));

    // a cubic remainder would move the ratio by about 20% between 10⁵ and 10⁶
    let devs: Vec<f64> = RESIDUE_CONFIGS
        .iter()
        .map(|&(_, a, r, s)| {
            let v = residue_lower_order(a, r, s, &spec)?;
            Ok(rel(v[3], v[2]))
        })
        .collect::<Result<_>>()?;
    checks.push(Check::new("residue_lower_order_bounded", &devs, 0.05));

    // majorant and Rankin tails report slack as bound violation (0 when it holds)
    let over = |v: f64, b: f64| if v <= b { 0.0 } else { (v - b) / b.abs().max(f64::MIN_POSITIVE) };
    let mut devs = vec![];
    for sup in supports.iter().filter(|s| s.len() == 3).take(50) {
        let w = Weights::right(2.0, 0.75)?.restricted_to(sup);
        for t in 0..=3 {
            let (s, m) = h_abs_sum(&w, t)?;
            devs.push(over(s, m));
        }
        let c = Weights::center(2.0)?.restricted_to(sup);
        let t = rankin_tail_center(&c, 50.0, 0.1, 1e4)?;
        devs.push(over(t.empirical, t.bound));
        let t = rankin_tail_right(&w, 50.0, 0.3, 2.0)?;
        devs.push(over(t.empirical, t.bound));
    }
    checks.push(Check::new("majorants_and_rankin_tails", &devs, 0.0));

    Ok(SuiteReport { pass: checks.iter().all(|c| c.pass), checks })
}
