//! Dedekind zeta functions of the constructed fields for `σ > 1`, and of
//! quadratic fields on the negative half-plane.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::construct::{
    multiquadratic_splitting, splitting_from_polynomial, InertFieldSpec, MultiquadraticSpec, Splitting,
};
use crate::arith::{enumerate_fundamental, sieve_primes, Sign};
use crate::error::{domain, Error, Result};
use crate::lfunc::{dirichlet_l, l_direct};
use crate::special::{gamma_m, gamma_real, ln_gamma, riemann_zeta, riemann_zeta_real};
use crate::sum::Neumaier;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FieldSpec {
    Inert(InertFieldSpec),
    Multiquadratic(MultiquadraticSpec),
}

impl FieldSpec {
    pub fn degree(&self) -> u32 {
        match self {
            FieldSpec::Inert(s) => s.degree as u32,
            FieldSpec::Multiquadratic(s) => s.degree(),
        }
    }

    /// Number of primes with guaranteed behavior.
    pub fn n(&self) -> usize {
        match self {
            FieldSpec::Inert(s) => s.n,
            FieldSpec::Multiquadratic(s) => s.n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldZeta {
    pub sigma: f64,
    /// `ζ_F(σ)` from the Euler product over `p ≤ cutoff`, with interval midpoints
    /// at index divisors.
    pub value: f64,
    /// Bound on the error of `log value` (tail beyond the cutoff plus index divisors).
    pub log_error: f64,
    /// `ζ(dσ)` for inert fields, `ζ(σ)^{2^k}` for multiquadratic ones.
    pub reference: f64,
    /// `log(value/reference)`.
    pub log_ratio: f64,
    /// `(deg + 1)/((σ - 1) n^{σ-1} log n)`; infinite for `n ≤ 1`.
    pub target_bound: f64,
    pub cutoff: u64,
    pub index_divisors: Vec<u64>,
}

/// `Σ_{p > P} c/(p^σ - 1) ≤ c · 1.26 P^{1-σ}/((σ-1) log P) · P^σ/(P^σ - 1)`.
fn prime_tail(c: f64, sigma: f64, cutoff: u64) -> f64 {
    let x = cutoff as f64;
    c * 1.26 * x.powf(1.0 - sigma) / ((sigma - 1.0) * x.ln()) / (1.0 - x.powf(-sigma))
}

fn local_log(spec: &FieldSpec, p: u64, sigma: f64) -> Result<(f64, f64, bool)> {
    match spec {
        FieldSpec::Inert(s) => match splitting_from_polynomial(s, p)? {
            Splitting::Determined { profile, .. } => Ok((profile.log_local_factor(sigma), 0.0, false)),
            Splitting::IndexDivisor { degree, .. } => {
                let hi = -(degree as f64) * (-(sigma * (p as f64).ln()).exp()).ln_1p();
                Ok((hi / 2.0, hi / 2.0, true))
            }
        },
        FieldSpec::Multiquadratic(s) => Ok((multiquadratic_splitting(s, p)?.log_local_factor(sigma), 0.0, false)),
    }
}

pub fn zeta_field_sigma(spec: &FieldSpec, sigma: f64, cutoff: u64) -> Result<FieldZeta> {
    if !(sigma > 1.0) || !sigma.is_finite() {
        return domain(format!("the Euler product needs σ > 1, got {sigma}"));
    }
    let guaranteed = match spec {
        FieldSpec::Inert(s) => s.inert_primes.last().copied().unwrap_or(2),
        FieldSpec::Multiquadratic(s) => crate::arith::nth_prime(s.n.max(1))?,
    };
    if cutoff < guaranteed.max(3) {
        return domain(format!("cutoff {cutoff} is below the guaranteed primes"));
    }
    if cutoff >= 1 << 32 {
        return Err(Error::Unsupported(format!("cutoff {cutoff} ≥ 2^32")));
    }
    let primes = sieve_primes(cutoff)?.primes;
    let parts: Vec<(Neumaier, Neumaier, Vec<u64>)> = primes
        .par_chunks(4096)
        .map(|chunk| -> Result<_> {
            let (mut v, mut e, mut idx) = (Neumaier::new(), Neumaier::new(), Vec::new());
            for &p in chunk {
                let (lv, le, is_idx) = local_log(spec, p, sigma)?;
                v.add(lv);
                e.add(le);
                if is_idx {
                    idx.push(p);
                }
            }
            Ok((v, e, idx))
        })
        .collect::<Result<_>>()?;
    let (mut lv, mut le, mut index_divisors) = (Neumaier::new(), Neumaier::new(), Vec::new());
    for (v, e, i) in parts {
        lv.merge(&v);
        le.merge(&e);
        index_divisors.extend(i);
    }
    let deg = spec.degree() as f64;
    let log_value = lv.value();
    let log_error = le.value() + prime_tail(deg + 1.0, sigma, cutoff);
    let log_reference = match spec {
        FieldSpec::Inert(s) => riemann_zeta_real(s.degree as f64 * sigma)?.ln(),
        FieldSpec::Multiquadratic(_) => deg * riemann_zeta_real(sigma)?.ln(),
    };
    let n = spec.n() as f64;
    let target_bound = if n <= 1.0 {
        f64::INFINITY
    } else {
        (deg + 1.0) / ((sigma - 1.0) * n.powf(sigma - 1.0) * n.ln())
    };
    Ok(FieldZeta {
        sigma,
        value: log_value.exp(),
        log_error,
        reference: log_reference.exp(),
        log_ratio: log_value - log_reference,
        target_bound,
        cutoff,
        index_divisors,
    })
}

/// `ζ_K(s)` on the negative half-plane for `K = Q(√d)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegLineReport {
    pub s: Complex64,
    pub d: i64,
    pub zeta_value: Complex64,
    /// `(Γ_m(s)/|ζ(1-σ)|)² |Δ|^{1/2-σ}`; absent at negative integers, where `Γ_m` has poles.
    pub northcott_lower: Option<f64>,
    /// Set within `1e-6` of a trivial zero of `ζ_K`.
    pub near_zero: bool,
    /// At negative integers: the leading Laurent coefficient and its order.
    pub special_value: Option<SpecialValue>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialValue {
    pub order: u32,
    pub value: f64,
}

fn check_quadratic(d: i64) -> Result<()> {
    if d == 1 || !crate::arith::is_fundamental(d) {
        return domain(format!("{d} is not the discriminant of a quadratic field"));
    }
    Ok(())
}

/// `ζ_K(1 - s)` with `Re(1 - s) > 1`, times the Γ-factor ratio and `|Δ|^{1/2-s}`.
pub fn zeta_k_functional(s: Complex64, d: i64) -> Result<Complex64> {
    check_quadratic(d)?;
    let one = Complex64::new(1.0, 0.0);
    let t = one - s;
    if !(t.re > 1.0) {
        return domain("the functional-equation path needs Re s < 0");
    }
    let zk = riemann_zeta(t)? * dirichlet_l(t, d, None)?.value;
    let lpi = std::f64::consts::PI.ln();
    let l2pi = (2.0 * std::f64::consts::PI).ln();
    // log of the Γ_R² or Γ_C ratio at (1 - s) over s
    let lg = if d > 0 {
        let a = ln_gamma(t / 2.0)? - t / 2.0 * lpi;
        let b = ln_gamma(s / 2.0)? - s / 2.0 * lpi;
        (a - b) * 2.0
    } else {
        (ln_gamma(t)? - t * l2pi) - (ln_gamma(s)? - s * l2pi)
    };
    let disc = (Complex64::new(0.5, 0.0) - s) * (d.unsigned_abs() as f64).ln();
    Ok(zk * (lg + disc).exp())
}

/// `ζ(s) L(s, χ_d)` with each factor continued on its own.
pub fn zeta_k_direct(s: Complex64, d: i64) -> Result<Complex64> {
    check_quadratic(d)?;
    Ok(riemann_zeta(s)? * dirichlet_l(s, d, None)?.value)
}

/// `(Γ_m(s)/|ζ(1-σ)|)² |Δ|^{1/2-σ}`.
pub fn northcott_lower(s: Complex64, d: i64) -> Result<f64> {
    if !(s.re < 0.0) {
        return domain("the lower bound needs Re s < 0");
    }
    let c = gamma_m(s)? / riemann_zeta_real(1.0 - s.re)?;
    Ok(c * c * (d.unsigned_abs() as f64).powf(0.5 - s.re))
}

/// Leading coefficient of `ζ` at `-n`.
fn zeta_special(n: u32) -> Result<SpecialValue> {
    if n == 0 {
        return Ok(SpecialValue { order: 0, value: -0.5 });
    }
    if n % 2 == 1 {
        return Ok(SpecialValue { order: 0, value: riemann_zeta_real(-(n as f64))? });
    }
    // ζ'(-2m) = (-1)^m (2m)! ζ(2m+1)/(2 (2π)^{2m})
    let m = n / 2;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let v = sign * gamma_real(n as f64 + 1.0)? * riemann_zeta_real(n as f64 + 1.0)?
        / (2.0 * (2.0 * std::f64::consts::PI).powi(n as i32));
    Ok(SpecialValue { order: 1, value: v })
}

/// Leading coefficient of `L(s, χ_d)` at `-n`, from
/// `Λ(s) = (q/π)^{(s+a)/2} Γ((s+a)/2) L(s) = Λ(1-s)`.
fn l_special(n: u32, d: i64) -> Result<SpecialValue> {
    let q = d.unsigned_abs() as f64;
    let a = if d > 0 { 0.0 } else { 1.0 };
    let nf = n as f64;
    let qp = q / std::f64::consts::PI;
    let big_lambda = qp.powf((1.0 + nf + a) / 2.0)
        * gamma_real((1.0 + nf + a) / 2.0)?
        * l_direct(1.0 + nf, d, None)?.value;
    if (n as u64 + a as u64) % 2 == 0 {
        // Γ((s+a)/2) has a pole with residue 2(-1)^m/m! in s, m = (n-a)/2
        let m = (nf - a) / 2.0;
        let sign = if (m as u64) % 2 == 0 { 1.0 } else { -1.0 };
        let v = big_lambda * gamma_real(m + 1.0)? * sign / (2.0 * qp.powf((a - nf) / 2.0));
        Ok(SpecialValue { order: 1, value: v })
    } else {
        let v = big_lambda / (qp.powf((a - nf) / 2.0) * gamma_real((a - nf) / 2.0)?);
        Ok(SpecialValue { order: 0, value: v })
    }
}

/// `ζ_K^*(-n)`: the first nonzero Laurent coefficient at `s = -n`.
pub fn zeta_k_special(n: u32, d: i64) -> Result<SpecialValue> {
    check_quadratic(d)?;
    let z = zeta_special(n)?;
    let l = l_special(n, d)?;
    Ok(SpecialValue { order: z.order + l.order, value: z.value * l.value })
}

fn negative_integer(s: Complex64) -> Option<u32> {
    (s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0).then(|| (-s.re) as u32)
}

pub fn zeta_neg_line(s: Complex64, d: i64) -> Result<NegLineReport> {
    check_quadratic(d)?;
    if !(s.re < 0.0) {
        return domain(format!("Re s = {} must be negative", s.re));
    }
    if let Some(n) = negative_integer(s) {
        let sv = zeta_k_special(n, d)?;
        let value = if sv.order == 0 { sv.value } else { 0.0 };
        return Ok(NegLineReport {
            s,
            d,
            zeta_value: Complex64::new(value, 0.0),
            northcott_lower: None,
            near_zero: sv.order > 0,
            special_value: Some(sv),
        });
    }
    let nearest = s.re.round();
    let dist = Complex64::new(s.re - nearest, s.im).norm();
    // trivial zeros: negative even integers for d > 0, all negative integers for d < 0
    let near_zero = dist < 1e-6 && (d < 0 || (nearest as i64) % 2 == 0);
    Ok(NegLineReport {
        s,
        d,
        zeta_value: zeta_k_functional(s, d)?,
        northcott_lower: Some(northcott_lower(s, d)?),
        near_zero,
        special_value: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NorthcottResult {
    pub s: Complex64,
    pub bound: f64,
    /// Every `|Δ|` above this has `|ζ_K(s)| > B` by the lower bound.
    pub disc_cutoff: f64,
    /// `(d, |ζ_K(s)|)` with `|ζ_K(s)| ≤ B`, ascending in `|d|` then `d`.
    pub fields: Vec<(i64, f64)>,
    pub scanned: usize,
}

/// All real and imaginary quadratic fields with `|ζ_K(s)| ≤ B`.
pub fn northcott_enumerate(s: Complex64, bound: f64, max_disc: f64) -> Result<NorthcottResult> {
    if !(s.re < 0.0) {
        return domain("Northcott enumeration needs Re s < 0");
    }
    if negative_integer(s).is_some() {
        return domain("s must not be a negative integer");
    }
    if !(bound > 0.0) {
        return domain("B must be positive");
    }
    let c = northcott_lower(s, 1)?;
    let cutoff = (bound / c).powf(1.0 / (0.5 - s.re));
    if cutoff > max_disc {
        return Err(Error::Unsupported(format!("discriminant cutoff {cutoff:.3e} exceeds {max_disc:.3e}")));
    }
    let ds = enumerate_fundamental(1, cutoff.floor().max(1.0) as u64, Sign::Both)?;
    let ds: Vec<i64> = ds.into_iter().filter(|&d| d != 1).collect();
    let vals: Vec<(i64, f64)> = ds
        .par_iter()
        .map(|&d| Ok((d, zeta_k_functional(s, d)?.norm())))
        .collect::<Result<_>>()?;
    let mut fields: Vec<(i64, f64)> = vals.into_iter().filter(|&(_, v)| v <= bound).collect();
    fields.sort_by_key(|&(d, _)| (d.unsigned_abs(), d));
    Ok(NorthcottResult { s, bound, disc_cutoff: cutoff, fields, scanned: ds.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{build_inert_from, build_inert_polynomial, find_split_primes, FpPoly};
    use crate::lfunc::dedekind_quadratic;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_inert_field_is_q_sqrt5() {
        let spec = build_inert_from(&[FpPoly::new(2, &[1, 1, 1]), FpPoly::new(3, &[1, 0, 1])]).unwrap();
        let z = zeta_field_sigma(&FieldSpec::Inert(spec), 2.0, 200_000).unwrap();
        let (want, err) = dedekind_quadratic(2.0, 5).unwrap();
        assert!((z.value - want).abs() <= want * z.log_error * 1.01 + err);
        assert!(z.log_error < 1e-5);
        assert!(z.index_divisors.is_empty());
    }

    #[test]
    fn multiquadratic_single_generator() {
        let spec = find_split_primes(1, 1).unwrap();
        let z = zeta_field_sigma(&FieldSpec::Multiquadratic(spec), 2.0, 200_000).unwrap();
        let want = riemann_zeta_real(2.0).unwrap() * l_direct(2.0, 17, None).unwrap().value;
        assert!((z.value - want).abs() <= want * z.log_error * 1.01);
        assert!(z.target_bound.is_infinite());
    }

    #[test]
    fn multiquadratic_is_product_of_l_values() {
        let spec = find_split_primes(2, 1).unwrap();
        let z = zeta_field_sigma(&FieldSpec::Multiquadratic(spec), 3.0, 100_000).unwrap();
        let l = |d: i64| l_direct(3.0, d, None).unwrap().value;
        let want = riemann_zeta_real(3.0).unwrap() * l(17) * l(41) * l(17 * 41);
        assert!((z.value / want - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cubic_inert_gap_within_bound() {
        let mut prev = f64::INFINITY;
        for n in [5usize, 10, 20] {
            let spec = build_inert_polynomial(3, n, 1).unwrap();
            let z = zeta_field_sigma(&FieldSpec::Inert(spec), 2.0, 100_000).unwrap();
            assert!(z.log_ratio.abs() + z.log_error <= z.target_bound, "n={n}");
            assert!(z.log_ratio.abs() < prev, "n={n}");
            prev = z.log_ratio.abs();
        }
    }

    #[test]
    fn special_value_at_minus_one() {
        let sv = zeta_k_special(1, 5).unwrap();
        assert_eq!(sv.order, 0);
        assert!((sv.value - 1.0 / 30.0).abs() < 1e-12);
        // imaginary fields vanish at every negative integer
        assert_eq!(zeta_k_special(1, -4).unwrap().order, 1);
        assert_eq!(zeta_k_special(2, 5).unwrap().order, 2);
        let r = zeta_neg_line(c(-1.0, 0.0), 5).unwrap();
        assert!((r.zeta_value.re - 1.0 / 30.0).abs() < 1e-12);
    }

    #[test]
    fn special_values_match_nearby_limits() {
        // order-1 coefficients against a symmetric difference quotient
        let h = 1e-5;
        for (n, d) in [(1u32, -4i64), (2, -7), (0, -3)] {
            let sv = zeta_k_special(n, d).unwrap();
            if sv.order != 1 {
                continue;
            }
            let s0 = -(n as f64);
            let q = (zeta_k_direct(c(s0 + h, 0.0), d).unwrap() - zeta_k_direct(c(s0 - h, 0.0), d).unwrap()) / (2.0 * h);
            assert!((q.re - sv.value).abs() < 1e-6 * (1.0 + sv.value.abs()), "n={n} d={d}");
        }
    }

    #[test]
    fn two_paths_agree() {
        for s in [c(-0.5, 0.0), c(-1.3, 0.0), c(-0.7, 3.0)] {
            for d in [5i64, 8, 12, -4, -7] {
                let a = zeta_k_functional(s, d).unwrap();
                let b = zeta_k_direct(s, d).unwrap();
                assert!((a - b).norm() < 1e-8 * (1.0 + a.norm()), "s={s} d={d}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn lower_bound_holds() {
        for s in [c(-0.5, 0.0), c(-1.3, 2.0), c(-2.5, 0.1), c(-0.2, 7.0)] {
            for d in [5i64, 8, 13, -3, -4, -20, 1001] {
                let r = zeta_neg_line(s, d).unwrap();
                assert!(r.zeta_value.norm() >= r.northcott_lower.unwrap() * (1.0 - 1e-9), "s={s} d={d}");
            }
        }
    }

    #[test]
    fn northcott_small_bound() {
        let s = c(-0.5, 0.0);
        let r = northcott_enumerate(s, 1.0, 1e6).unwrap();
        assert!(r.disc_cutoff.is_finite() && !r.fields.is_empty());
        for &(d, v) in &r.fields {
            assert!(v <= 1.0 && (d.unsigned_abs() as f64) <= r.disc_cutoff);
        }
        let tiny = northcott_enumerate(s, 1e-9, 1e6).unwrap();
        assert!(tiny.fields.is_empty());
        assert!(northcott_enumerate(c(-1.0, 0.0), 1.0, 1e6).is_err());
    }
}
