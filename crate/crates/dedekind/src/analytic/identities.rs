//! Sum-to-product identities over coprime triples `(a, r, s)`, the predicted
//! Euler products of the resonated moments, and Rankin-type tail bounds.

use serde::{Deserialize, Serialize};

use crate::arith::{
    fgh_values, h_func, h_mult, mobius, sigma, tau, Regime, Weights,
};
use crate::error::{domain, Error, Result};
use crate::sum::Neumaier;

const MAX_BRUTE_PRIMES: usize = 11;

fn finite_support(w: &Weights, cap: usize) -> Result<Vec<u64>> {
    let s = w.support_primes(None)?;
    if s.len() > cap {
        return Err(Error::Unsupported(format!(
            "{} support primes; brute force is limited to {cap}",
            s.len()
        )));
    }
    Ok(s)
}

/// Every way to place each support prime in `a`, `r`, `s` or none of them.
fn for_each_triple(primes: &[u64], mut f: impl FnMut(u64, u64, u64)) {
    let k = primes.len();
    let total = 4usize.pow(k as u32);
    for code in 0..total {
        let (mut a, mut r, mut s) = (1u64, 1u64, 1u64);
        let mut c = code;
        for &p in primes {
            match c % 4 {
                1 => a *= p,
                2 => r *= p,
                3 => s *= p,
                _ => {}
            }
            c /= 4;
        }
        f(a, r, s);
    }
}

/// `μ(a)² f(a)²/h(a) · μ(r) f(r) τ(r) √r/(σ(r) h(r)) · (same for s)`,
/// computed from the arithmetic functions directly.
pub fn triple_weight(w: &Weights, a: u64, r: u64, s: u64) -> Result<f64> {
    let wa = (mobius(a)? as f64).powi(2) * w.f(a)?.powi(2) / h_func(a)?;
    let side = |n: u64| -> Result<f64> {
        Ok(mobius(n)? as f64 * w.f(n)? * tau(n)? as f64 * (n as f64).sqrt()
            / (sigma(n)? as f64 * h_func(n)?))
    };
    Ok(wa * side(r)? * side(s)?)
}

fn tuples(primes: &[u64], t: u32, mut f: impl FnMut(&[u64])) {
    let mut cur = vec![0usize; t as usize];
    if primes.is_empty() {
        if t == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0u64; t as usize];
    loop {
        for (b, &i) in buf.iter_mut().zip(&cur) {
            *b = primes[i];
        }
        f(&buf);
        let mut k = 0;
        loop {
            if k == cur.len() {
                return;
            }
            cur[k] += 1;
            if cur[k] < primes.len() {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

/// Both sides of
/// `Σ_{a,r,s} (weights) log^t(rs) = (Σ_{ℓ1..ℓt} H(ℓ1⋯ℓt)) Π_p F(p)`
/// over a finite prime support. Returns `(lhs, rhs)`.
pub fn multiplicative_identity_check(w: &Weights, t: u32) -> Result<(f64, f64)> {
    if t > 4 {
        return domain(format!("t = {t} > 4 not supported"));
    }
    let primes = finite_support(w, MAX_BRUTE_PRIMES)?;
    let mut lhs = Neumaier::new();
    let mut err = None;
    for_each_triple(&primes, |a, r, s| match triple_weight(w, a, r, s) {
        Ok(v) => lhs.add(v * ((r * s) as f64).ln().powi(t as i32)),
        Err(e) => err = Some(e),
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut f_prod = 1.0;
    for &p in &primes {
        f_prod *= fgh_values(p, 1, w)?.f_big;
    }
    let mut h_sum = Neumaier::new();
    let mut err = None;
    tuples(&primes, t, |ls| match h_mult(ls.iter().product(), w) {
        Ok(v) => h_sum.add(v),
        Err(e) => err = Some(e),
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok((lhs.value(), h_sum.value() * f_prod))
}

/// `Σ_{ℓ1..ℓt} |H(ℓ1⋯ℓt)|` and the majorant `(Σ_p log p · max(1, |c_p|))^t`,
/// where `H(p^k) = c_p log^k p`.
pub fn h_abs_sum(w: &Weights, t: u32) -> Result<(f64, f64)> {
    let primes = finite_support(w, 64)?;
    let mut sum = Neumaier::new();
    let mut err = None;
    tuples(&primes, t, |ls| match h_mult(ls.iter().product(), w) {
        Ok(v) => sum.add(v.abs()),
        Err(e) => err = Some(e),
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut base = 0.0;
    for &p in &primes {
        let lp = (p as f64).ln();
        let c = fgh_values(p, 1, w)?.h / lp;
        base += lp * c.abs().max(1.0);
    }
    Ok((sum.value(), base.powi(t as i32)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    M1Center,
    M2Center,
    M1Right,
    M2Right,
    /// `k = 2D`.
    DGeneral(f64),
}

/// `Π_p (1 + f(p)² - k f(p)/p^σ)` over the support of `f`, capped at
/// `cutoff` when the support is unbounded.
pub fn predicted_product(kind: ProductKind, w: &Weights, cutoff: Option<u64>) -> Result<f64> {
    let sigma = match w.regime {
        Regime::Center => 0.5,
        Regime::Right { sigma } => sigma,
    };
    let k = match kind {
        ProductKind::M1Center | ProductKind::M2Center if w.regime != Regime::Center => {
            return domain("center products need center-regime weights");
        }
        ProductKind::M1Right | ProductKind::M2Right if w.regime == Regime::Center => {
            return domain("right products need right-regime weights");
        }
        ProductKind::M1Center | ProductKind::M1Right => 2.0,
        ProductKind::M2Center | ProductKind::M2Right => 4.0,
        ProductKind::DGeneral(d) => {
            if !(d > 0.0) {
                return domain(format!("D = {d} must be positive"));
            }
            2.0 * d
        }
    };
    let mut lg = Neumaier::new();
    for p in w.support_primes(cutoff)? {
        let f = w.f_prime(p);
        let x = p as f64;
        let term = 1.0 + f * f - k * f * x.powf(-sigma);
        if term <= 0.0 {
            return domain(format!("local factor at p = {p} is not positive"));
        }
        lg.add(term.ln());
    }
    Ok(lg.value().exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankinTail {
    pub empirical: f64,
    pub bound: f64,
}

/// Center regime: `|Σ_{ar > N or as > N}| (weights) log³(X/rs)|` against
/// `(log X + log R)³ N^{-α} Π_p (1 + f² p^α + 4 f p^{α-1/2})`,
/// with `R` the product of the support primes.
pub fn rankin_tail_center(w: &Weights, n: f64, alpha: f64, x: f64) -> Result<RankinTail> {
    if w.regime != Regime::Center {
        return domain("center tail needs center-regime weights");
    }
    if !(alpha > 0.0) || !(n > 0.0) || !(x > 1.0) {
        return domain("need α > 0, N > 0, X > 1");
    }
    let primes = finite_support(w, MAX_BRUTE_PRIMES)?;
    let lx = x.ln();
    let mut acc = Neumaier::new();
    let mut err = None;
    for_each_triple(&primes, |a, r, s| {
        if (a * r) as f64 > n || (a * s) as f64 > n {
            match triple_weight(w, a, r, s) {
                Ok(v) => acc.add(v * (lx - ((r * s) as f64).ln()).powi(3)),
                Err(e) => err = Some(e),
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let log_r: f64 = primes.iter().map(|&p| (p as f64).ln()).sum();
    let mut lg = 0.0;
    for &p in &primes {
        let f = w.f_prime(p);
        let xp = p as f64;
        lg += (1.0 + f * f * xp.powf(alpha) + 4.0 * f * xp.powf(alpha - 0.5)).ln();
    }
    let bound = (lx + log_r).powi(3) * (-alpha * n.ln() + lg).exp();
    Ok(RankinTail { empirical: acc.value().abs(), bound })
}

/// Squarefree products of `primes` with their weight `Π g(p)`, sorted by value.
fn weighted_squarefree(primes: &[u64], g: impl Fn(u64) -> f64) -> Result<Vec<(f64, f64)>> {
    if primes.len() > 24 {
        return Err(Error::Unsupported(format!("{} primes in the tail enumeration", primes.len())));
    }
    let mut out = vec![(1.0f64, 1.0f64)];
    for &p in primes {
        let gp = g(p);
        let n = out.len();
        for i in 0..n {
            let (v, wt) = out[i];
            out.push((v * p as f64, wt * gp));
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}

/// Suffix sums: `suffix[i] = Σ_{j ≥ i} weight_j`.
fn suffix_sums(v: &[(f64, f64)]) -> Vec<f64> {
    let mut s = vec![0.0; v.len() + 1];
    for i in (0..v.len()).rev() {
        s[i] = s[i + 1] + v[i].1;
    }
    s
}

/// Right regime: `Σ_{ar > N or as > N} μ(a)² f(a)² · μ(r)² f(r) ε_D(r) r^{-σ} · (same for s)`
/// against `2 N^{-α} Π_p (1 + D f p^{-σ})(1 + f² p^α + D f p^{α-σ})`, `0 < α < 2σ-1`.
pub fn rankin_tail_right(w: &Weights, n: f64, alpha: f64, big_d: f64) -> Result<RankinTail> {
    let sigma = match w.regime {
        Regime::Right { sigma } => sigma,
        Regime::Center => return domain("right tail needs right-regime weights"),
    };
    if !(alpha > 0.0 && alpha < 2.0 * sigma - 1.0) {
        return domain(format!("α = {alpha} must lie in (0, 2σ - 1)"));
    }
    if !(n > 0.0) || !(big_d > 0.0) {
        return domain("need N > 0 and D > 0");
    }
    let primes = w.support_primes(None)?;
    let g = |p: u64| big_d * w.f_prime(p) * (p as f64).powf(-sigma);
    let fa = |p: u64| w.f_prime(p).powi(2);
    let rs = weighted_squarefree(&primes, g)?;
    let avals = weighted_squarefree(&primes, fa)?;
    let r_suffix = suffix_sums(&rs);
    let a_suffix = suffix_sums(&avals);
    let g_tot = r_suffix[0];
    // a > N: every (r, s) qualifies
    let first_big_a = avals.partition_point(|e| e.0 <= n);
    let mut acc = Neumaier::new();
    acc.add(a_suffix[first_big_a] * g_tot * g_tot);
    for &(a, wa) in &avals[..first_big_a] {
        // pairs (r, s) with r > N/a or s > N/a: G² - G(N/a)² = U(2G - U)
        let i = rs.partition_point(|e| e.0 <= n / a);
        let u = r_suffix[i];
        acc.add(wa * u * (2.0 * g_tot - u));
    }
    let mut lg = 0.0;
    for &p in &primes {
        let f = w.f_prime(p);
        let xp = p as f64;
        lg += (1.0 + big_d * f * xp.powf(-sigma)).ln()
            + (1.0 + f * f * xp.powf(alpha) + big_d * f * xp.powf(alpha - sigma)).ln();
    }
    let bound = 2.0 * (-alpha * n.ln() + lg).exp();
    Ok(RankinTail { empirical: acc.value(), bound })
}
