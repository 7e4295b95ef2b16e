//! Resonators `R(8d) = Σ_{l ≤ N} μ(l) f(l) χ_{8d}(l)`, the resonated moments
//! over the family `8d`, and scans for small `|L(σ, χ_{8d})|`.
//!
//! All window sums run over contiguous chunks of the family in ascending `d`;
//! chunk results are merged in chunk order, so the output does not depend on
//! the number of worker threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{predicted_product, ProductKind};
use crate::arith::{family_8d, kronecker, Regime, Weights};
use crate::error::{domain, Result};
use crate::lfunc::l_direct;
use crate::special::const_c5;
use crate::sum::Neumaier;

/// Family members per work unit.
const CHUNK: usize = 64;
/// Prime cutoff for the predicted Euler products when the support is unbounded.
const PRED_CUTOFF: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonatorSpec {
    pub regime: Regime,
    /// Truncation `l ≤ N`.
    pub n: u64,
    /// Resonance parameter.
    pub l: f64,
    /// Window parameter.
    pub x: f64,
}

/// `√(log N log log N)`, or 0 when `log log N ≤ 0`.
pub fn default_center_l(n: u64) -> f64 {
    let ln = (n as f64).ln();
    if ln <= 1.0 {
        0.0
    } else {
        (ln * ln.ln()).sqrt()
    }
}

impl ResonatorSpec {
    /// Center regime with `L = √(log N log log N)`; requires `N ≤ X^{1/20}`.
    pub fn center(x: f64, n: u64) -> Result<Self> {
        if !(x > 1.0) {
            return domain(format!("X = {x} must exceed 1"));
        }
        if n == 0 {
            return domain("N must be at least 1");
        }
        if (n as f64) > x.powf(0.05) {
            return domain(format!("N = {n} exceeds X^(1/20) = {:.4}", x.powf(0.05)));
        }
        Ok(Self { regime: Regime::Center, n, l: default_center_l(n), x })
    }

    /// Right regime with `L = √(log X)` and `N = X` unless given.
    pub fn right(x: f64, sigma: f64, n: Option<u64>) -> Result<Self> {
        if !(x > 1.0) {
            return domain(format!("X = {x} must exceed 1"));
        }
        if !(sigma > 0.5 && sigma < 1.0) {
            return domain(format!("right regime needs 1/2 < σ < 1, got {sigma}"));
        }
        let n = n.unwrap_or(x.floor() as u64);
        if n == 0 {
            return domain("N must be at least 1");
        }
        Ok(Self { regime: Regime::Right { sigma }, n, l: x.ln().sqrt(), x })
    }

    /// Replace `L`, keeping everything else.
    pub fn with_l(mut self, l: f64) -> Result<Self> {
        if !(l > 0.0) || !l.is_finite() {
            return domain(format!("L = {l} must be positive"));
        }
        self.l = l;
        Ok(self)
    }

    pub fn sigma(&self) -> f64 {
        match self.regime {
            Regime::Center => 0.5,
            Regime::Right { sigma } => sigma,
        }
    }

    /// The `d`-window: `[X/16, X/8]` at the center, `[X/8, 5X/16]` to the right.
    pub fn window(&self) -> (f64, f64) {
        match self.regime {
            Regime::Center => (self.x / 16.0, self.x / 8.0),
            Regime::Right { .. } => (self.x / 8.0, 5.0 * self.x / 16.0),
        }
    }

    /// The resonator weight `f`.
    ///
    /// At the center the support `[L², exp(log² L)]` is empty unless
    /// `L ≥ e²`; in particular `f ≡ 0` whenever the default `L` is not positive.
    pub fn weights(&self) -> Result<Weights> {
        match self.regime {
            Regime::Center => {
                if self.l <= 1.0 {
                    return Ok(Weights { regime: Regime::Center, l: self.l, upper: 1.0, restrict: Some(Vec::new()) });
                }
                Weights::center(self.l)
            }
            Regime::Right { sigma } => Weights::right(self.l, sigma),
        }
    }

    /// The family `8d` with `d` in the window.
    pub fn family(&self) -> Vec<u64> {
        let (lo, hi) = self.window();
        family_8d(lo, hi)
    }
}

/// The coefficients of `R` restricted to primes `≤ N` of the support.
#[derive(Debug, Clone)]
pub struct Resonator {
    n: u64,
    primes: Vec<u64>,
    f: Vec<f64>,
}

impl Resonator {
    pub fn new(spec: &ResonatorSpec) -> Result<Self> {
        if spec.n == 0 {
            return domain("N must be at least 1");
        }
        let w = spec.weights()?;
        let primes: Vec<u64> = if spec.n < 2 { Vec::new() } else { w.support_primes(Some(spec.n))? };
        let f = primes.iter().map(|&p| w.f_prime(p)).collect();
        Ok(Self { n: spec.n, primes, f })
    }

    pub fn support(&self) -> &[u64] {
        &self.primes
    }

    /// `R(8d)`.
    pub fn value(&self, d: u64) -> f64 {
        let chi: Vec<f64> = self.primes.iter().map(|&p| kronecker(8 * d as i64, p as i64) as f64).collect();
        let mut acc = Neumaier::new();
        self.dfs(&chi, 0, 1, 1.0, &mut acc);
        acc.value()
    }

    // squarefree l ≤ N built from primes[start..] in increasing order
    fn dfs(&self, chi: &[f64], start: usize, l: u64, v: f64, acc: &mut Neumaier) {
        acc.add(v);
        for i in start..self.primes.len() {
            let Some(next) = l.checked_mul(self.primes[i]).filter(|&m| m <= self.n) else {
                break;
            };
            if chi[i] != 0.0 {
                self.dfs(chi, i + 1, next, -v * self.f[i] * chi[i], acc);
            }
        }
    }
}

/// `R(8d)` for one family member.
pub fn resonator_value(d: u64, spec: &ResonatorSpec) -> Result<f64> {
    if d % 2 == 0 || !crate::arith::is_squarefree(d)? {
        return domain(format!("d = {d} is not odd squarefree"));
    }
    Ok(Resonator::new(spec)?.value(d))
}

/// Empirical resonated moments and their by-products.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMoments {
    /// `Σ R² L`.
    pub m1: f64,
    /// `Σ R² L²`.
    pub m2: f64,
    /// Propagated L-evaluation error of `m1` and `m2`.
    pub m1_error: f64,
    pub m2_error: f64,
    /// `Σ R²` over all members, and over members with certainly nonzero `L`.
    pub sum_r2: f64,
    pub sum_r2_nonzero: f64,
    pub count: usize,
    /// Members whose `L`-value sign is not certain.
    pub indeterminate: Vec<u64>,
}

#[derive(Default)]
struct Partial {
    m1: Neumaier,
    m2: Neumaier,
    e1: Neumaier,
    e2: Neumaier,
    r2: Neumaier,
    r2_nz: Neumaier,
    count: usize,
    indeterminate: Vec<u64>,
}

impl Partial {
    fn merge(&mut self, o: Partial) {
        self.m1.merge(&o.m1);
        self.m2.merge(&o.m2);
        self.e1.merge(&o.e1);
        self.e2.merge(&o.e2);
        self.r2.merge(&o.r2);
        self.r2_nz.merge(&o.r2_nz);
        self.count += o.count;
        self.indeterminate.extend(o.indeterminate);
    }
}

/// Moments over the given family members (odd squarefree `d`), summed in the order given.
pub fn empirical_moments_over(spec: &ResonatorSpec, ds: &[u64]) -> Result<EmpiricalMoments> {
    let res = Resonator::new(spec)?;
    let sigma = spec.sigma();
    let parts: Vec<Partial> = ds
        .par_chunks(CHUNK)
        .map(|chunk| -> Result<Partial> {
            let mut p = Partial::default();
            for &d in chunk {
                let r = res.value(d);
                let r2 = r * r;
                let lv = l_direct(sigma, 8 * d as i64, None)?;
                p.m1.add(r2 * lv.value);
                p.m2.add(r2 * lv.value * lv.value);
                p.e1.add(r2 * lv.error);
                p.e2.add(r2 * lv.error * (2.0 * lv.value.abs() + lv.error));
                p.r2.add(r2);
                if lv.sign_certain() {
                    p.r2_nz.add(r2);
                } else {
                    p.indeterminate.push(d);
                }
                p.count += 1;
            }
            Ok(p)
        })
        .collect::<Result<_>>()?;
    let mut total = Partial::default();
    for p in parts {
        total.merge(p);
    }
    Ok(EmpiricalMoments {
        m1: total.m1.value(),
        m2: total.m2.value(),
        m1_error: total.e1.value(),
        m2_error: total.e2.value(),
        sum_r2: total.r2.value(),
        sum_r2_nonzero: total.r2_nz.value(),
        count: total.count,
        indeterminate: total.indeterminate,
    })
}

/// Moments over the spec's window.
pub fn empirical_moments(spec: &ResonatorSpec) -> Result<EmpiricalMoments> {
    let fam = spec.family();
    if fam.is_empty() {
        let (lo, hi) = spec.window();
        return domain(format!("the window [{lo}, {hi}] has no family members"));
    }
    empirical_moments_over(spec, &fam)
}

/// `M_1` (`power = 1`) or `M_2` (`power = 2`) alone.
pub fn empirical_moment(spec: &ResonatorSpec, power: u32) -> Result<f64> {
    let m = empirical_moments(spec)?;
    match power {
        1 => Ok(m.m1),
        2 => Ok(m.m2),
        _ => domain(format!("power {power} not in {{1, 2}}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictedMoments {
    pub m1: f64,
    pub m2: f64,
    /// Set when the value is only known up to an unspecified positive constant.
    pub m1_up_to_constant: bool,
    pub m2_up_to_constant: bool,
}

/// Main terms: at the center `X log X Π(1+f²-2f/√p)` (constant unknown) and
/// `c5 X log³X Π(1+f²-4f/√p)`; to the right `X Π(1+f²-2f/p^σ)` and
/// `X Π(1+f²-4f/p^σ)`, both up to constants. Unbounded supports are cut at 10⁶.
pub fn predicted_moments(spec: &ResonatorSpec) -> Result<PredictedMoments> {
    let w = spec.weights()?;
    let x = spec.x;
    let cutoff = Some(PRED_CUTOFF);
    match spec.regime {
        Regime::Center => {
            let p1 = predicted_product(ProductKind::M1Center, &w, cutoff)?;
            let p2 = predicted_product(ProductKind::M2Center, &w, cutoff)?;
            let c5 = const_c5(PRED_CUTOFF)?.value;
            let lx = x.ln();
            Ok(PredictedMoments {
                m1: x * lx * p1,
                m2: c5 * x * lx.powi(3) * p2,
                m1_up_to_constant: true,
                m2_up_to_constant: false,
            })
        }
        Regime::Right { .. } => {
            let p1 = predicted_product(ProductKind::M1Right, &w, cutoff)?;
            let p2 = predicted_product(ProductKind::M2Right, &w, cutoff)?;
            Ok(PredictedMoments { m1: x * p1, m2: x * p2, m1_up_to_constant: true, m2_up_to_constant: true })
        }
    }
}

/// The lower bound on the infimum at `σ`, with the `o(1)` term dropped and
/// the exponent scaled by `slack`:
/// `exp(-(slack/√5) √(log X/log log X))` at `σ = 1/2`,
/// `exp(-slack · 4σ log^{(1-σ)/(2σ)}X / log log X)` for `1/2 < σ < 1`.
pub fn bogomolov_bound(sigma: f64, x: f64, slack: f64) -> Result<f64> {
    if !(0.5..1.0).contains(&sigma) {
        return domain(format!("σ = {sigma} not in [1/2, 1)"));
    }
    if !(x >= 3.0) || !x.is_finite() {
        return domain(format!("X = {x} must be at least 3"));
    }
    if !(slack > 0.0) {
        return domain("slack must be positive");
    }
    let lx = x.ln();
    let llx = lx.ln();
    let e = if sigma == 0.5 {
        (lx / llx).sqrt() / 5f64.sqrt()
    } else {
        4.0 * sigma * lx.powf((1.0 - sigma) / (2.0 * sigma)) / llx
    };
    Ok((-slack * e).exp())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub m1_emp: f64,
    pub m2_emp: f64,
    pub m1_pred: f64,
    pub m2_pred: f64,
    pub m1_pred_up_to_constant: bool,
    pub m2_pred_up_to_constant: bool,
    /// `(m2_emp/m1_emp)²`, or NaN when `m1_emp = 0`.
    pub ratio_sq: f64,
    pub bogomolov_bound: f64,
    pub window: (f64, f64),
    pub count: usize,
    pub sum_r2: f64,
    pub sum_r2_nonzero: f64,
    pub indeterminate: Vec<u64>,
    pub sigma: f64,
    pub n: u64,
    pub l: f64,
    pub x: f64,
}

pub fn moment_report(spec: &ResonatorSpec) -> Result<MomentReport> {
    let emp = empirical_moments(spec)?;
    let pred = predicted_moments(spec)?;
    let bound = if spec.x >= 3.0 { bogomolov_bound(spec.sigma(), spec.x, 1.0)? } else { f64::NAN };
    Ok(MomentReport {
        m1_emp: emp.m1,
        m2_emp: emp.m2,
        m1_pred: pred.m1,
        m2_pred: pred.m2,
        m1_pred_up_to_constant: pred.m1_up_to_constant,
        m2_pred_up_to_constant: pred.m2_up_to_constant,
        ratio_sq: if emp.m1 != 0.0 { (emp.m2 / emp.m1).powi(2) } else { f64::NAN },
        bogomolov_bound: bound,
        window: spec.window(),
        count: emp.count,
        sum_r2: emp.sum_r2,
        sum_r2_nonzero: emp.sum_r2_nonzero,
        indeterminate: emp.indeterminate,
        sigma: spec.sigma(),
        n: spec.n,
        l: spec.l,
        x: spec.x,
    })
}

/// `(Σ aᵢ²/bᵢ, (Σ aᵢ)²/Σ bᵢ)`; the first is never smaller.
pub fn titu_gate(numerators: &[f64], denominators: &[f64]) -> Result<(f64, f64)> {
    if numerators.len() != denominators.len() {
        return domain("numerators and denominators differ in length");
    }
    if numerators.is_empty() {
        return domain("empty input");
    }
    if denominators.iter().any(|&b| !(b > 0.0)) {
        return domain("denominators must be positive");
    }
    let lhs: f64 = numerators.iter().zip(denominators).map(|(a, b)| a * a / b).collect::<Neumaier>().value();
    let sa = numerators.iter().copied().collect::<Neumaier>().value();
    let sb = denominators.iter().copied().collect::<Neumaier>().value();
    Ok((lhs, sa * sa / sb))
}

/// `(Σ_{L ≠ 0} R², M_1²/M_2)` for the moment chain; the first should dominate.
pub fn cauchy_schwarz_gate(m: &EmpiricalMoments) -> Option<(f64, f64)> {
    (m.m2 > 0.0).then(|| (m.sum_r2_nonzero, m.m1 * m.m1 / m.m2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub d: u64,
    pub abs_l: f64,
    pub error: f64,
    pub sign_certain: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub sigma: f64,
    pub x: f64,
    /// `d`-window and the matching range of discriminants `8d`.
    pub d_window: (f64, f64),
    pub disc_range: (f64, f64),
    pub count: usize,
    /// The smallest sign-certain values, ascending by `|L|` then `d`.
    pub minima: Vec<ScanEntry>,
    /// Members whose sign could not be certified.
    pub indeterminate: Vec<ScanEntry>,
    /// Members with a computed value of exactly zero.
    pub zeros: Vec<u64>,
}

/// The `d`-window used by scans at `σ`.
pub fn scan_window(sigma: f64, x: f64) -> (f64, f64) {
    if sigma == 0.5 {
        (x / 16.0, x / 8.0)
    } else {
        (x / 8.0, 5.0 * x / 16.0)
    }
}

/// Evaluates `L(σ, χ_{8d})` for every family member in the window and keeps
/// the `top` smallest sign-certain `|L|`. `chunks` only sets the work split.
pub fn scan_min_l(sigma: f64, x: f64, top: usize, chunks: usize) -> Result<ScanResult> {
    if !(0.5..=1.0).contains(&sigma) {
        return domain(format!("σ = {sigma} not in [1/2, 1]"));
    }
    let (lo, hi) = scan_window(sigma, x);
    scan_min_over(sigma, x, &family_8d(lo, hi), top, chunks)
}

/// As [`scan_min_l`], over a family supplied by the caller (for instance a
/// cached enumeration of the window).
pub fn scan_min_over(sigma: f64, x: f64, fam: &[u64], top: usize, chunks: usize) -> Result<ScanResult> {
    if !(0.5..=1.0).contains(&sigma) {
        return domain(format!("σ = {sigma} not in [1/2, 1]"));
    }
    let (lo, hi) = scan_window(sigma, x);
    if fam.is_empty() {
        return domain(format!("the window [{lo}, {hi}] has no family members"));
    }
    let size = fam.len().div_ceil(chunks.max(1));
    let parts: Vec<Vec<ScanEntry>> = fam
        .par_chunks(size)
        .map(|chunk| {
            chunk
                .iter()
                .map(|&d| {
                    let r = l_direct(sigma, 8 * d as i64, None)?;
                    Ok(ScanEntry { d, abs_l: r.value.abs(), error: r.error, sign_certain: r.sign_certain() })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let all: Vec<ScanEntry> = parts.into_iter().flatten().collect();
    let zeros: Vec<u64> = all.iter().filter(|e| e.abs_l == 0.0).map(|e| e.d).collect();
    let indeterminate: Vec<ScanEntry> = all.iter().filter(|e| !e.sign_certain).copied().collect();
    let mut minima: Vec<ScanEntry> = all.iter().filter(|e| e.sign_certain).copied().collect();
    minima.sort_by(|a, b| a.abs_l.total_cmp(&b.abs_l).then(a.d.cmp(&b.d)));
    minima.truncate(top);
    Ok(ScanResult {
        sigma,
        x,
        d_window: (lo, hi),
        disc_range: (8.0 * lo, 8.0 * hi),
        count: all.len(),
        minima,
        indeterminate,
        zeros,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_squarefree, mobius};

    #[test]
    fn trivial_resonators() {
        let spec = ResonatorSpec::center(1e6, 1).unwrap();
        for d in [1u64, 3, 1001] {
            assert_eq!(resonator_value(d, &spec).unwrap(), 1.0);
        }
        // default L at N = 1e6 is about 6, below e², so the support is empty
        let spec = ResonatorSpec { regime: Regime::Center, n: 1_000_000, l: default_center_l(1_000_000), x: 1e30 };
        assert!(Resonator::new(&spec).unwrap().support().is_empty());
        assert_eq!(resonator_value(7, &spec).unwrap(), 1.0);
        assert!(resonator_value(4, &spec).is_err());
    }

    #[test]
    fn right_resonator_by_enumeration() {
        let spec = ResonatorSpec::right(1e4, 0.75, Some(30)).unwrap().with_l(2.0).unwrap();
        let lower = 2f64.powf(4.0 / 3.0);
        for d in [1u64, 3, 7, 15] {
            let mut want = 0.0;
            let mut terms = 0;
            for l in 1..=30u64 {
                let fac = crate::arith::factorize(l).unwrap();
                if !is_squarefree(l).unwrap() || fac.iter().any(|&(p, _)| (p as f64) < lower) {
                    continue;
                }
                terms += 1;
                let f: f64 = fac.iter().map(|&(p, _)| 2.0 * (p as f64).powf(-0.75)).product();
                want += mobius(l).unwrap() as f64 * f * kronecker(8 * d as i64, l as i64) as f64;
            }
            assert_eq!(terms, 12);
            let got = resonator_value(d, &spec).unwrap();
            assert!((got - want).abs() < 1e-14, "d={d}: {got} vs {want}");
        }
    }

    #[test]
    fn small_windows_by_direct_oracle() {
        let spec = ResonatorSpec::center(160.0, 1).unwrap();
        assert_eq!(spec.family(), vec![11, 13, 15, 17, 19]);
        let m = empirical_moments(&spec).unwrap();
        let want: f64 = [11i64, 13, 15, 17, 19].iter().map(|&d| l_direct(0.5, 8 * d, None).unwrap().value).sum();
        assert!((m.m1 - want).abs() < 1e-12 * want.abs());
        assert_eq!(m.count, 5);
        assert!(m.m2 >= 0.0);

        let spec = ResonatorSpec::right(160.0, 0.75, Some(1)).unwrap();
        let fam = spec.family();
        assert_eq!((fam[0], *fam.last().unwrap()), (21, 47));
        let want: f64 = fam.iter().map(|&d| l_direct(0.75, 8 * d as i64, None).unwrap().value).sum();
        assert!((empirical_moment(&spec, 1).unwrap() - want).abs() < 1e-12 * want);
    }

    #[test]
    fn moments_are_additive_over_chunks() {
        let spec = ResonatorSpec::right(2000.0, 0.8, Some(60)).unwrap();
        let fam = spec.family();
        let whole = empirical_moments(&spec).unwrap();
        let (a, b) = fam.split_at(fam.len() / 3);
        let ma = empirical_moments_over(&spec, a).unwrap();
        let mb = empirical_moments_over(&spec, b).unwrap();
        assert!((ma.m1 + mb.m1 - whole.m1).abs() < 1e-12 * whole.m1.abs());
        assert!((ma.m2 + mb.m2 - whole.m2).abs() < 1e-12 * whole.m2);
        assert_eq!(ma.count + mb.count, whole.count);
        let (lhs, rhs) = cauchy_schwarz_gate(&whole).unwrap();
        assert!(lhs >= rhs);
    }

    #[test]
    fn predicted_with_empty_support() {
        let spec = ResonatorSpec::center(1e8, 1).unwrap();
        let p = predicted_moments(&spec).unwrap();
        let lx = 1e8f64.ln();
        let c5 = const_c5(PRED_CUTOFF).unwrap().value;
        assert!((p.m2 / (1e8 * lx.powi(3)) - c5).abs() < 1e-18);
        assert!((c5 - 0.000072388633).abs() < 1e-10);
        assert!(p.m1_up_to_constant && !p.m2_up_to_constant);
    }

    #[test]
    fn predicted_ratio_decreases_with_resonance_length() {
        // synthetic L = 3√(log N log log N) makes the center support nonempty at small N
        let x = 1e12;
        let mut prev = f64::INFINITY;
        for n in [1e4f64, 1e6, 1e8, 1e10] {
            let l = 3.0 * (n.ln() * n.ln().ln()).sqrt();
            let spec = ResonatorSpec { regime: Regime::Center, n: n as u64, l, x };
            let p = predicted_moments(&spec).unwrap();
            let lr = (p.m2 / p.m1).powi(2).ln();
            assert!(lr < prev, "N = {n}");
            prev = lr;
            let shape = (lr - 4.0 * x.ln().ln() - 2.0 * const_c5(PRED_CUTOFF).unwrap().value.ln())
                / (n.ln() / n.ln().ln()).sqrt();
            assert!((-8.0..=-1.0).contains(&shape), "N = {n}: {shape}");
        }
    }

    #[test]
    fn bogomolov_examples() {
        let e = std::f64::consts::E;
        let b = bogomolov_bound(0.5, e.powf(e), 1.0).unwrap();
        assert!(b > 0.0 && b.is_finite());
        let v: Vec<f64> = [1e4, 1e6, 1e8].iter().map(|&x| bogomolov_bound(0.5, x, 1.0).unwrap()).collect();
        assert!(v[0] > v[1] && v[1] > v[2]);
        let x = 1e6f64;
        let want = (-3.0 * x.ln().powf(1.0 / 6.0) / x.ln().ln()).exp();
        assert!((bogomolov_bound(0.75, x, 1.0).unwrap() - want).abs() < 1e-15);
        assert!(bogomolov_bound(1.0, x, 1.0).is_err());
    }

    #[test]
    fn titu_examples() {
        assert_eq!(titu_gate(&[3.0], &[2.0]).unwrap(), (4.5, 4.5));
        assert_eq!(titu_gate(&[1.0, 1.0], &[1.0, 1.0]).unwrap(), (2.0, 2.0));
        assert!(titu_gate(&[1.0], &[0.0]).is_err());
        assert!(titu_gate(&[1.0, 2.0], &[1.0]).is_err());
    }

    #[test]
    fn scan_small_window() {
        let s = scan_min_l(0.5, 160.0, 10, 3).unwrap();
        assert_eq!(s.count, 5);
        let mut want: Vec<(f64, u64)> =
            [11u64, 13, 15, 17, 19].iter().map(|&d| (l_direct(0.5, 8 * d as i64, None).unwrap().value.abs(), d)).collect();
        want.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert_eq!(s.minima.len() + s.indeterminate.len(), 5);
        assert_eq!(s.minima[0].d, want[0].1);
        assert!(s.minima.windows(2).all(|w| w[0].abs_l <= w[1].abs_l));
        assert!(s.minima.iter().all(|e| e.abs_l > 0.0));
        let t = scan_min_l(0.5, 160.0, 10, 1).unwrap();
        assert_eq!(s, t);
    }
}
