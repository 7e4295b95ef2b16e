//! The resonator weight `f` and the multiplicative functions `F`, `G`, `H`, `M`
//! built from it.

use serde::{Deserialize, Serialize};

use super::functions::{factorize, h_prime};
use super::primes::primes_between;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Regime {
    /// `f(p) = L/(√p log p)` for `L² ≤ p ≤ upper`.
    Center,
    /// `f(p) = L p^{-σ}` for `p ≥ L^{1/σ}`.
    Right { sigma: f64 },
}

/// Completely multiplicative weight supported on squarefree integers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    pub regime: Regime,
    pub l: f64,
    /// Upper end of the center-regime window.
    pub upper: f64,
    /// When set, `f` is the regime formula on exactly these primes.
    pub restrict: Option<Vec<u64>>,
}

impl Weights {
    /// Center regime with window `[L², exp(log² L)]`.
    pub fn center(l: f64) -> Result<Self> {
        if !(l > 1.0) {
            return domain(format!("center regime needs L > 1, got {l}"));
        }
        Ok(Self {
            regime: Regime::Center,
            l,
            upper: (l.ln() * l.ln()).exp(),
            restrict: None,
        })
    }

    /// Center regime with window `[L², exp(log² X)]`.
    pub fn center_with_x(l: f64, x: f64) -> Result<Self> {
        let mut w = Self::center(l)?;
        if !(x > 1.0) {
            return domain(format!("X = {x} must exceed 1"));
        }
        w.upper = (x.ln() * x.ln()).exp();
        Ok(w)
    }

    pub fn right(l: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.5 && sigma < 1.0) {
            return domain(format!("right regime needs 1/2 < σ < 1, got {sigma}"));
        }
        if !(l > 0.0) {
            return domain(format!("L = {l} must be positive"));
        }
        Ok(Self {
            regime: Regime::Right { sigma },
            l,
            upper: f64::INFINITY,
            restrict: None,
        })
    }

    /// Same formula, supported on the given primes only.
    pub fn restricted_to(mut self, primes: &[u64]) -> Self {
        let mut v = primes.to_vec();
        v.sort_unstable();
        v.dedup();
        self.restrict = Some(v);
        self
    }

    fn formula(&self, p: u64) -> f64 {
        let x = p as f64;
        match self.regime {
            Regime::Center => self.l / (x.sqrt() * x.ln()),
            Regime::Right { sigma } => self.l * x.powf(-sigma),
        }
    }

    fn lower(&self) -> f64 {
        match self.regime {
            Regime::Center => self.l * self.l,
            Regime::Right { sigma } => self.l.powf(1.0 / sigma),
        }
    }

    pub fn in_support(&self, p: u64) -> bool {
        match &self.restrict {
            Some(v) => v.binary_search(&p).is_ok(),
            None => {
                let x = p as f64;
                x >= self.lower() && x <= self.upper
            }
        }
    }

    /// `f(p)` for a prime `p`.
    pub fn f_prime(&self, p: u64) -> f64 {
        if self.in_support(p) {
            self.formula(p)
        } else {
            0.0
        }
    }

    /// `f(n)`; zero unless `n` is squarefree and supported.
    pub fn f(&self, n: u64) -> Result<f64> {
        let mut v = 1.0;
        for (p, k) in factorize(n)? {
            if k > 1 {
                return Ok(0.0);
            }
            v *= self.f_prime(p);
        }
        Ok(v)
    }

    /// Support primes, capped at `cutoff` when the support is unbounded.
    pub fn support_primes(&self, cutoff: Option<u64>) -> Result<Vec<u64>> {
        if let Some(v) = &self.restrict {
            let cap = cutoff.unwrap_or(u64::MAX);
            return Ok(v.iter().copied().filter(|&p| p <= cap).collect());
        }
        let lo = self.lower().ceil().max(2.0) as u64;
        let hi = match (self.upper.is_finite(), cutoff) {
            (true, Some(c)) => (self.upper.floor() as u64).min(c),
            (true, None) => {
                if self.upper > 4e9 {
                    return Err(Error::Unsupported(format!(
                        "support upper end {:.3e} needs an explicit cutoff",
                        self.upper
                    )));
                }
                self.upper.floor() as u64
            }
            (false, Some(c)) => c,
            (false, None) => {
                return domain("unbounded support needs an explicit prime cutoff");
            }
        };
        primes_between(lo, hi)
    }
}

/// `F(p)`, `G(p)` and `H(p^k)` for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fgh {
    pub f_big: f64,
    pub g: f64,
    pub h: f64,
}

pub fn fgh_values(p: u64, k: u32, w: &Weights) -> Result<Fgh> {
    if k == 0 {
        return domain("exponent k must be at least 1");
    }
    let f = w.f_prime(p);
    if f == 0.0 {
        return Ok(Fgh { f_big: 1.0, g: 0.0, h: 0.0 });
    }
    let x = p as f64;
    let hp = h_prime(p);
    let lin = 4.0 * f * x.sqrt() / (hp * (x + 1.0));
    let f_big = 1.0 + f * f / hp - lin;
    let lp = x.ln();
    let g = lp / (x * x) * f * f / (hp * f_big);
    let h = -lp.powi(k as i32) * lin / f_big;
    Ok(Fgh { f_big, g, h })
}

/// `H(n)` extended multiplicatively with `H(p^k)` depending on `k`.
pub fn h_mult(n: u64, w: &Weights) -> Result<f64> {
    let mut v = 1.0;
    for (p, k) in factorize(n)? {
        v *= fgh_values(p, k, w)?.h;
    }
    Ok(v)
}

/// `H_{1,1}(p)`: the normalized first log-derivative of the local ratio
/// `η_p(α; l)/η_p(α; 1)` at `α = 1` for `p | l₁`.
pub fn h11(p: u64) -> f64 {
    if p == 2 {
        return 0.0;
    }
    let x = p as f64;
    let lp = x.ln();
    // η_p(1;1) and its α-derivative for p ∤ l
    let e = 1.0 - 3.0 / (x * (x + 1.0)) - (x - 3.0) / (x * x * (x + 1.0))
        - 1.0 / (x * x * x * (x + 1.0));
    let de = lp / ((x + 1.0) * x) * (3.0 + 2.0 * (x - 3.0) / x + 3.0 / (x * x));
    x / (x - 1.0) - x * de / (e * lp)
}

/// `M(n) = (1/ω(n)) Σ_{p|n} H_{1,1}(p)/p · H(n)`, with `M(1) = 0`.
pub fn m_func(n: u64, w: &Weights) -> Result<f64> {
    let fac = factorize(n)?;
    if fac.is_empty() {
        return Ok(0.0);
    }
    let avg = fac.iter().map(|&(p, _)| h11(p) / p as f64).sum::<f64>() / fac.len() as f64;
    Ok(avg * h_mult(n, w)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_support_window() {
        let w = Weights::center(10.0).unwrap();
        assert_eq!(w.f_prime(3), 0.0);
        let v = 10.0 / (101f64.sqrt() * 101f64.ln());
        assert!((w.f_prime(101) - v).abs() < 1e-15);
        assert!(w.upper > 190.0 && w.upper < 210.0);
        assert_eq!(w.f_prime(211), 0.0);
    }

    #[test]
    fn right_support() {
        let w = Weights::right(4.0, 0.75).unwrap();
        assert!((w.f_prime(7) - 4.0 * 7f64.powf(-0.75)).abs() < 1e-15);
        assert_eq!(w.f_prime(5), 0.0);
        assert!(w.support_primes(None).is_err());
        assert_eq!(w.support_primes(Some(20)).unwrap(), vec![7, 11, 13, 17, 19]);
    }

    #[test]
    fn f_is_zero_off_squarefree() {
        let w = Weights::center(2.0).unwrap().restricted_to(&[3, 5]);
        assert_eq!(w.f(9).unwrap(), 0.0);
        assert!((w.f(15).unwrap() - w.f_prime(3) * w.f_prime(5)).abs() < 1e-15);
    }

    #[test]
    fn fgh_outside_support() {
        let w = Weights::center(10.0).unwrap();
        let v = fgh_values(3, 1, &w).unwrap();
        assert_eq!((v.f_big, v.g, v.h), (1.0, 0.0, 0.0));
    }

    #[test]
    fn fgh_inside_support_matches_rederivation() {
        let w = Weights::center(10.0).unwrap();
        for p in [101u64, 103, 197] {
            let f = 10.0 / ((p as f64).sqrt() * (p as f64).ln());
            let pf = p as f64;
            let hp = (pf.powi(3) + 2.0 * pf * pf - 2.0 * pf + 1.0) / (pf * pf * (pf + 1.0));
            let big = 1.0 + f * f / hp - 4.0 * f * pf.sqrt() / (hp * (pf + 1.0));
            let v = fgh_values(p, 2, &w).unwrap();
            assert!((v.f_big - big).abs() < 1e-14);
            assert!((v.g - pf.ln() * f * f / (pf * pf * hp * big)).abs() < 1e-16);
            let hh = -4.0 * pf.ln().powi(2) * f * pf.sqrt() / (hp * (pf + 1.0) * big);
            assert!((v.h - hh).abs() < 1e-14);
            assert!(fgh_values(p, 1, &w).unwrap().h < 0.0);
        }
    }

    #[test]
    fn m_func_examples() {
        let w = Weights::center(2.0).unwrap().restricted_to(&[11, 13]);
        assert_eq!(m_func(1, &w).unwrap(), 0.0);
        let h11_11 = h11(11);
        let m11 = m_func(11, &w).unwrap();
        assert!((m11 - h11_11 / 11.0 * h_mult(11, &w).unwrap()).abs() < 1e-16);
        let m = m_func(143, &w).unwrap();
        let avg = (h11(11) / 11.0 + h11(13) / 13.0) / 2.0;
        assert!((m - avg * h_mult(143, &w).unwrap()).abs() < 1e-16);
    }

    #[test]
    fn h11_tends_to_one() {
        assert!((h11(1_000_003) - 1.0).abs() < 1e-5);
        assert!((h11(101) - 1.0).abs() < 0.05);
    }
}
