//! Truncated Laurent series in one variable and the residue at `w = 0` of
//! the Mellin integrand behind the twisted second moment.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

use super::eta::{check_triple, eta_closed_form_1, eta_jet, EulerProductSpec};
use crate::arith::{h_func, sigma};
use crate::error::{domain, Result};
use crate::special::{
    const_c6, ln_gamma, riemann_zeta, zeta_one_plus_2w_regular, EULER_GAMMA,
};

/// `Σ_k coeffs[k] w^{k - pole_order}`, known up to `w^{len - 1 - pole_order}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaurentSeries {
    pub pole_order: usize,
    pub coeffs: Vec<f64>,
}

impl LaurentSeries {
    pub fn taylor(coeffs: Vec<f64>) -> Self {
        Self { pole_order: 0, coeffs }
    }

    pub fn new(pole_order: usize, coeffs: Vec<f64>) -> Result<Self> {
        if pole_order > 0 && coeffs.first().map_or(true, |&c| c == 0.0) {
            return domain("leading coefficient of a pole must be nonzero");
        }
        Ok(Self { pole_order, coeffs })
    }

    /// Highest exponent with a known coefficient.
    pub fn max_exponent(&self) -> i64 {
        self.coeffs.len() as i64 - 1 - self.pole_order as i64
    }

    /// Coefficient of `w^n`; zero below the pole, `None` past the truncation.
    pub fn coefficient(&self, n: i64) -> Option<f64> {
        let k = n + self.pole_order as i64;
        if k < 0 {
            Some(0.0)
        } else {
            self.coeffs.get(k as usize).copied()
        }
    }

    pub fn residue(&self) -> Option<f64> {
        self.coefficient(-1)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { pole_order: self.pole_order, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `w^{-k}`.
    pub fn shift_pole(&self, k: usize) -> Self {
        Self { pole_order: self.pole_order + k, coeffs: self.coeffs.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let lo_a = -(self.pole_order as i64);
        let lo_b = -(other.pole_order as i64);
        let hi = (self.max_exponent() + lo_b).min(other.max_exponent() + lo_a);
        let pole = self.pole_order + other.pole_order;
        let len = (hi + pole as i64 + 1).max(0) as usize;
        let mut out = vec![0.0; len];
        for (k, o) in out.iter_mut().enumerate() {
            let mut s = 0.0;
            for i in 0..=k {
                if let (Some(a), Some(b)) = (self.coeffs.get(i), other.coeffs.get(k - i)) {
                    s += a * b;
                }
            }
            *o = s;
        }
        Self { pole_order: pole, coeffs: out }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut one = vec![0.0; self.coeffs.len() + 1];
        one[0] = 1.0;
        let mut out = Self::taylor(one);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Evaluate at `w` (the truncation error is not tracked).
    pub fn eval(&self, w: Complex64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            s += w.powi(k as i32 - self.pole_order as i32) * *c;
        }
        s
    }
}

fn exp_series(f: &[f64]) -> LaurentSeries {
    LaurentSeries::taylor(crate::special::series_exp(f))
}

/// `ζ(1 + 2w) = 1/(2w) + Σ_j (-2)^j γ_j w^j/j!` through `w^order`.
pub fn zeta_laurent(order: usize) -> Result<LaurentSeries> {
    if order > 5 {
        return domain(format!("order {order} > 5 not supported"));
    }
    let mut c = vec![0.5];
    c.extend(zeta_one_plus_2w_regular(order)?);
    LaurentSeries::new(1, c)
}

const CATALAN: f64 = 0.915_965_594_177_219_015;
const ZETA3: f64 = 1.202_056_903_159_594_285;

/// `ψ(1/4), ψ'(1/4), ψ''(1/4)`.
pub fn polygamma_quarter() -> [f64; 3] {
    [
        -EULER_GAMMA - PI / 2.0 - 3.0 * LN_2,
        PI * PI + 8.0 * CATALAN,
        -2.0 * PI.powi(3) - 56.0 * ZETA3,
    ]
}

/// The factors of the integrand, each through `w^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueFactors {
    pub gamma_sq: LaurentSeries,
    pub power: LaurentSeries,
    pub t_integral: LaurentSeries,
    pub zeta_cubed_over_w: LaurentSeries,
    /// `η(1+2w; a²rs)/η(1; a²rs)`.
    pub eta_ratio: LaurentSeries,
    pub eta_at_one: f64,
}

impl ResidueFactors {
    pub fn build(x: f64, a: u64, r: u64, s: u64, spec: &EulerProductSpec) -> Result<Self> {
        check_triple(a, r, s)?;
        let rs = (r * s) as f64;
        if !(x > rs) {
            return domain(format!("X = {x} must exceed rs = {rs}"));
        }
        let psi = polygamma_quarter();
        // 2 log Γ(w/2 + 1/4) - 2 log Γ(1/4) = 2 Σ ψ^{(k-1)}(1/4)/k! (w/2)^k
        let g = [0.0, psi[0], psi[1] / 4.0, psi[2] / 24.0];
        let ell = (x / (2.0 * rs * PI)).ln();
        // (2^{w+1} - 1)/(w + 1)
        let num = [1.0, 2.0 * LN_2, LN_2 * LN_2, LN_2.powi(3) / 3.0];
        let t_int: Vec<f64> = (0..4)
            .map(|k| (0..=k).map(|j| num[j] * if (k - j) % 2 == 0 { 1.0 } else { -1.0 }).sum())
            .collect();
        let z = zeta_laurent(4)?;
        let jet = eta_jet(1.0, a * a * r * s, spec)?;
        let k = jet.log_derivs;
        Ok(Self {
            gamma_sq: exp_series(&g),
            power: exp_series(&[0.0, ell, 0.0, 0.0]),
            t_integral: LaurentSeries::taylor(t_int),
            zeta_cubed_over_w: z.powi(3).shift_pole(1),
            eta_ratio: exp_series(&[0.0, 2.0 * k[0], 2.0 * k[1], 4.0 * k[2] / 3.0]),
            eta_at_one: jet.value,
        })
    }

    pub fn product(&self) -> LaurentSeries {
        self.gamma_sq
            .mul(&self.power)
            .mul(&self.t_integral)
            .mul(&self.zeta_cubed_over_w)
            .mul(&self.eta_ratio)
            .scale(self.eta_at_one)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueMode {
    Series,
    Leading,
}

/// Residue at `w = 0` of
/// `(Γ(w/2+1/4)/Γ(1/4))² (X/2rsπ)^w ∫_1^2 t^w dt · ζ(1+2w)³ η(1+2w; a²rs)/w`.
pub fn residue_lemma(x: f64, a: u64, r: u64, s: u64, mode: ResidueMode) -> Result<f64> {
    residue_lemma_with(x, a, r, s, mode, &EulerProductSpec::default())
}

pub fn residue_lemma_with(
    x: f64,
    a: u64,
    r: u64,
    s: u64,
    mode: ResidueMode,
    spec: &EulerProductSpec,
) -> Result<f64> {
    match mode {
        ResidueMode::Series => {
            let f = ResidueFactors::build(x, a, r, s, spec)?;
            Ok(f.product().residue().expect("factors carry enough terms"))
        }
        ResidueMode::Leading => {
            check_triple(a, r, s)?;
            let rs = r * s;
            if !(x > rs as f64) {
                return domain(format!("X = {x} must exceed rs = {rs}"));
            }
            let base = if (a * r * s) % 2 == 1 {
                eta_closed_form_1(a, r, s)?
            } else {
                const_c6(1_000_000)?.value * rs as f64 / (sigma(rs)? as f64 * h_func(a * r * s)?)
            };
            Ok(base / 48.0 * (x / rs as f64).ln().powi(3))
        }
    }
}

/// The same integrand evaluated directly at complex `w`, for contour checks.
pub fn residue_integrand(
    w: Complex64,
    x: f64,
    a: u64,
    r: u64,
    s: u64,
    spec: &EulerProductSpec,
) -> Result<Complex64> {
    let rs = (r * s) as f64;
    let lg = ln_gamma(w / 2.0 + 0.25)? - ln_gamma(Complex64::new(0.25, 0.0))?;
    let power = (w * (x / (2.0 * rs * PI)).ln()).exp();
    let t_int = (((w + 1.0) * LN_2).exp() - 1.0) / (w + 1.0);
    let z = riemann_zeta(w * 2.0 + 1.0)?;
    let eta = super::eta::eta_product_complex(w * 2.0 + 1.0, a * a * r * s, spec)?;
    Ok((lg * 2.0).exp() * power * t_int * z * z * z * eta / w)
}
