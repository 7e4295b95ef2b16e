//! The weight `W2` from the approximate functional equation of `L(1/2, χ)²`
//! and the smooth bump `Φ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::gamma::ln_gamma;
use crate::error::{domain, Error, Result};
use crate::sum::Neumaier;
use crate::tol::{W2_INTEGRAND_CUTOFF, W2_STEP};

/// Vertical contour `Re w = c` for `W2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    /// Abscissa; a value in `(-1/2, 0)` adds the residue `1` at `w = 0`.
    pub c: f64,
    pub step: f64,
    /// Relative integrand size at which the line is truncated.
    pub cutoff: f64,
    /// Compare against the half-step rule and report the difference.
    pub richardson: bool,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self { c: 1.0, step: W2_STEP, cutoff: W2_INTEGRAND_CUTOFF, richardson: true }
    }
}

impl ContourSpec {
    /// Abscissa adapted to `ξ`: left of the pole for small `ξ`, near the
    /// saddle point `c ≈ 2ξ` for large `ξ`.
    pub fn auto(xi: f64) -> Self {
        let c = if xi < 0.5 {
            -0.25
        } else if xi <= 2.0 {
            1.0
        } else {
            (2.0 * xi).min(200.0)
        };
        Self { c, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct W2Value {
    pub value: f64,
    /// Half-step disagreement plus truncation allowance.
    pub error: f64,
    pub nodes: usize,
}

fn ln_gamma_quarter() -> f64 {
    ln_gamma(Complex64::new(0.25, 0.0)).unwrap().re
}

/// `log[(Γ(w/2 + 1/4)/Γ(1/4))² / w]`.
fn ln_kernel(w: Complex64, lg_q: f64) -> Complex64 {
    let g = ln_gamma(w / 2.0 + 0.25).expect("no poles on the contour");
    (g - lg_q) * 2.0 - w.ln()
}

/// Returns the integral, the sum of absolute values (the rounding scale) and the node count.
fn trapezoid(xi: f64, spec: &ContourSpec, step: f64, lg_q: f64) -> (f64, f64, usize) {
    let lx = xi.ln();
    let eval = |t: f64| -> Complex64 {
        let w = Complex64::new(spec.c, t);
        (ln_kernel(w, lg_q) - w * lx).exp()
    };
    let g0 = eval(0.0);
    let peak = g0.norm();
    let mut acc = Neumaier::new();
    acc.add(0.5 * g0.re);
    let mut abs = 0.5 * peak;
    let mut k = 1usize;
    loop {
        let t = k as f64 * step;
        let g = eval(t);
        acc.add(g.re);
        let mag = g.norm();
        abs += mag;
        if (t > 4.0 && mag <= spec.cutoff * peak) || mag < 1e-300 || t > 2_000.0 {
            break;
        }
        k += 1;
    }
    (acc.value() * step / PI, abs * step / PI, k + 1)
}

/// `W2(ξ) = (1/2πi) ∫_(c) (Γ(w/2+1/4)/Γ(1/4))² ξ^{-w} dw/w`.
pub fn w2(xi: f64, spec: &ContourSpec) -> Result<W2Value> {
    if !(xi > 0.0) || !xi.is_finite() {
        return domain(format!("W2 needs ξ > 0, got {xi}"));
    }
    if spec.c == 0.0 || spec.c <= -0.5 {
        return domain(format!("contour abscissa {} must avoid w = 0 and Re w ≤ -1/2", spec.c));
    }
    if !(spec.step > 0.0) {
        return domain("contour step must be positive");
    }
    let lg_q = ln_gamma_quarter();
    let (v, abs, nodes) = trapezoid(xi, spec, spec.step, lg_q);
    let residue = if spec.c < 0.0 { 1.0 } else { 0.0 };
    let rounding = 16.0 * f64::EPSILON * (nodes as f64).sqrt() * abs;
    let mut error = rounding;
    if spec.richardson {
        let (v2, _, _) = trapezoid(xi, spec, spec.step / 2.0, lg_q);
        error += (v - v2).abs();
        if (v - v2).abs() > 1e-8 * (v.abs() + residue).max(1e-30) + 64.0 * rounding {
            return Err(Error::NonConvergence(format!(
                "W2({xi}) step {} disagrees with half step by {:e}",
                spec.step,
                (v - v2).abs()
            )));
        }
    }
    Ok(W2Value { value: v + residue, error, nodes })
}

/// Precomputed trapezoidal nodes for fast repeated evaluation of `W2`.
#[derive(Debug, Clone)]
pub struct W2Kernel {
    step: f64,
    right: Table,
    left: Table,
}

#[derive(Debug, Clone)]
struct Table {
    c: f64,
    /// `(Γ(w_k/2+1/4)/Γ(1/4))²/w_k` at `w_k = c + i k h`.
    nodes: Vec<Complex64>,
}

impl Table {
    fn build(c: f64, step: f64, cutoff: f64, lg_q: f64) -> Self {
        let mut nodes = Vec::new();
        let mut peak = 0.0f64;
        let mut k = 0usize;
        loop {
            let t = k as f64 * step;
            let g = ln_kernel(Complex64::new(c, t), lg_q).exp();
            peak = peak.max(g.norm());
            nodes.push(g);
            // ξ^{-it} has modulus one, so the same cutoff holds for every ξ
            if t > 4.0 && g.norm() <= cutoff * peak * 1e-4 {
                break;
            }
            k += 1;
        }
        Self { c, nodes }
    }

    fn eval(&self, xi: f64, step: f64) -> f64 {
        let lx = xi.ln();
        let scale = (-self.c * lx).exp();
        let rot = Complex64::from_polar(1.0, -step * lx);
        let mut z = Complex64::new(1.0, 0.0);
        let mut acc = Neumaier::new();
        for (k, g) in self.nodes.iter().enumerate() {
            if k % 64 == 0 {
                z = Complex64::from_polar(1.0, -(k as f64) * step * lx);
            }
            let v = (g * z).re;
            acc.add(if k == 0 { 0.5 * v } else { v });
            z *= rot;
        }
        acc.value() * scale * step / PI
    }
}

impl W2Kernel {
    pub fn new() -> Self {
        let lg_q = ln_gamma_quarter();
        Self {
            step: W2_STEP,
            right: Table::build(1.0, W2_STEP, W2_INTEGRAND_CUTOFF, lg_q),
            left: Table::build(-0.25, W2_STEP, W2_INTEGRAND_CUTOFF, lg_q),
        }
    }

    /// `W2(ξ)` for `0 < ξ ≤ 60`.
    pub fn eval(&self, xi: f64) -> f64 {
        if xi < 0.5 {
            1.0 + self.left.eval(xi, self.step)
        } else {
            self.right.eval(xi, self.step)
        }
    }
}

impl Default for W2Kernel {
    fn default() -> Self {
        Self::new()
    }
}

/// `Φ(x) = exp(1/((2x-1)(x-3)))` on `(1/2, 3)`, zero elsewhere.
pub fn phi_weight(x: f64) -> f64 {
    if x > 0.5 && x < 3.0 {
        (1.0 / ((2.0 * x - 1.0) * (x - 3.0))).exp()
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_argument_tends_to_one() {
        // reference values from 30-digit quadrature on Re w = -1/4
        let reference = [
            (1e-8, 0.998_792_338_147_308_1),
            (1e-12, 0.999_982_318_021_384_4),
            (1e-4, 0.935_287_415_495_596_6),
        ];
        for (xi, r) in reference {
            let v = w2(xi, &ContourSpec::auto(xi)).unwrap();
            assert!((v.value - r).abs() < 1e-12, "ξ = {xi}");
            // on Re w = 1 the integrand is of size 1/ξ, so rounding grows with it
            if xi >= 1e-8 {
                let v = w2(xi, &ContourSpec::default()).unwrap();
                assert!((v.value - r).abs() < 1e-8, "ξ = {xi}");
            }
        }
        // 1 - W2(ξ) = O(ξ^{1/2-ε}): the scaled gap stays bounded and shrinks
        let ratio = |xi: f64| (1.0 - w2(xi, &ContourSpec::auto(xi)).unwrap().value) / xi.powf(0.45);
        for k in 4..=16 {
            let r = ratio(10f64.powi(-k));
            assert!(r > 0.0 && r < 5.0, "k = {k}: {r}");
        }
        assert!(ratio(1e-16) < ratio(1e-8));
    }

    #[test]
    fn large_argument_is_tiny() {
        let v = w2(40.0, &ContourSpec::auto(40.0)).unwrap();
        assert!(v.value.abs() <= 10.0 * (-40.0f64).exp());
    }

    #[test]
    fn contour_independence() {
        let a = w2(1.0, &ContourSpec { c: 0.5, ..Default::default() }).unwrap();
        let b = w2(1.0, &ContourSpec { c: 2.0, ..Default::default() }).unwrap();
        assert!((a.value - b.value).abs() < 1e-10);
        let l = w2(1.0, &ContourSpec { c: -0.25, ..Default::default() }).unwrap();
        assert!((a.value - l.value).abs() < 1e-10);
    }

    #[test]
    fn monotone_decreasing() {
        let mut prev = f64::INFINITY;
        for k in 0..=58 {
            let xi = 1.0 + 0.5 * k as f64;
            let v = w2(xi, &ContourSpec::auto(xi)).unwrap().value;
            assert!(v < prev, "ξ = {xi}");
            prev = v;
        }
    }

    #[test]
    fn kernel_matches_direct() {
        let k = W2Kernel::new();
        for &xi in &[1e-6, 0.01, 0.3, 0.49, 0.5, 1.0, 3.7, 12.0, 30.0] {
            let d = w2(xi, &ContourSpec::auto(xi)).unwrap().value;
            assert!((k.eval(xi) - d).abs() < 1e-13, "ξ = {xi}");
        }
    }

    #[test]
    fn rejects_bad_contours() {
        assert!(w2(1.0, &ContourSpec { c: 0.0, ..Default::default() }).is_err());
        assert!(w2(1.0, &ContourSpec { c: -0.6, ..Default::default() }).is_err());
        assert!(w2(0.0, &ContourSpec::default()).is_err());
    }

    #[test]
    fn bump() {
        assert!((phi_weight(1.0) - (-0.5f64).exp()).abs() < 1e-15);
        assert_eq!(phi_weight(0.5), 0.0);
        assert_eq!(phi_weight(3.0), 0.0);
        assert_eq!(phi_weight(-1.0), 0.0);
        assert!(phi_weight(0.5001) < 1e-300 || phi_weight(0.5001) < 1e-10);
    }
}
