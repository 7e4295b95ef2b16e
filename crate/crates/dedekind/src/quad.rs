//! Quadrature rules: tanh-sinh on finite intervals and the periodic
//! trapezoidal rule on circles.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::sum::Neumaier;

/// Result of a quadrature with an a-posteriori error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
}

const T_MAX: f64 = 3.6;
const MAX_LEVEL: u32 = 11;

/// Tanh-sinh (double-exponential) quadrature of `f` over `[a, b]`.
///
/// Integrable endpoint singularities are fine; `f` is never evaluated at
/// the endpoints themselves.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Quad> {
    if a == b {
        return Ok(Quad { value: 0.0, error: 0.0 });
    }
    let width = b - a;
    let node = |t: f64| -> Option<f64> {
        let u = FRAC_PI_2 * t.sinh();
        let s = 1.0 / (1.0 + (-2.0 * u).exp());
        let c = 1.0 / (1.0 + (2.0 * u).exp());
        let x = if s < 0.5 { a + width * s } else { b - width * c };
        if x <= a.min(b) || x >= a.max(b) || !x.is_finite() {
            return None;
        }
        let w = width * 2.0 * s * c * FRAC_PI_2 * t.cosh();
        if w == 0.0 {
            return None;
        }
        Some(w * f(x))
    };
    let mut h = 0.5;
    let mut acc = Neumaier::new();
    if let Some(v) = node(0.0) {
        acc.add(v);
    }
    let mut k = 1;
    while k as f64 * h <= T_MAX {
        let t = k as f64 * h;
        for v in [node(t), node(-t)].into_iter().flatten() {
            acc.add(v);
        }
        k += 1;
    }
    let mut prev = acc.value() * h;
    for _level in 1..=MAX_LEVEL {
        h /= 2.0;
        let mut k = 1;
        while k as f64 * h <= T_MAX {
            let t = k as f64 * h;
            for v in [node(t), node(-t)].into_iter().flatten() {
                acc.add(v);
            }
            k += 2;
        }
        let cur = acc.value() * h;
        let err = (cur - prev).abs();
        if !cur.is_finite() {
            return Err(Error::NonConvergence("non-finite quadrature sum".into()));
        }
        if err <= tol * cur.abs().max(1.0) {
            return Ok(Quad { value: cur, error: err });
        }
        prev = cur;
    }
    Err(Error::NonConvergence(format!(
        "tanh-sinh did not reach tolerance {tol:e} on [{a}, {b}]"
    )))
}

/// `(1/2πi) ∮_{|w - center| = radius} g(w) dw` by the trapezoidal rule with `n` nodes.
pub fn circle_integral<G: Fn(Complex64) -> Complex64>(
    g: G,
    center: Complex64,
    radius: f64,
    n: usize,
) -> Complex64 {
    let mut re = Neumaier::new();
    let mut im = Neumaier::new();
    for k in 0..n {
        let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
        // dw = i r e dθ, and 1/(2πi) · i r e · 2π/n = r e / n
        let v = g(center + e * radius) * e * radius / n as f64;
        re.add(v.re);
        im.add(v.im);
    }
    Complex64::new(re.value(), im.value())
}
