use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub(crate) fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// `log sin(πz)` without overflow for large `|Im z|` (branch unspecified).
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 10.0 {
        return (z * PI).sin().ln();
    }
    let (zz, flip) = if z.im > 0.0 { (z, false) } else { (z.conj(), true) };
    // sin(πz) = e^{-iπz} (1 - e^{2iπz}) · i/2
    let i = Complex64::i();
    let v = -i * PI * zz + (c(1.0) - (i * 2.0 * PI * zz).exp()).ln() + (i * 0.5).ln();
    if flip {
        v.conj()
    } else {
        v
    }
}

/// `log Γ(z)` (branch unspecified, so only `exp` of it is meaningful).
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Γ has a pole at {}", z.re)));
    }
    if z.re < 0.5 {
        let r = ln_gamma(c(1.0) - z)?;
        return Ok(c(PI.ln()) - ln_sin_pi(z) - r);
    }
    let z1 = z - 1.0;
    let mut x = c(LANCZOS[0]);
    for (k, &coef) in LANCZOS.iter().enumerate().skip(1) {
        x += coef / (z1 + k as f64);
    }
    let t = z1 + LANCZOS_G + 0.5;
    Ok(c(LN_SQRT_2PI) + (z1 + 0.5) * t.ln() - t + x.ln())
}

/// Complex Γ (Lanczos, with reflection for `Re z < 1/2`).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re > 0.0 && z.re <= 170.0 {
        return Ok(c(gamma_real(z.re)?));
    }
    Ok(ln_gamma(z)?.exp())
}

/// Real Γ.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 && x.fract() == 0.0 {
        return Err(Error::Pole(format!("Γ has a pole at {x}")));
    }
    if x < 0.5 {
        return Ok(PI / ((PI * x).sin() * gamma_real(1.0 - x)?));
    }
    let z1 = x - 1.0;
    let mut s = LANCZOS[0];
    for (k, &coef) in LANCZOS.iter().enumerate().skip(1) {
        s += coef / (z1 + k as f64);
    }
    let t = z1 + LANCZOS_G + 0.5;
    // split the power to delay overflow
    let p = t.powf((z1 + 0.5) / 2.0);
    Ok((2.0 * PI).sqrt() * p * (p * (-t).exp()) * s)
}

/// `Γ_R(s) = π^{-s/2} Γ(s/2)`.
pub fn gamma_r(s: Complex64) -> Result<Complex64> {
    Ok((ln_gamma(s / 2.0)? - s / 2.0 * PI.ln()).exp())
}

/// `Γ_C(s) = (2π)^{-s} Γ(s)`.
pub fn gamma_c(s: Complex64) -> Result<Complex64> {
    Ok((ln_gamma(s)? - s * (2.0 * PI).ln()).exp())
}

/// `log |Γ_R(1-s)/Γ_R(s)|`, with `±∞` at poles of numerator or denominator.
fn ln_abs_ratio_r(s: Complex64) -> f64 {
    let one = c(1.0);
    let num_pole = is_nonpositive_integer((one - s) / 2.0);
    let den_pole = is_nonpositive_integer(s / 2.0);
    match (num_pole, den_pole) {
        (true, false) => f64::INFINITY,
        (false, true) => f64::NEG_INFINITY,
        (true, true) => f64::NAN,
        _ => {
            let a = ln_gamma((one - s) / 2.0).unwrap() - (one - s) / 2.0 * PI.ln();
            let b = ln_gamma(s / 2.0).unwrap() - s / 2.0 * PI.ln();
            (a - b).re
        }
    }
}

fn ln_abs_ratio_c(s: Complex64) -> f64 {
    let one = c(1.0);
    let num_pole = is_nonpositive_integer(one - s);
    let den_pole = is_nonpositive_integer(s);
    match (num_pole, den_pole) {
        (true, false) => f64::INFINITY,
        (false, true) => f64::NEG_INFINITY,
        (true, true) => f64::NAN,
        _ => {
            let l2p = (2.0 * PI).ln();
            let a = ln_gamma(one - s).unwrap() - (one - s) * l2p;
            let b = ln_gamma(s).unwrap() - s * l2p;
            (a - b).re
        }
    }
}

/// `Γ_m(s) = min(|Γ_R(1-s)/Γ_R(s)|, |Γ_C(1-s)/Γ_C(s)|^{1/2})`.
pub fn gamma_m(s: Complex64) -> Result<f64> {
    let r = ln_abs_ratio_r(s);
    let cc = 0.5 * ln_abs_ratio_c(s);
    let m = match (r.is_nan(), cc.is_nan()) {
        (false, false) => r.min(cc),
        (true, false) => cc,
        (false, true) => r,
        (true, true) => {
            return Err(Error::Pole(format!("Γ_m undefined at {s}")));
        }
    };
    if m == f64::INFINITY {
        return Err(Error::Pole(format!("Γ_m infinite at {s}")));
    }
    Ok(m.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn integer_and_half_integer_values() {
        assert!((gamma(cx(5.0, 0.0)).unwrap().re - 24.0).abs() < 1e-12);
        assert!((gamma(cx(0.5, 0.0)).unwrap().re - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(cx(-0.5, 0.0)).unwrap().re + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(gamma(cx(-3.0, 0.0)).is_err());
        assert!(gamma(cx(0.0, 0.0)).is_err());
    }

    #[test]
    fn modulus_on_critical_line() {
        // |Γ(1/2 + it)|² = π / cosh(πt)
        for &t in &[0.3, 2.0, 10.0, 40.0] {
            let g = gamma(cx(0.5, t)).unwrap().norm_sqr();
            let e = PI / (PI * t).cosh();
            assert!(((g - e) / e).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn recurrence_in_complex_plane() {
        for &z in &[cx(0.3, 1.7), cx(-2.4, 0.6), cx(7.0, -13.0), cx(0.25, 35.0)] {
            let a = gamma(z + 1.0).unwrap();
            let b = z * gamma(z).unwrap();
            assert!(((a - b) / a).norm() < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn large_real_part_via_log() {
        // log Γ(50) = log(49!)
        let lg = ln_gamma(cx(50.0, 0.0)).unwrap().re;
        let exact: f64 = (1..50).map(|k| (k as f64).ln()).sum();
        assert!((lg - exact).abs() < 1e-11);
    }

    #[test]
    fn archimedean_factors() {
        assert!((gamma_m(cx(0.5, 0.0)).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(gamma_m(cx(-1.0, 0.0)).unwrap(), 0.0);
        assert_eq!(gamma_m(cx(-4.0, 0.0)).unwrap(), 0.0);
        let s = cx(2.0, 0.0);
        assert!((gamma_r(s).unwrap().re - 1.0 / PI).abs() < 1e-15);
        assert!((gamma_c(s).unwrap().re - 1.0 / (4.0 * PI * PI)).abs() < 1e-15);
    }
}
