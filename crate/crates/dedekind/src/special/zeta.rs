use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{gamma, is_nonpositive_integer};
use crate::error::{Error, Result};

/// `B_{2j}/(2j)!` for `j = 1, 2, …`.
pub(crate) const BERNOULLI_OVER_FACT: [f64; 15] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
    854_513.0 / 138.0 / 1.124_000_727_777_607_7e21,
    -236_364_091.0 / 2730.0 / 6.204_484_017_332_394e23,
    8_553_103.0 / 6.0 / 4.032_914_611_266_056e26,
    -23_749_461_029.0 / 870.0 / 3.048_883_446_117_138_4e29,
    8_615_841_276_005.0 / 14_322.0 / 2.652_528_598_121_910_4e32,
];

/// Euler–Maclaurin correction `Σ_j B_{2j}/(2j)! (s)_{2j-1} y^{-s-2j+1}`
/// for `Σ_{k≥0} (y+k)^{-s}`, summed until terms fall below `eps` relative
/// to `scale` or start growing. Returns the sum and the last term used.
pub(crate) fn em_corrections(
    s: Complex64,
    y: f64,
    y_pow: Complex64,
    max_terms: usize,
    eps: f64,
    scale: f64,
) -> (Complex64, f64) {
    let mut total = Complex64::new(0.0, 0.0);
    // (s)_{1} y^{-s-1}
    let mut poch = s;
    let mut ypow = y_pow / y;
    let mut prev = f64::INFINITY;
    let mut last = 0.0;
    for (j, &b) in BERNOULLI_OVER_FACT.iter().enumerate().take(max_terms) {
        let term = poch * ypow * b;
        let mag = term.norm();
        if mag > prev {
            break;
        }
        total += term;
        last = mag;
        if mag <= eps * scale {
            break;
        }
        prev = mag;
        let k = 2.0 * j as f64 + 1.0;
        poch = poch * (s + k) * (s + k + 1.0);
        ypow /= y * y;
    }
    (total, last)
}

/// Hurwitz zeta `ζ(s, x)` for `x > 0` with `n` explicit terms.
/// Returns the value and an estimate of the truncation error.
pub fn hurwitz_zeta(s: Complex64, x: f64, n: usize) -> Result<(Complex64, f64)> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("ζ(s, x) has a pole at s = 1".into()));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("Hurwitz parameter x = {x} must be positive")));
    }
    let mut direct = Complex64::new(0.0, 0.0);
    for k in 0..n {
        direct += (-s * (k as f64 + x).ln()).exp();
    }
    let y = n as f64 + x;
    let y_pow = (-s * y.ln()).exp();
    let head = y_pow * y / (s - 1.0) + y_pow * 0.5;
    let scale = (direct + head).norm().max(1e-300);
    let (corr, last) = em_corrections(s, y, y_pow, BERNOULLI_OVER_FACT.len(), 1e-17, scale);
    Ok((direct + head + corr, last))
}

/// Riemann zeta by Euler–Maclaurin (`N = 50`, up to 15 Bernoulli terms);
/// the functional equation is used for `Re s < -1/2`, where the direct sum
/// cancels down to the size of `ζ` near its trivial zeros.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("ζ has a pole at s = 1".into()));
    }
    if s.re < -0.5 {
        let one = Complex64::new(1.0, 0.0);
        if s.im == 0.0 && s.re.fract() == 0.0 && (s.re as i64) % 2 == 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let z1 = riemann_zeta(one - s)?;
        let two_pi = Complex64::new(2.0 * PI, 0.0);
        let g = gamma(one - s)?;
        return Ok(two_pi.powc(s) / PI * (s * PI / 2.0).sin() * g * z1);
    }
    if is_nonpositive_integer(s) && (s.re as i64) % 2 == 0 && s.re < 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(hurwitz_zeta(s, 1.0, 50)?.0)
}

pub fn riemann_zeta_real(s: f64) -> Result<f64> {
    Ok(riemann_zeta(Complex64::new(s, 0.0))?.re)
}

/// Exponential integral `E1(x)` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> f64 {
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..60 {
            term *= -x / k as f64;
            sum -= term / k as f64;
        }
        -0.577_215_664_901_532_9 - x.ln() + sum
    } else {
        // continued fraction (modified Lentz)
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut cc = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..200 {
            let a = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            cc = b + a / cc;
            let del = cc * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn special_values() {
        assert!((riemann_zeta_real(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((riemann_zeta_real(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((riemann_zeta_real(-1.0).unwrap() + 1.0 / 12.0).abs() < 1e-14);
        assert!((riemann_zeta_real(0.0).unwrap() + 0.5).abs() < 1e-14);
        assert_eq!(riemann_zeta_real(-2.0).unwrap(), 0.0);
        assert!(riemann_zeta(cx(1.0, 0.0)).is_err());
    }

    #[test]
    fn zeta_three_against_direct_sum_with_tail() {
        let n = 200_000u64;
        let direct: f64 = (1..n).rev().map(|k| 1.0 / (k as f64).powi(3)).sum();
        let nf = n as f64;
        let tail = 1.0 / (2.0 * nf * nf) + 1.0 / (2.0 * nf.powi(3)) + 1.0 / (4.0 * nf.powi(4));
        assert!((riemann_zeta_real(3.0).unwrap() - direct - tail).abs() < 1e-15);
    }

    #[test]
    fn first_zero_on_critical_line() {
        let z = riemann_zeta(cx(0.5, 14.134_725_141_734_693)).unwrap();
        assert!(z.norm() < 1e-12);
    }

    #[test]
    fn functional_equation_branch() {
        // ζ(-11) = 691/32760
        assert!((riemann_zeta_real(-11.0).unwrap() - 691.0 / 32_760.0).abs() < 1e-13);
        assert!((riemann_zeta_real(-9.0).unwrap() + 1.0 / 132.0).abs() < 1e-13);
    }

    #[test]
    fn hurwitz_at_half_is_scaled_zeta() {
        // ζ(s, 1/2) = (2^s - 1) ζ(s)
        let s = cx(2.5, 3.0);
        let (h, _) = hurwitz_zeta(s, 0.5, 30).unwrap();
        let z = riemann_zeta(s).unwrap();
        let two = cx(2.0, 0.0);
        assert!((h - (two.powc(s) - 1.0) * z).norm() < 1e-12);
    }

    #[test]
    fn e1_values() {
        assert!((exp_integral_e1(1.0) - 0.219_383_934_395_520_3).abs() < 1e-15);
        assert!((exp_integral_e1(0.1) - 1.822_923_958_419_390_7).abs() < 1e-13);
        assert!((exp_integral_e1(10.0) - 4.156_968_929_685_324e-6).abs() < 1e-19);
    }
}
