use std::f64::consts::{PI, SQRT_2};

use dedekind::arith::{enumerate_fundamental, kronecker, Sign};
use dedekind::fields::zeta_k_special;
use dedekind::lfunc::{dedekind_quadratic, l_direct};
use dedekind::special::{gamma_real, riemann_zeta_real};
use num_rational::Ratio;

const CATALAN: f64 = 0.915_965_594_177_219_015;

#[test]
fn classical_l_values() {
    let cases = [
        (2.0, -4, CATALAN),
        (1.0, -4, PI / 4.0),
        (1.0, -3, PI / (3.0 * 3f64.sqrt())),
        (1.0, 5, 2.0 * ((1.0 + 5f64.sqrt()) / 2.0).ln() / 5f64.sqrt()),
        (1.0, 8, (1.0 + SQRT_2).ln() / SQRT_2),
    ];
    for (s, d, want) in cases {
        let got = l_direct(s, d, None).unwrap();
        assert!((got.value - want).abs() < 1e-12, "L({s}, χ_{d}) = {} vs {want}", got.value);
        assert!(got.error < 1e-10);
    }
}

#[test]
fn zeta_and_gamma_values() {
    assert!((riemann_zeta_real(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
    assert!((riemann_zeta_real(-1.0).unwrap() + 1.0 / 12.0).abs() < 1e-13);
    assert!((riemann_zeta_real(0.0).unwrap() + 0.5).abs() < 1e-14);
    assert!((gamma_real(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
}

/// Reduced forms `(a, b, c)` with `b² - 4ac = d`: `|b| ≤ a ≤ c`, and `b ≥ 0`
/// when either inequality is an equality.
fn class_number(d: i64) -> i64 {
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    h
}

#[test]
fn class_number_formula() {
    for d in enumerate_fundamental(3, 2_000, Sign::Negative).unwrap() {
        let w = match d {
            -3 => 6.0,
            -4 => 4.0,
            _ => 2.0,
        };
        let l1 = l_direct(1.0, d, None).unwrap().value;
        let h = w * (-d as f64).sqrt() * l1 / (2.0 * PI);
        assert!((h - class_number(d) as f64).abs() < 1e-8, "d = {d}: {h}");
    }
}

/// `B_{k,χ} = d^{k-1} Σ_{a=1}^{|d|} χ(a) B_k(a/|d|)` in exact arithmetic, for k = 1, 2.
fn generalized_bernoulli(k: u32, d: i64) -> Ratio<i64> {
    let q = d.abs();
    let mut s = Ratio::from_integer(0);
    for a in 1..=q {
        let x = Ratio::new(a, q);
        let bk = match k {
            1 => x - Ratio::new(1, 2),
            _ => x * x - x + Ratio::new(1, 6),
        };
        s += bk * kronecker(d, a) as i64;
    }
    s * q.pow(k - 1)
}

#[test]
fn special_values_against_bernoulli() {
    // ζ_K(-1) = ζ(-1) L(-1, χ_d) = (-1/12)(-B_{2,χ}/2) for real fields
    for d in [5i64, 8, 12, 13, 17, 21, 24, 28] {
        let want = generalized_bernoulli(2, d) / 24;
        let got = zeta_k_special(1, d).unwrap();
        assert_eq!(got.order, 0);
        let w = *want.numer() as f64 / *want.denom() as f64;
        assert!((got.value - w).abs() < 1e-10, "d = {d}: {} vs {want}", got.value);
    }
    // ζ_K(0) = ζ(0) L(0, χ_d) = (-1/2)(-B_{1,χ}) = -h/w for imaginary fields
    for d in [-3i64, -4, -7, -8, -15, -20, -23] {
        let want = generalized_bernoulli(1, d) / 2;
        let got = zeta_k_special(0, d).unwrap();
        let w = *want.numer() as f64 / *want.denom() as f64;
        assert!((got.value - w).abs() < 1e-10, "d = {d}: {} vs {want}", got.value);
    }
    assert!((zeta_k_special(1, 5).unwrap().value - 1.0 / 30.0).abs() < 1e-10);
}

#[test]
fn quadratic_dedekind_zeta_at_two() {
    // ζ_{Q(i)}(2) = ζ(2) G
    let (v, e) = dedekind_quadratic(2.0, -4).unwrap();
    assert!((v - PI * PI / 6.0 * CATALAN).abs() < 1e-12 + e);
}
