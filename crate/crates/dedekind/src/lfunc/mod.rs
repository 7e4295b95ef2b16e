//! Quadratic Dirichlet L-values on the real line, the smoothed square at the
//! central point, the twisted exponential series, quadratic Dedekind zeta
//! values and the finite moment sum `M(α1, α2; l, X)`.

mod direct;
mod smoothed;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::arith::character_table;
use crate::error::{domain, Error, Result};
use crate::special::riemann_zeta_real;
use crate::tol::{EULER_CUTOFF, LVALUE_REL};

pub use direct::{dirichlet_l, euler_product_l, ComplexLValue};
pub use smoothed::{l_half_square, l_twisted_exp, sono_m, HalfSquare};

pub(crate) use direct::{check_fundamental, dirichlet_l_real_with, dirichlet_l_with};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DirectAbel,
    SmoothedHalfSquare,
    TwistedExp,
    EulerProduct,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::DirectAbel => "direct_abel",
            Method::SmoothedHalfSquare => "smoothed_half_square",
            Method::TwistedExp => "twisted_exp",
            Method::EulerProduct => "euler_product",
        };
        f.write_str(s)
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct_abel" | "direct" => Ok(Method::DirectAbel),
            "smoothed_half_square" | "half_square" => Ok(Method::SmoothedHalfSquare),
            "twisted_exp" => Ok(Method::TwistedExp),
            "euler_product" => Ok(Method::EulerProduct),
            _ => domain(format!("unknown method {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LValueRequest {
    pub sigma: f64,
    pub d: i64,
    pub method: Method,
    /// Relative accuracy target.
    pub tol: f64,
    /// Maximum number of explicit terms (or primes for the Euler product).
    pub budget: Option<u64>,
    /// Smoothing length for [`Method::TwistedExp`].
    pub twist_x: Option<f64>,
}

impl LValueRequest {
    pub fn new(sigma: f64, d: i64, method: Method) -> Self {
        Self { sigma, d, method, tol: LVALUE_REL, budget: None, twist_x: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LValueResult {
    pub d: i64,
    pub sigma: f64,
    pub value: f64,
    pub error: f64,
    pub method: Method,
    pub terms: u64,
    /// The budget ran out before the accuracy target was met.
    pub partial: bool,
}

impl LValueResult {
    /// The sign of `value` is certain at the reported error.
    pub fn sign_certain(&self) -> bool {
        self.value.abs() > self.error
    }
}

/// `L(σ, χ_d)` for `σ > 0` by full-period summation with an
/// Euler–Maclaurin tail in each residue class.
pub fn l_direct(sigma: f64, d: i64, budget: Option<u64>) -> Result<LValueResult> {
    l_direct_tol(sigma, d, budget, LVALUE_REL)
}

pub fn l_direct_tol(sigma: f64, d: i64, budget: Option<u64>, tol: f64) -> Result<LValueResult> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return domain(format!("direct evaluation needs σ > 0, got {sigma}"));
    }
    check_fundamental(d)?;
    let chi = character_table(d);
    Ok(l_direct_with(sigma, d, &chi, budget, tol))
}

pub(crate) fn l_direct_with(
    sigma: f64,
    d: i64,
    chi: &[i8],
    budget: Option<u64>,
    tol: f64,
) -> LValueResult {
    let (value, error, terms) = dirichlet_l_real_with(sigma, chi, budget);
    LValueResult {
        d,
        sigma,
        value,
        error,
        method: Method::DirectAbel,
        terms,
        partial: error > tol * (1.0 + value.abs()),
    }
}

/// Dispatch on [`LValueRequest::method`].
pub fn evaluate(req: &LValueRequest) -> Result<LValueResult> {
    check_fundamental(req.d)?;
    if !(req.tol > 0.0) {
        return domain("tolerance must be positive");
    }
    match req.method {
        Method::DirectAbel => l_direct_tol(req.sigma, req.d, req.budget, req.tol),
        Method::EulerProduct => {
            let cutoff = req.budget.unwrap_or(EULER_CUTOFF);
            let (value, error) = euler_product_l(req.sigma, req.d, cutoff)?;
            Ok(LValueResult {
                d: req.d,
                sigma: req.sigma,
                value,
                error,
                method: req.method,
                terms: cutoff,
                partial: error > req.tol * value.abs(),
            })
        }
        Method::SmoothedHalfSquare => {
            if req.sigma != 0.5 {
                return domain("the smoothed square needs σ = 1/2");
            }
            if req.d <= 0 || req.d % 8 != 0 || (req.d / 8) % 2 == 0 {
                return domain(format!("d = {} is not 8d' with d' odd squarefree", req.d));
            }
            let sq = l_half_square((req.d / 8) as u64)?;
            let sign = l_direct(0.5, req.d, req.budget)?;
            let root = sq.value.sqrt();
            // d(√v) = dv/(2√v); near zero the square root error is √dv
            let error = if root > 0.0 { (sq.error / (2.0 * root)).min(sq.error.sqrt()) } else { sq.error.sqrt() };
            Ok(LValueResult {
                d: req.d,
                sigma: 0.5,
                value: if sign.value < 0.0 { -root } else { root },
                error: error.max(if sign.sign_certain() { 0.0 } else { root }),
                method: req.method,
                terms: sq.terms,
                partial: !sign.sign_certain() || error > req.tol * (1.0 + root),
            })
        }
        Method::TwistedExp => {
            let x = req.twist_x.unwrap_or(1_000.0);
            let (value, terms) = l_twisted_exp(req.sigma, req.d, x, req.tol)?;
            // the smoothing bias is not bounded pointwise; report the term count only
            Ok(LValueResult {
                d: req.d,
                sigma: req.sigma,
                value,
                error: f64::NAN,
                method: req.method,
                terms,
                partial: false,
            })
        }
    }
}

/// [`l_direct`] over many discriminants in parallel, ordered by `d`.
pub fn l_direct_batch(sigma: f64, ds: &[i64], budget: Option<u64>) -> Result<Vec<LValueResult>> {
    let mut out: Vec<LValueResult> =
        ds.par_iter().map(|&d| l_direct(sigma, d, budget)).collect::<Result<_>>()?;
    out.sort_by_key(|r| r.d);
    Ok(out)
}

/// `ζ_{Q(√d)}(σ) = ζ(σ) L(σ, χ_d)` for real `σ ≠ 1`.
pub fn dedekind_quadratic(sigma: f64, d: i64) -> Result<(f64, f64)> {
    check_fundamental(d)?;
    if sigma == 1.0 {
        return Err(Error::Pole("ζ_K has a pole at s = 1".into()));
    }
    if !sigma.is_finite() {
        return domain("σ must be finite");
    }
    let z = riemann_zeta_real(sigma)?;
    let chi = character_table(d);
    let (l, le) = if sigma > 0.0 {
        let r = l_direct_with(sigma, d, &chi, None, LVALUE_REL);
        (r.value, r.error)
    } else {
        let r = dirichlet_l_with(Complex64::new(sigma, 0.0), &chi, None);
        (r.value.re, r.error)
    };
    let ze = 1e-14 * z.abs();
    Ok((z * l, z.abs() * le + l.abs() * ze))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn request_validation() {
        let mut r = LValueRequest::new(0.5, 12, Method::EulerProduct);
        assert!(evaluate(&r).is_err());
        r.method = Method::SmoothedHalfSquare;
        assert!(evaluate(&r).is_err());
        r.d = 8;
        r.sigma = 0.6;
        assert!(evaluate(&r).is_err());
        r.sigma = 0.5;
        let v = evaluate(&r).unwrap();
        let direct = l_direct(0.5, 8, None).unwrap();
        assert!((v.value - direct.value).abs() < 1e-6);
        assert!(l_direct(0.0, 5, None).is_err());
        assert!(l_direct(0.5, 4, None).is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in [Method::DirectAbel, Method::SmoothedHalfSquare, Method::TwistedExp, Method::EulerProduct] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let r = l_direct(0.5, 8 * 1_001, Some(8_008)).unwrap();
        assert!(r.partial || r.error < 1e-12);
        let r = l_direct(0.5, 8 * 1_001, None).unwrap();
        assert!(!r.partial);
    }

    #[test]
    fn dedekind_values() {
        let catalan = 0.915_965_594_177_219_015;
        let (v, e) = dedekind_quadratic(2.0, -4).unwrap();
        assert!((v - PI * PI / 6.0 * catalan).abs() < 1e-13);
        assert!(e < 1e-12);
        let (v, _) = dedekind_quadratic(0.5, 8).unwrap();
        assert!(v < 0.0);
        assert!(dedekind_quadratic(1.0, 5).is_err());
        // ζ_{Q(√5)}(-1) = 1/30
        let (v, _) = dedekind_quadratic(-1.0, 5).unwrap();
        assert!((v - 1.0 / 30.0).abs() < 1e-12);
    }

    #[test]
    fn batch_is_sorted() {
        let r = l_direct_batch(0.75, &[13, -4, 5, -3], None).unwrap();
        let ds: Vec<i64> = r.iter().map(|x| x.d).collect();
        assert_eq!(ds, vec![-4, -3, 5, 13]);
    }
}
