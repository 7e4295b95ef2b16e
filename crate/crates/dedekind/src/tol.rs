//! Named numerical tolerances shared by evaluators and reports.

/// Target absolute accuracy for special-function building blocks.
pub const SPECIAL_ABS: f64 = 1e-13;

/// Magnitude below which the `W2` integrand is treated as negligible.
pub const W2_INTEGRAND_CUTOFF: f64 = 1e-18;

/// Default trapezoidal step for vertical-line integrals.
pub const W2_STEP: f64 = 0.05;

/// Terms `n` with `nπ/(8d)` beyond this are dropped from the half-square sum.
pub const HALF_SQUARE_XI_MAX: f64 = 40.0;

/// Default relative target for L-value evaluation.
pub const LVALUE_REL: f64 = 1e-12;

/// Default prime cutoff for truncated Euler products over all primes.
pub const EULER_CUTOFF: u64 = 1_000_000;

/// Largest integer accepted by trial-division factorization.
pub const FACTOR_MAX: u64 = 1_000_000_000_000;

/// Slack applied when a report compares a value against an analytic bound.
pub const BOUND_SLACK: f64 = 1e-12;
