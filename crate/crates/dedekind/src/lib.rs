//! Numerics for quadratic L-values, Dedekind zeta functions of number fields,
//! and resonator-weighted moments over the family of characters `χ_{8d}`.
//!
//! Modules are layered bottom-up: `arith` (integers and characters),
//! `special` (Γ, ζ, kernels, constants), `analytic` (local factors, Laurent
//! algebra, identities), `lfunc` (L-value evaluators), `resonator` (moment
//! sums and scans), `fields` (polynomials over F_p and field zeta functions),
//! and `rand_euler` (the random Euler product model).

pub mod analytic;
pub mod arith;
pub mod error;
pub mod fields;
pub mod lfunc;
pub mod quad;
pub mod rand_euler;
pub mod resonator;
pub mod special;
pub mod sum;
pub mod tol;

pub use error::{Error, Result};
