//! Special functions: complex Γ and its archimedean variants, Riemann and
//! Hurwitz zeta, the `W2` and `Φ` kernels, Stieltjes constants, and the
//! explicit constants `c5, c6, c10, c20, c21`.

mod constants;
mod gamma;
mod kernels;
mod stieltjes;
mod zeta;

pub use constants::{
    const_c10, const_c20, const_c21, const_c5, const_c6, log_cosh_moment, Estimate,
};
pub use gamma::{gamma, gamma_c, gamma_m, gamma_r, gamma_real, ln_gamma};
pub use kernels::{phi_weight, w2, ContourSpec, W2Kernel, W2Value};
pub use stieltjes::{
    rgamma_taylor, stieltjes_gamma, zeta_one_plus_2w_regular, zeta_regular_part, EULER_GAMMA,
};
pub use zeta::{exp_integral_e1, hurwitz_zeta, riemann_zeta, riemann_zeta_real};

pub(crate) use stieltjes::series_exp;
pub(crate) use zeta::em_corrections;
