//! Number fields built to control the Euler factors at small primes, their
//! Dedekind zeta functions for `σ > 1`, and quadratic zeta functions on the
//! negative half-plane.

mod construct;
mod poly;
mod zeta;

pub use construct::{
    build_inert_from, build_inert_polynomial, find_split_primes, multiquadratic_splitting,
    splitting_from_polynomial, InertFieldSpec, MultiquadraticSpec, PrimeAbove, Splitting,
    SplittingProfile,
};
pub use poly::{
    distinct_degree, factor_pattern, irreducible_poly_mod_p, is_irreducible, is_squarefree_poly,
    squarefree_decomposition, FpPoly,
};
pub use zeta::{
    northcott_enumerate, northcott_lower, zeta_field_sigma, zeta_k_direct, zeta_k_functional,
    zeta_k_special, zeta_neg_line, FieldSpec, FieldZeta, NegLineReport, NorthcottResult,
    SpecialValue,
};
