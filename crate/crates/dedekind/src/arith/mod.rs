//! Integer arithmetic: primes, divisor functions, quadratic characters,
//! discriminant families, and the resonator weights.

mod functions;
mod kronecker;
mod primes;
mod weights;

pub use functions::{
    epsilon_d, factor_with, factorize, h_func, h_func_exact, h_prime, h_prime_exact,
    is_squarefree, mobius, omega, sigma, spf_table, squarefree_table, tau, tau_table,
    Factorization,
};
pub use kronecker::{
    character_table, crt, enumerate_8d_family, enumerate_fundamental, family_8d,
    is_fundamental, kronecker, mod_inverse, Sign,
};
pub use primes::{is_prime, nth_prime, primes_between, sieve_primes, PrimeTable};
pub use weights::{fgh_values, h11, h_mult, m_func, Fgh, Regime, Weights};
