//! Number fields with prescribed behavior at the first `n` primes: a degree-`d`
//! field in which they are inert, and a multiquadratic field in which they
//! split completely.

use serde::{Deserialize, Serialize};

use super::poly::{factor_pattern, irreducible_poly_mod_p, is_irreducible, is_squarefree_poly, FpPoly};
use crate::arith::{crt, is_prime, kronecker, nth_prime};
use crate::error::{domain, Error, Result};

/// Monic `ψ` of degree `d`, irreducible modulo each of the first `n` primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InertFieldSpec {
    pub degree: usize,
    pub n: usize,
    /// Low to high, length `d + 1`, leading 1; reduced to `[0, Π p_j)`.
    pub coefficients: Vec<u128>,
    pub inert_primes: Vec<u64>,
    pub modulus: u128,
}

fn first_primes(n: usize) -> Result<Vec<u64>> {
    (1..=n).map(nth_prime).collect()
}

/// Coefficient-wise CRT of the given monic `β_j` (one per prime, same degree).
pub fn build_inert_from(betas: &[FpPoly]) -> Result<InertFieldSpec> {
    let Some(first) = betas.first() else {
        return domain("need at least one residue polynomial");
    };
    let d = first.degree();
    if d == 0 {
        return domain("degree must be at least 1");
    }
    let moduli: Vec<u64> = betas.iter().map(FpPoly::modulus).collect();
    for b in betas {
        if b.degree() != d || b.coeffs()[d] != 1 {
            return domain("residue polynomials must be monic of equal degree");
        }
    }
    let mut coefficients = Vec::with_capacity(d + 1);
    let mut modulus = 1;
    for i in 0..d {
        let res: Vec<i128> = betas.iter().map(|b| b.coeffs()[i] as i128).collect();
        let (x, m) = crt(&res, &moduli)?;
        coefficients.push(x);
        modulus = m;
    }
    coefficients.push(1);
    Ok(InertFieldSpec { degree: d, n: betas.len(), coefficients, inert_primes: moduli, modulus })
}

/// `ψ_{d,n}` from seeded random irreducible `β_j` mod the first `n` primes.
pub fn build_inert_polynomial(d: usize, n: usize, seed: u64) -> Result<InertFieldSpec> {
    if d == 0 || n == 0 {
        return domain("need d ≥ 1 and n ≥ 1");
    }
    if n > 25 {
        return Err(Error::Unsupported(format!("n = {n}: the modulus would exceed 2^128")));
    }
    let betas: Vec<FpPoly> =
        first_primes(n)?.into_iter().map(|p| irreducible_poly_mod_p(d, p, seed)).collect::<Result<_>>()?;
    build_inert_from(&betas)
}

impl InertFieldSpec {
    pub fn reduce(&self, p: u64) -> FpPoly {
        FpPoly::from_u128(p, &self.coefficients)
    }

    /// Replays the construction: `ψ mod p_j` is irreducible of degree `d`.
    pub fn verify(&self) -> bool {
        self.inert_primes.iter().all(|&p| {
            let f = self.reduce(p);
            f.degree() == self.degree && is_irreducible(&f)
        })
    }
}

/// One prime of the field above `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeAbove {
    /// Ramification index.
    pub e: u32,
    /// Inertia degree.
    pub f: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingProfile {
    pub p: u64,
    pub degree: u32,
    pub primes: Vec<PrimeAbove>,
}

impl SplittingProfile {
    pub fn g(&self) -> u32 {
        self.primes.len() as u32
    }

    /// Common `e`, if all primes above `p` share it.
    pub fn e(&self) -> Option<u32> {
        let e = self.primes.first()?.e;
        self.primes.iter().all(|q| q.e == e).then_some(e)
    }

    pub fn f(&self) -> Option<u32> {
        let f = self.primes.first()?.f;
        self.primes.iter().all(|q| q.f == f).then_some(f)
    }

    pub fn is_ramified(&self) -> bool {
        self.primes.iter().any(|q| q.e > 1)
    }

    /// `Σ e f`, which equals the field degree.
    pub fn degree_sum(&self) -> u32 {
        self.primes.iter().map(|q| q.e * q.f).sum()
    }

    /// `log Π_𝔭 (1 - N𝔭^{-σ})^{-1}`.
    pub fn log_local_factor(&self, sigma: f64) -> f64 {
        let lp = (self.p as f64).ln();
        self.primes.iter().map(|q| -(-(-(q.f as f64) * sigma * lp).exp()).ln_1p()).sum()
    }
}

/// The behavior of `p` in a polynomial field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Splitting {
    /// `p` does not divide the index `[O_F : Z[θ]]`, so the factorization of
    /// `ψ mod p` gives the primes above `p`. `divides_disc` is set when `p | disc(ψ)`.
    Determined { profile: SplittingProfile, divides_disc: bool },
    /// `p` divides the index; only `1 ≤ local factor ≤ (1 - p^{-σ})^{-d}` is used.
    IndexDivisor { p: u64, degree: u32 },
}

/// Dedekind's criterion: with `ψ ≡ g h (mod p)`, `g` the radical and `h = ψ/g`,
/// `p` divides the index iff `gcd(ḡ, h̄, (ψ - g h)/p mod p) ≠ 1`.
fn divides_index(coeffs: &[u128], p: u64) -> bool {
    let psi = FpPoly::from_u128(p, coeffs);
    let mut g = FpPoly::one(p);
    for (s, _) in super::poly::squarefree_decomposition(&psi) {
        g = g.mul(&s);
    }
    let h = psi.divrem(&g).0;
    let p2 = p as u128 * p as u128;
    // g h over Z with lifts in [0, p), reduced mod p²
    let mut gh = vec![0u128; g.coeffs().len() + h.coeffs().len() - 1];
    for (i, &a) in g.coeffs().iter().enumerate() {
        for (j, &b) in h.coeffs().iter().enumerate() {
            gh[i + j] = (gh[i + j] + a as u128 * b as u128) % p2;
        }
    }
    let f: Vec<u64> = (0..coeffs.len())
        .map(|i| {
            let a = coeffs[i] % p2;
            let b = gh.get(i).copied().unwrap_or(0);
            let diff = (a + p2 - b) % p2;
            debug_assert_eq!(diff % p as u128, 0);
            (diff / p as u128) as u64
        })
        .collect();
    let big_f = FpPoly::new(p, &f);
    !big_f.gcd(&g).gcd(&h).is_constant()
}

pub fn splitting_from_polynomial(spec: &InertFieldSpec, p: u64) -> Result<Splitting> {
    if !is_prime(p) || p >= 1 << 32 {
        return domain(format!("{p} is not a prime below 2^32"));
    }
    let psi = spec.reduce(p);
    let divides_disc = !is_squarefree_poly(&psi);
    let degree = spec.degree as u32;
    if divides_disc && divides_index(&spec.coefficients, p) {
        return Ok(Splitting::IndexDivisor { p, degree });
    }
    let primes = factor_pattern(&psi).into_iter().map(|(f, e)| PrimeAbove { e, f }).collect();
    Ok(Splitting::Determined { profile: SplittingProfile { p, degree, primes }, divides_disc })
}

/// `Q(√q_1, …, √q_k)` with each `q_j ≡ 1 mod 4 p_1⋯p_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiquadraticSpec {
    pub k: usize,
    pub n: usize,
    pub q_list: Vec<u64>,
    /// `4 p_1⋯p_n`.
    pub modulus: u64,
}

const MAX_K: usize = 6;
const MAX_N: usize = 8;

fn split_modulus(n: usize) -> Result<u64> {
    if n > MAX_N {
        return Err(Error::Unsupported(format!("n = {n} > {MAX_N}")));
    }
    Ok(4 * first_primes(n)?.iter().product::<u64>())
}

impl MultiquadraticSpec {
    /// Validates: strictly increasing primes, each `≡ 1 mod 4 p_1⋯p_n`.
    pub fn new(q_list: Vec<u64>, n: usize) -> Result<Self> {
        if q_list.is_empty() || q_list.len() > MAX_K {
            return Err(Error::Unsupported(format!("k = {} not in 1..={MAX_K}", q_list.len())));
        }
        let modulus = split_modulus(n)?;
        if !q_list.windows(2).all(|w| w[0] < w[1]) {
            return domain("q_list must be strictly increasing");
        }
        for &q in &q_list {
            if !is_prime(q) || q % modulus != 1 {
                return domain(format!("{q} is not a prime ≡ 1 mod {modulus}"));
            }
        }
        Ok(Self { k: q_list.len(), n, q_list, modulus })
    }

    pub fn degree(&self) -> u32 {
        1 << self.k
    }
}

/// The `k` smallest primes `≡ 1 mod 4 p_1⋯p_n`.
pub fn find_split_primes(k: usize, n: usize) -> Result<MultiquadraticSpec> {
    if k == 0 || k > MAX_K {
        return Err(Error::Unsupported(format!("k = {k} not in 1..={MAX_K}")));
    }
    let m = split_modulus(n)?;
    let mut out = Vec::with_capacity(k);
    let mut q = m + 1;
    let budget = 1_000_000u64;
    for _ in 0..budget {
        if is_prime(q) {
            out.push(q);
            if out.len() == k {
                return MultiquadraticSpec::new(out, n);
            }
        }
        q += m;
    }
    Err(Error::NonConvergence(format!("fewer than {k} primes ≡ 1 mod {m} in {budget} steps")))
}

/// Decomposition of `p` in the multiquadratic field: inertia `e = 2` when `p`
/// is one of the `q_j`, residue degree 1 or 2 from the Frobenius vector of the
/// unramified generators.
pub fn multiquadratic_splitting(spec: &MultiquadraticSpec, p: u64) -> Result<SplittingProfile> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let ramified = spec.q_list.contains(&p);
    let e = if ramified { 2 } else { 1 };
    let all_split = spec
        .q_list
        .iter()
        .filter(|&&q| q != p)
        .all(|&q| kronecker(q as i64, p as i64) == 1);
    let f = if all_split { 1 } else { 2 };
    let g = spec.degree() / (e * f);
    Ok(SplittingProfile { p, degree: spec.degree(), primes: vec![PrimeAbove { e, f }; g as usize] })
}
