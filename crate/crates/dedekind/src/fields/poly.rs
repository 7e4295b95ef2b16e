//! Dense polynomials over `F_p` for primes `p < 2^32`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{domain, Error, Result};

/// Coefficients low to high, reduced, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

impl FpPoly {
    /// From coefficients low to high; reduces mod `p`.
    pub fn new(p: u64, coeffs: &[u64]) -> Self {
        let mut c: Vec<u64> = coeffs.iter().map(|&a| a % p).collect();
        trim(&mut c);
        Self { p, c }
    }

    pub fn from_u128(p: u64, coeffs: &[u128]) -> Self {
        let c: Vec<u64> = coeffs.iter().map(|&a| (a % p as u128) as u64).collect();
        Self::new(p, &c)
    }

    pub fn zero(p: u64) -> Self {
        Self { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, &[1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, &[0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; 0 for the zero polynomial as well as constants.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invm(self.lead(), self.p);
        Self { p: self.p, c: self.c.iter().map(|&a| mulm(a, inv, self.p)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c: Vec<u64> = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        Self::new(self.p, &c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c: Vec<u64> = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + self.p - o.c.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        Self::new(self.p, &c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + mulm(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, &c)
    }

    /// `(q, r)` with `self = q·o + r`, `deg r < deg o`.
    pub fn divrem(&self, o: &Self) -> (Self, Self) {
        assert!(!o.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        if r.len() < o.c.len() {
            return (Self::zero(p), self.clone());
        }
        let inv = invm(o.lead(), p);
        let mut q = vec![0u64; r.len() - o.c.len() + 1];
        for k in (0..q.len()).rev() {
            let coef = mulm(r[k + o.c.len() - 1], inv, p);
            q[k] = coef;
            if coef != 0 {
                for (j, &b) in o.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mulm(coef, b, p)) % p;
                }
            }
        }
        (Self::new(p, &q), Self::new(p, &r))
    }

    pub fn rem(&self, o: &Self) -> Self {
        self.divrem(o).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    pub fn derivative(&self) -> Self {
        let c: Vec<u64> = self.c.iter().enumerate().skip(1).map(|(i, &a)| mulm(a, i as u64 % self.p, self.p)).collect();
        Self::new(self.p, &c)
    }

    /// `g` with `g(x)^p = self`, assuming only exponents divisible by `p` occur.
    fn pth_root(&self) -> Self {
        let step = self.p as usize;
        let c: Vec<u64> = self.c.iter().step_by(step).copied().collect();
        Self::new(self.p, &c)
    }
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p >= 1 << 32 {
        return domain(format!("{p} is not a prime below 2^32"));
    }
    Ok(())
}

/// Ben-Or: a monic `f` of degree `d` is irreducible iff
/// `gcd(x^{p^i} - x, f) = 1` for `1 ≤ i ≤ d/2`.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let d = f.degree();
    if f.is_constant() {
        return false;
    }
    let x = FpPoly::x(f.p);
    let mut h = x.clone();
    for _ in 0..d / 2 {
        h = h.powmod(f.p, f);
        if !h.sub(&x).gcd(f).is_constant() {
            return false;
        }
    }
    true
}

pub fn is_squarefree_poly(f: &FpPoly) -> bool {
    f.gcd(&f.derivative()).is_constant()
}

/// `f = Π s_k^k` with the `s_k` squarefree and pairwise coprime; returns `(s_k, k)`
/// for nonconstant `s_k`.
pub fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    sff(&f.monic(), 1, &mut out);
    out
}

fn sff(f: &FpPoly, mult: u32, out: &mut Vec<(FpPoly, u32)>) {
    if f.is_constant() {
        return;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.divrem(&c).0;
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if !fac.is_constant() {
            out.push((fac.monic(), i * mult));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if !c.is_constant() {
        sff(&c.monic().pth_root(), mult * f.p as u32, out);
    }
}

/// For squarefree monic `f`: `(i, g_i)` where `g_i` is the product of the
/// irreducible factors of degree `i`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(u32, FpPoly)> {
    let p = f.p;
    let x = FpPoly::x(p);
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1u32;
    while rest.degree() >= 2 * i as usize {
        h = h.powmod(p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_constant() {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((i, g));
        }
        i += 1;
    }
    if !rest.is_constant() {
        out.push((rest.degree() as u32, rest));
    }
    out
}

/// Degrees and multiplicities `(f, e)` of the irreducible factors of `f`,
/// sorted.
pub fn factor_pattern(f: &FpPoly) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for (s, e) in squarefree_decomposition(f) {
        for (deg, g) in distinct_degree(&s) {
            for _ in 0..g.degree() as u32 / deg {
                out.push((deg, e));
            }
        }
    }
    out.sort_unstable();
    out
}

/// A monic irreducible polynomial of degree `d` over `F_p`, drawn from a
/// seeded stream.
pub fn irreducible_poly_mod_p(d: usize, p: u64, seed: u64) -> Result<FpPoly> {
    if d == 0 {
        return domain("degree must be at least 1");
    }
    check_prime(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(p.wrapping_mul(1_000_003).wrapping_add(d as u64));
    for _ in 0..100 * d {
        let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        c.push(1);
        let f = FpPoly::new(p, &c);
        if is_irreducible(&f) {
            return Ok(f);
        }
    }
    Err(Error::NonConvergence(format!("no irreducible degree-{d} polynomial mod {p} in {} draws", 100 * d)))
}
