//! Finite fields `F_{p^k}` in discrete-logarithm form.
//!
//! An element is stored as `log_g(x)` for a fixed primitive element `g`
//! (the class of the indeterminate modulo a primitive modulus), with zero
//! encoded as `q - 1`. Multiplication is addition of logarithms; addition
//! goes through Zech logarithms, or through full tables when `q` is small.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{ensure_prime, Error, Result};

pub type Elem = u32;

/// Largest field order handled by the table construction.
pub const MAX_ORDER: u64 = 1 << 22;
/// Orders up to this bound get full `q × q` addition and multiplication tables.
const TABLE_ORDER: u32 = 256;

pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    seed: u64,
    /// Monic modulus, constant term first, length `k + 1`.
    modulus: Vec<u32>,
    /// `exp[i]` is `g^i` as a base-`p` packed coefficient vector.
    exp: Vec<u32>,
    /// Inverse of `exp`; `log[0]` holds the zero sentinel.
    log: Vec<u32>,
    /// `zech[d] = log(1 + g^d)`.
    zech: Vec<u32>,
    add_table: Vec<u32>,
    mul_table: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldInfo {
    pub p: u32,
    pub k: u32,
    pub seed: u64,
    pub modulus: Vec<u32>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx").field("p", &self.p).field("k", &self.k).field("modulus", &self.modulus).finish()
    }
}

type CacheMap = HashMap<(u32, u32, u64), Arc<FieldCtx>>;

fn cache() -> &'static Mutex<CacheMap> {
    static CACHE: OnceLock<Mutex<CacheMap>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldCtx {
    /// Shared context for `F_{p^k}`, built once per `(p, k, seed)`.
    pub fn get(p: u32, k: u32, seed: u64) -> Result<Arc<FieldCtx>> {
        if let Some(ctx) = cache().lock().expect("field cache poisoned").get(&(p, k, seed)) {
            return Ok(Arc::clone(ctx));
        }
        let ctx = Arc::new(FieldCtx::new(p, k, seed)?);
        let mut map = cache().lock().expect("field cache poisoned");
        Ok(Arc::clone(map.entry((p, k, seed)).or_insert(ctx)))
    }

    pub fn new(p: u32, k: u32, seed: u64) -> Result<FieldCtx> {
        ensure_prime(p as u64)?;
        if k == 0 {
            return Err(Error::Precondition("extension degree must be positive".into()));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            Error::ResourceGuard(format!("{p}^{k} exceeds the field table limit {MAX_ORDER}"))
        })? as u32;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((p as u64) << 40) ^ ((k as u64) << 32));
        let (modulus, exp) = loop {
            let mut cand: Vec<u32> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            cand.push(1);
            if cand[0] == 0 {
                continue;
            }
            if let Some(exp) = primitive_powers(p, k, q, &cand) {
                break (cand, exp);
            }
        };
        let mut log = vec![0u32; q as usize];
        log[0] = q - 1;
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let mut ctx = FieldCtx { p, k, q, seed, modulus, exp, log, zech: Vec::new(), add_table: Vec::new(), mul_table: Vec::new() };
        let one = 1u32;
        ctx.zech = (0..q - 1).map(|d| ctx.log[ctx.packed_add(one, ctx.exp[d as usize]) as usize]).collect();
        if q <= TABLE_ORDER {
            let n = q as usize;
            let mut add = vec![0u32; n * n];
            let mut mul = vec![0u32; n * n];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = ctx.add_slow(a, b);
                    mul[(a * q + b) as usize] = ctx.mul_slow(a, b);
                }
            }
            ctx.add_table = add;
            ctx.mul_table = mul;
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn info(&self) -> FieldInfo {
        FieldInfo { p: self.p, k: self.k, seed: self.seed, modulus: self.modulus.clone() }
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.q - 1
    }

    #[inline]
    pub fn one(&self) -> Elem {
        0
    }

    #[inline]
    pub fn is_zero(&self, a: Elem) -> bool {
        a == self.q - 1
    }

    /// The primitive element `g`.
    pub fn generator(&self) -> Elem {
        if self.q == 2 {
            0
        } else {
            1
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> Elem {
        let c = c.rem_euclid(self.p as i64) as u32;
        self.log[c as usize]
    }

    /// Inverse of [`from_int`](Self::from_int) on the prime subfield.
    pub fn to_int(&self, a: Elem) -> Option<u32> {
        let packed = self.to_packed(a);
        (packed < self.p).then_some(packed)
    }

    /// Base-`p` packed coefficient vector of `a` in the polynomial basis.
    pub fn to_packed(&self, a: Elem) -> u32 {
        if self.is_zero(a) {
            0
        } else {
            self.exp[a as usize]
        }
    }

    pub fn from_packed(&self, v: u32) -> Elem {
        self.log[v as usize]
    }

    /// All elements, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        std::iter::once(self.zero()).chain(0..self.q - 1)
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Elem {
        rng.gen_range(0..self.q)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if !self.mul_table.is_empty() {
            return self.mul_table[(a * self.q + b) as usize];
        }
        self.mul_slow(a, b)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if !self.add_table.is_empty() {
            return self.add_table[(a * self.q + b) as usize];
        }
        self.add_slow(a, b)
    }

    #[inline]
    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let z = self.q - 1;
        if a == z || b == z {
            return z;
        }
        let s = a + b;
        if s >= z {
            s - z
        } else {
            s
        }
    }

    #[inline]
    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        let z = self.q - 1;
        if a == z {
            return b;
        }
        if b == z {
            return a;
        }
        let d = if b >= a { b - a } else { b + z - a };
        let t = self.zech[d as usize];
        if t == z {
            return z;
        }
        let s = a + t;
        if s >= z {
            s - z
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || self.is_zero(a) {
            return a;
        }
        let z = self.q - 1;
        let s = a + z / 2;
        if s >= z {
            s - z
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::Precondition("inverse of zero".into()));
        }
        let z = self.q - 1;
        Ok(if a == 0 { 0 } else { z - a })
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return self.one();
        }
        if self.is_zero(a) {
            return a;
        }
        ((a as u64 * e) % (self.q as u64 - 1)) as u32
    }

    /// Frobenius `a ↦ a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// Addition of packed coefficient vectors, digit by digit.
    fn packed_add(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }
}

/// Powers `x^0 .. x^{q-2}` modulo `f` when `x` has multiplicative order
/// exactly `q - 1`, which forces `f` to be irreducible.
fn primitive_powers(p: u32, k: u32, q: u32, f: &[u32]) -> Option<Vec<u32>> {
    let k = k as usize;
    let mut coeffs = vec![0u32; k];
    let mut exp = Vec::with_capacity(q as usize - 1);
    if k == 1 {
        // F_p: the element is the root c of x - c, i.e. -f[0]
        let g = (p - f[0]) % p;
        let mut cur = 1u32;
        for i in 0..q - 1 {
            if i > 0 && cur == 1 {
                return None;
            }
            exp.push(cur);
            cur = cur * g % p;
        }
        return (cur == 1).then_some(exp);
    }
    coeffs[0] = 1;
    let pack = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d);
    for i in 0..q - 1 {
        let packed = pack(&coeffs);
        if i > 0 && packed == 1 {
            return None;
        }
        exp.push(packed);
        // multiply by x and reduce by the monic modulus
        let top = coeffs[k - 1];
        for j in (1..k).rev() {
            coeffs[j] = coeffs[j - 1];
        }
        coeffs[0] = 0;
        if top != 0 {
            for j in 0..k {
                coeffs[j] = (coeffs[j] + p - top * f[j] % p) % p;
            }
        }
    }
    (pack(&coeffs) == 1).then_some(exp)
}

/// Largest `k` with `p^k ≤ bound`.
pub fn max_degree_below(p: u32, bound: u64) -> u32 {
    let mut k = 0;
    let mut q = 1u64;
    while q * p as u64 <= bound {
        q *= p as u64;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial division by every monic polynomial of degree ≤ k/2.
    fn is_irreducible_by_trial(p: u32, f: &[u32]) -> bool {
        let k = f.len() - 1;
        for d in 1..=k / 2 {
            let count = p.pow(d as u32);
            for code in 0..count {
                let mut g: Vec<u32> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
                g.push(1);
                if poly_rem(p, f, &g).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    fn poly_rem(p: u32, f: &[u32], g: &[u32]) -> Vec<u32> {
        let mut r = f.to_vec();
        let dg = g.len() - 1;
        while r.len() > dg {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dg;
            for (i, &c) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
            r.pop();
        }
        r
    }

    #[test]
    fn moduli_are_irreducible() {
        for (p, k) in [(2, 1), (2, 2), (2, 4), (2, 8), (3, 2), (3, 3), (5, 2), (7, 2), (2, 12)] {
            for seed in 0..3 {
                let ctx = FieldCtx::new(p, k, seed).unwrap();
                assert!(is_irreducible_by_trial(p, ctx.modulus()), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        for (p, k) in [(2, 2), (3, 2), (5, 1), (2, 3)] {
            let f = FieldCtx::new(p, k, 7).unwrap();
            let elems: Vec<Elem> = f.elements().collect();
            assert_eq!(elems.len() as u32, f.order());
            for &a in &elems {
                assert_eq!(f.add(a, f.zero()), a);
                assert_eq!(f.mul(a, f.one()), a);
                assert!(f.is_zero(f.sub(a, a)));
                if !f.is_zero(a) {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for &b in &elems {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for &c in &elems {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn zech_matches_tables() {
        let f = FieldCtx::new(3, 3, 1).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add_slow(a, b));
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn prime_subfield_embedding() {
        for p in [2, 3, 5, 7] {
            let f = FieldCtx::new(p, 2, 0).unwrap();
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    let s = f.add(f.from_int(a), f.from_int(b));
                    assert_eq!(f.to_int(s), Some(((a + b) % p as i64) as u32));
                    let m = f.mul(f.from_int(a), f.from_int(b));
                    assert_eq!(f.to_int(m), Some(((a * b) % p as i64) as u32));
                }
            }
            assert_eq!(f.from_int(-1), f.neg(f.one()));
        }
    }

    #[test]
    fn large_field_builds() {
        let k = max_degree_below(3, 1 << 20);
        assert_eq!(k, 12);
        let f = FieldCtx::get(3, k, 5).unwrap();
        let g = f.generator();
        assert_eq!(f.pow(g, f.order() as u64 - 1), f.one());
        assert_eq!(f.frobenius(f.from_int(2)), f.from_int(2));
    }

    #[test]
    fn cache_shares_contexts() {
        let a = FieldCtx::get(2, 4, 11).unwrap();
        let b = FieldCtx::get(2, 4, 11).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(FieldCtx::new(4, 1, 0).is_err());
        assert!(FieldCtx::new(2, 40, 0).is_err());
    }
}
