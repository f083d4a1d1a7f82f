//! Matrices of multivariate polynomials over `F_p`, their specialisations
//! at points of `F_{p^k}`, and generic rank (randomised or exact).

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::field::{max_degree_below, Elem, FieldCtx, FieldInfo};
use super::fp::{inv_mod, FpMatrix};
use super::matrix::Matrix;
use crate::error::{ensure_prime, Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u16>;

/// Sparse polynomial over `F_p`; coefficients are nonzero residues.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: u32, nvars: usize, p: u32) -> Self {
        let mut out = Poly::zero();
        if !c.is_multiple_of(p) {
            out.terms.insert(vec![0; nvars], c % p);
        }
        out
    }

    /// The variable `α_i`.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly { terms: BTreeMap::from([(m, 1)]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: u32, p: u32) {
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly, p: u32) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c, p);
        }
        out
    }

    pub fn sub(&self, other: &Poly, p: u32) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), p - c, p);
        }
        out
    }

    pub fn scale(&self, c: u32, p: u32) -> Poly {
        let c = c % p;
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, &x)| (m.clone(), x * c % p)).collect() }
    }

    pub fn mul(&self, other: &Poly, p: u32) -> Poly {
        let mut out = Poly::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let m: Monomial = a.iter().zip(b).map(|(u, v)| u + v).collect();
                out.add_term(m, x * y % p, p);
            }
        }
        out
    }

    fn leading(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    /// Exact quotient `self / divisor`; errors if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Poly, p: u32) -> Result<Poly> {
        let Some((lm, lc)) = divisor.leading() else {
            return Err(Error::Precondition("division by the zero polynomial".into()));
        };
        let lc_inv = inv_mod(lc, p);
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            if m.iter().zip(lm).any(|(a, b)| a < b) {
                return Err(Error::Internal("inexact polynomial division".into()));
            }
            let qm: Monomial = m.iter().zip(lm).map(|(a, b)| a - b).collect();
            let qc = c * lc_inv % p;
            let term = Poly { terms: BTreeMap::from([(qm.clone(), qc)]) };
            rem = rem.sub(&term.mul(divisor, p), p);
            quot.add_term(qm, qc, p);
        }
        Ok(quot)
    }

    pub fn eval(&self, ctx: &FieldCtx, point: &[Elem]) -> Elem {
        let mut acc = ctx.zero();
        for (m, &c) in &self.terms {
            let mut v = ctx.from_int(c as i64);
            for (&e, &x) in m.iter().zip(point) {
                if e > 0 {
                    v = ctx.mul(v, ctx.pow(x, e as u64));
                }
            }
            acc = ctx.add(acc, v);
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    p: u32,
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
    degree: usize,
}

impl PolyMatrix {
    pub fn zeros(p: u32, nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix { p, nvars, rows, cols, entries: vec![Poly::zero(); rows * cols], degree: 0 }
    }

    pub fn from_fn(p: u32, nvars: usize, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        let degree = entries.iter().map(Poly::degree).max().unwrap_or(0);
        PolyMatrix { p, nvars, rows, cols, entries, degree }
    }

    /// `Σ_i α_i · X_i` for prime-field matrices `X_i` of equal shape.
    pub fn linear_combination(xs: &[FpMatrix]) -> Result<Self> {
        let first = xs.first().ok_or_else(|| Error::Precondition("empty combination".into()))?;
        let (p, rows, cols) = (first.p(), first.rows(), first.cols());
        if xs.iter().any(|x| x.rows() != rows || x.cols() != cols || x.p() != p) {
            return Err(Error::Precondition("shape mismatch in linear combination".into()));
        }
        let nvars = xs.len();
        Ok(PolyMatrix::from_fn(p, nvars, rows, cols, |i, j| {
            let mut out = Poly::zero();
            for (v, x) in xs.iter().enumerate() {
                let mut m = vec![0; nvars];
                m[v] = 1;
                out.add_term(m, x.get(i, j), p);
            }
            out
        }))
    }

    pub fn constant(m: &FpMatrix, nvars: usize) -> Self {
        PolyMatrix::from_fn(m.p(), nvars, m.rows(), m.cols(), |i, j| Poly::constant(m.get(i, j), nvars, m.p()))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Recorded bound on the total degree of every entry.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows || self.nvars != other.nvars || self.p != other.p {
            return Err(Error::Precondition("incompatible polynomial matrices".into()));
        }
        let p = self.p;
        let mut out = PolyMatrix::from_fn(p, self.nvars, self.rows, other.cols, |i, j| {
            let mut acc = Poly::zero();
            for l in 0..self.cols {
                let (a, b) = (self.get(i, l), other.get(l, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b, p), p);
                }
            }
            acc
        });
        out.degree = self.degree + other.degree;
        Ok(out)
    }

    pub fn evaluate(&self, ctx: &Arc<FieldCtx>, point: &[Elem]) -> Result<Matrix> {
        if point.len() != self.nvars {
            return Err(Error::Precondition(format!("point has {} coordinates, expected {}", point.len(), self.nvars)));
        }
        if ctx.p() != self.p {
            return Err(Error::Precondition("field characteristic mismatch".into()));
        }
        Ok(Matrix::from_fn(ctx, self.rows, self.cols, |i, j| self.get(i, j).eval(ctx, point)))
    }

    /// Exact rank over `F_p(α)` by fraction-free elimination.
    pub fn symbolic_rank(&self) -> Result<usize> {
        self.symbolic_rank_with_budget(SYMBOLIC_TERM_BUDGET)
    }

    pub fn symbolic_rank_with_budget(&self, term_budget: usize) -> Result<usize> {
        if self.rows.max(self.cols) > SYMBOLIC_MAX_DIM || self.nvars > SYMBOLIC_MAX_VARS {
            return Err(Error::ResourceGuard(format!(
                "symbolic rank limited to {SYMBOLIC_MAX_DIM}×{SYMBOLIC_MAX_DIM} and {SYMBOLIC_MAX_VARS} variables"
            )));
        }
        let p = self.p;
        let mut m: Vec<Vec<Poly>> = (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut prev = Poly::constant(1, self.nvars, p);
        let mut rank = 0;
        let (rows, cols) = (self.rows, self.cols);
        for k in 0..rows.min(cols) {
            // pivot search over the remaining block
            let Some((pi, pj)) = (k..rows).flat_map(|i| (k..cols).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero())
            else {
                break;
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            for i in k + 1..rows {
                for j in k + 1..cols {
                    let t = m[k][k].mul(&m[i][j], p).sub(&m[i][k].mul(&m[k][j], p), p);
                    let t = t.div_exact(&prev, p)?;
                    if t.len() > term_budget {
                        return Err(Error::ResourceGuard(format!("intermediate polynomial exceeds {term_budget} terms")));
                    }
                    m[i][j] = t;
                }
                m[i][k] = Poly::zero();
            }
            prev = m[k][k].clone();
            rank += 1;
        }
        Ok(rank)
    }
}

pub const SYMBOLIC_MAX_DIM: usize = 64;
pub const SYMBOLIC_MAX_VARS: usize = 6;
pub const SYMBOLIC_TERM_BUDGET: usize = 20_000;

/// Sampling parameters for randomised generic rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[derive(Default)]
pub struct GenericConfig {
    pub samples: usize,
    /// Extension degree; `None` picks the largest `k` with `p^k ≤ 2^20`.
    pub k: Option<u32>,
    pub seed: u64,
}


/// Provenance and failure bound of a randomised rank computation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankCertificate {
    pub field: FieldInfo,
    pub samples: usize,
    pub seed: u64,
    /// Bound on the degree of every minor.
    pub minor_degree: usize,
    /// Probability bound that some reported rank is below the generic rank.
    pub failure_bound: f64,
    /// `p^k ≤ 100 · minor_degree`.
    pub weak_field: bool,
}

/// Target failure bound used when the sample count is left at zero.
pub const DEFAULT_LOG2_BOUND: f64 = -40.0;
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

/// Smallest `S` with `(deg/q)^S ≤ 2^log2_bound`.
pub fn samples_for_bound(minor_degree: usize, q: u64, log2_bound: f64) -> usize {
    let ratio = (minor_degree.max(1) as f64 / q as f64).log2();
    if ratio >= 0.0 {
        return 64;
    }
    (log2_bound / ratio).ceil().max(1.0) as usize
}

/// Generic ranks of `PM^1, …, PM^max_power`, each the maximum over the
/// sampled points. Powers are taken after evaluation.
pub fn generic_power_ranks(pm: &PolyMatrix, max_power: u32, cfg: &GenericConfig) -> Result<(Vec<usize>, RankCertificate)> {
    ensure_prime(pm.p as u64)?;
    if pm.rows != pm.cols && max_power > 1 {
        return Err(Error::Precondition("powers of a non-square matrix".into()));
    }
    let k = cfg.k.unwrap_or_else(|| max_degree_below(pm.p, DEFAULT_FIELD_BOUND).max(1));
    let ctx = FieldCtx::get(pm.p, k, cfg.seed)?;
    let q = ctx.order() as u64;
    let minor_degree = pm.degree.max(1) * max_power.max(1) as usize * pm.rows.min(pm.cols).max(1);
    let samples = if cfg.samples == 0 { samples_for_bound(minor_degree, q, DEFAULT_LOG2_BOUND) } else { cfg.samples };
    let per_sample: Vec<Vec<usize>> = (0..samples)
        .into_par_iter()
        .map(|s| -> Result<Vec<usize>> {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ s as u64);
            let point: Vec<Elem> = (0..pm.nvars).map(|_| ctx.random(&mut rng)).collect();
            let a = pm.evaluate(&ctx, &point)?;
            let mut ranks = Vec::with_capacity(max_power as usize);
            let mut cur = a.clone();
            for e in 1..=max_power {
                let r = cur.rank();
                ranks.push(r);
                if r == 0 {
                    ranks.resize(max_power as usize, 0);
                    break;
                }
                if e < max_power {
                    cur = cur.mul(&a)?;
                }
            }
            Ok(ranks)
        })
        .collect::<Result<_>>()?;
    let mut ranks = vec![0usize; max_power as usize];
    for r in &per_sample {
        for (m, &x) in ranks.iter_mut().zip(r) {
            *m = (*m).max(x);
        }
    }
    let failure_bound = (minor_degree as f64 / q as f64).min(1.0).powi(samples as i32);
    let cert = RankCertificate {
        field: ctx.info(),
        samples,
        seed: cfg.seed,
        minor_degree,
        failure_bound,
        weak_field: q <= 100 * minor_degree as u64,
    };
    Ok((ranks, cert))
}

/// Randomised rank of `pm` over `F_p(α)`.
pub fn generic_rank(pm: &PolyMatrix, cfg: &GenericConfig) -> Result<(usize, RankCertificate)> {
    let (ranks, cert) = generic_power_ranks(pm, 1, cfg)?;
    Ok((ranks[0], cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn regular_cp(p: u32) -> FpMatrix {
        // g - 1 for the cyclic shift on F_p C_p
        FpMatrix::from_fn(p, p as usize, p as usize, |i, j| {
            let shift = if (j + 1) % p as usize == i { 1 } else { 0 };
            (shift + p - if i == j { 1 } else { 0 }) % p
        })
    }

    #[test]
    fn evaluation_examples() {
        let ctx = FieldCtx::get(2, 1, 0).unwrap();
        let pm = PolyMatrix::from_fn(2, 1, 1, 1, |_, _| Poly::var(0, 1));
        assert!(pm.evaluate(&ctx, &[ctx.zero()]).unwrap().is_zero());
        let reg = PolyMatrix::linear_combination(&[regular_cp(2)]).unwrap();
        assert_eq!(reg.evaluate(&ctx, &[ctx.one()]).unwrap().rank(), 1);
        let c = FpMatrix::from_rows(2, &[vec![1, 0], vec![1, 1]]).unwrap();
        let cm = PolyMatrix::constant(&c, 2);
        let f4 = FieldCtx::get(2, 2, 0).unwrap();
        let expected = Matrix::from_fp(&f4, &c).unwrap();
        assert_eq!(cm.evaluate(&f4, &[f4.generator(), f4.one()]).unwrap(), expected);
        assert!(pm.evaluate(&ctx, &[]).is_err());
    }

    #[test]
    fn generic_rank_examples() {
        let pm = PolyMatrix::from_fn(3, 1, 1, 1, |_, _| Poly::var(0, 1));
        let cfg = GenericConfig { seed: 1, ..Default::default() };
        let (r, cert) = generic_rank(&pm, &cfg).unwrap();
        assert_eq!(r, 1);
        assert!(cert.failure_bound <= 2f64.powi(-40));
        assert_eq!(pm.symbolic_rank().unwrap(), 1);
        for p in [2u32, 3, 5] {
            let reg = PolyMatrix::linear_combination(&[regular_cp(p)]).unwrap();
            assert_eq!(generic_rank(&reg, &cfg).unwrap().0, p as usize - 1);
            assert_eq!(reg.symbolic_rank().unwrap(), p as usize - 1);
            let (powers, _) = generic_power_ranks(&reg, p, &cfg).unwrap();
            let expected: Vec<usize> = (1..=p as usize).map(|e| p as usize - e).collect();
            assert_eq!(powers, expected);
        }
    }

    #[test]
    fn evaluate_commutes_with_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for p in [2u32, 3, 5] {
            let ctx = FieldCtx::get(p, 2, 0).unwrap();
            for _ in 0..10 {
                let xs: Vec<FpMatrix> = (0..3).map(|_| FpMatrix::from_fn(p, 4, 4, |_, _| rng.gen_range(0..p))).collect();
                let a = PolyMatrix::linear_combination(&xs).unwrap();
                let b = a.mul(&a).unwrap();
                assert_eq!(b.degree(), 2);
                let point: Vec<Elem> = (0..3).map(|_| ctx.random(&mut rng)).collect();
                let ea = a.evaluate(&ctx, &point).unwrap();
                assert_eq!(b.evaluate(&ctx, &point).unwrap(), ea.mul(&ea).unwrap());
            }
        }
    }

    #[test]
    fn symbolic_matches_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for p in [2u32, 3] {
            for _ in 0..10 {
                let n = rng.gen_range(2..7);
                let xs: Vec<FpMatrix> =
                    (0..2).map(|_| FpMatrix::from_fn(p, n, n, |_, _| rng.gen_range(0..p) * rng.gen_range(0..2))).collect();
                let a = PolyMatrix::linear_combination(&xs).unwrap();
                let cfg = GenericConfig { seed: 2, ..Default::default() };
                assert_eq!(a.symbolic_rank().unwrap(), generic_rank(&a, &cfg).unwrap().0);
            }
        }
    }

    #[test]
    fn exact_division() {
        let p = 5;
        let x = Poly::var(0, 2);
        let y = Poly::var(1, 2);
        let a = x.add(&y, p);
        let b = x.sub(&y.scale(2, p), p);
        let prod = a.mul(&b, p);
        assert_eq!(prod.div_exact(&a, p).unwrap(), b);
        assert!(x.div_exact(&y, p).is_err());
    }

    #[test]
    fn symbolic_guard() {
        let pm = PolyMatrix::zeros(2, 7, 2, 2);
        assert!(matches!(pm.symbolic_rank(), Err(Error::ResourceGuard(_))));
    }
}
