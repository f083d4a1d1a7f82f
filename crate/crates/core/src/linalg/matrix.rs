//! Dense matrices over `F_{p^k}` with elements in logarithmic form.

use std::sync::Arc;

use super::field::{Elem, FieldCtx};
use super::fp::FpMatrix;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Matrix {
    ctx: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Matrix {}×{} over F_{}^{}", self.rows, self.cols, self.ctx.p(), self.ctx.k())
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Matrix {
    pub fn zeros(ctx: &Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        Matrix { ctx: Arc::clone(ctx), rows, cols, data: vec![ctx.zero(); rows * cols] }
    }

    pub fn identity(ctx: &Arc<FieldCtx>, n: usize) -> Self {
        let mut m = Matrix::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = ctx.one();
        }
        m
    }

    pub fn from_fn(ctx: &Arc<FieldCtx>, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ctx: Arc::clone(ctx), rows, cols, data }
    }

    /// Embeds a prime-field matrix.
    pub fn from_fp(ctx: &Arc<FieldCtx>, m: &FpMatrix) -> Result<Self> {
        if m.p() != ctx.p() {
            return Err(Error::Precondition(format!("characteristic {} vs {}", m.p(), ctx.p())));
        }
        Ok(Matrix::from_fn(ctx, m.rows(), m.cols(), |i, j| ctx.from_int(m.get(i, j) as i64)))
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| self.ctx.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Precondition("shape mismatch".into()));
        }
        let f = &self.ctx;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { ctx: Arc::clone(f), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.ctx;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { ctx: Arc::clone(f), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Precondition(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.ctx;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (l, &a) in self.row(i).iter().enumerate() {
                if f.is_zero(a) {
                    continue;
                }
                axpy(f, dst, other.row(l), a, 0);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Matrix> {
        let mut out = Matrix::identity(&self.ctx, self.rows);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ctx, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    /// Row rank by Gaussian elimination. Over `F_2` the bit-packed
    /// elimination is used.
    pub fn rank(&self) -> usize {
        if self.ctx.order() == 2 {
            return self.rank_f2_packed();
        }
        self.rank_generic()
    }

    pub fn rank_generic(&self) -> usize {
        let f = &self.ctx;
        let mut m = self.data.clone();
        let c = self.cols;
        let mut r = 0;
        for col in 0..c {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !f.is_zero(m[i * c + col])) else { continue };
            if piv != r {
                for j in col..c {
                    m.swap(piv * c + j, r * c + j);
                }
            }
            let inv = f.inv(m[r * c + col]).expect("pivot is nonzero");
            let (top, bottom) = m.split_at_mut((r + 1) * c);
            let pivot_row = &top[r * c..];
            for row in bottom.chunks_exact_mut(c) {
                let a = row[col];
                if f.is_zero(a) {
                    continue;
                }
                let factor = f.neg(f.mul(a, inv));
                axpy(f, row, pivot_row, factor, col);
            }
            r += 1;
        }
        r
    }

    /// Rank over `F_2` with rows packed into 64-bit words.
    pub fn rank_f2_packed(&self) -> usize {
        assert_eq!(self.ctx.order(), 2, "bit-packed rank needs F_2");
        let words = self.cols.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                let mut w = vec![0u64; words];
                for (j, &x) in self.row(i).iter().enumerate() {
                    if !self.ctx.is_zero(x) {
                        w[j / 64] |= 1 << (j % 64);
                    }
                }
                w
            })
            .collect();
        rank_packed(&mut rows, self.cols)
    }
}

/// `dst[j] += factor · src[j]` for `j ≥ from`.
#[inline]
fn axpy(f: &FieldCtx, dst: &mut [Elem], src: &[Elem], factor: Elem, from: usize) {
    let zero = f.zero();
    for (d, &s) in dst[from..].iter_mut().zip(&src[from..]) {
        if s != zero {
            *d = f.add(*d, f.mul(factor, s));
        }
    }
}

/// Rank of a bit-packed `F_2` matrix, destroying it.
pub fn rank_packed(rows: &mut [Vec<u64>], cols: usize) -> usize {
    let mut r = 0;
    for col in 0..cols {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][w] & bit != 0) else { continue };
        rows.swap(r, piv);
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in bottom.iter_mut() {
            if row[w] & bit != 0 {
                for (x, &y) in row[w..].iter_mut().zip(&pivot[w..]) {
                    *x ^= y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(ctx: &Arc<FieldCtx>, rng: &mut ChaCha8Rng, rows: usize, cols: usize, rank: usize) -> Matrix {
        // product of random rows×rank and rank×cols factors
        let a = Matrix::from_fn(ctx, rows, rank, |_, _| ctx.random(rng));
        let b = Matrix::from_fn(ctx, rank, cols, |_, _| ctx.random(rng));
        a.mul(&b).unwrap()
    }

    #[test]
    fn small_examples() {
        let f2 = FieldCtx::get(2, 1, 0).unwrap();
        assert_eq!(Matrix::identity(&f2, 7).rank(), 7);
        assert_eq!(Matrix::zeros(&f2, 3, 5).rank(), 0);
        let one = f2.one();
        let zero = f2.zero();
        let m = Matrix::from_fn(&f2, 2, 3, |_, j| if j < 2 { one } else { zero });
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rank_generic(), 1);
    }

    #[test]
    fn rank_invariants_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for p in [2u32, 3, 5] {
            for k in [1u32, 2] {
                let ctx = FieldCtx::get(p, k, 3).unwrap();
                for _ in 0..500 / 6 + 1 {
                    let rows = rng.gen_range(1..20);
                    let cols = rng.gen_range(1..20);
                    let r = rng.gen_range(0..=rows.min(cols));
                    let m = random_matrix(&ctx, &mut rng, rows, cols, r);
                    let rank = m.rank();
                    assert!(rank <= r);
                    assert_eq!(rank, m.transpose().rank());
                    let mut idx: Vec<usize> = (0..rows).collect();
                    idx.shuffle(&mut rng);
                    assert_eq!(rank, m.select_rows(&idx).rank());
                    assert_eq!(rank, m.rank_generic());
                }
            }
        }
    }

    #[test]
    fn packed_matches_generic_on_wide_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ctx = FieldCtx::get(2, 1, 0).unwrap();
        for _ in 0..40 {
            let rows = rng.gen_range(1..150);
            let cols = rng.gen_range(1..150);
            let r = rng.gen_range(0..=rows.min(cols));
            let m = random_matrix(&ctx, &mut rng, rows, cols, r);
            assert_eq!(m.rank_f2_packed(), m.rank_generic());
        }
    }

    #[test]
    fn agrees_with_prime_field_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for p in [3u32, 5, 7] {
            let ctx = FieldCtx::get(p, 1, 0).unwrap();
            for _ in 0..30 {
                let fp = FpMatrix::from_fn(p, 12, 9, |_, _| rng.gen_range(0..p) * rng.gen_range(0..2));
                assert_eq!(Matrix::from_fp(&ctx, &fp).unwrap().rank(), fp.rank());
            }
        }
    }
}
