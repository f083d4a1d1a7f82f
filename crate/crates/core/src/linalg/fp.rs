//! Dense matrices over a prime field `F_p` with entries stored as `0..p`.
//!
//! Modules are built over the prime field; extension-field matrices only
//! appear after evaluation at a point.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Entries are reduced modulo `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Precondition("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| x.rem_euclid(p as i64) as u32).collect();
        Ok(FpMatrix { p, rows: rows.len(), cols, data })
    }

    pub fn from_fn(p: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % p);
            }
        }
        FpMatrix { p, rows, cols, data }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == FpMatrix::identity(self.p, self.rows)
    }

    pub fn transpose(&self) -> Self {
        FpMatrix::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::Precondition(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; other.cols];
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for (l, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                for (x, &b) in acc.iter_mut().zip(other.row(l)) {
                    *x += a * b as u64;
                }
                if p > 1 << 15 {
                    acc.iter_mut().for_each(|x| *x %= p);
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (x % p) as u32;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| (a + b) % self.p).collect();
        Ok(FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| (a + self.p - b) % self.p).collect();
        Ok(FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data })
    }

    fn check_same_shape(&self, other: &FpMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols || self.p != other.p {
            return Err(Error::Precondition("shape mismatch".into()));
        }
        Ok(())
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        FpMatrix::from_fn(self.p, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        FpMatrix::from_fn(self.p, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        FpMatrix::from_fn(self.p, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.rows != other.rows {
            return Err(Error::Precondition("hcat row mismatch".into()));
        }
        Ok(FpMatrix::from_fn(self.p, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &FpMatrix) -> FpMatrix {
        let (r, c) = (self.rows, self.cols);
        FpMatrix::from_fn(self.p, r + other.rows, c + other.cols, |i, j| match (i < r, j < c) {
            (true, true) => self.get(i, j),
            (false, false) => other.get(i - r, j - c),
            _ => 0,
        })
    }

    pub fn rref(&self) -> Echelon {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            m.swap_rows(r, piv);
            let inv = inv_mod(m.get(r, c), p);
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c);
                    if f != 0 {
                        m.axpy_row(i, r, p - f, c);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            m.swap_rows(r, piv);
            let inv = inv_mod(m.get(r, c), p);
            for i in r + 1..m.rows {
                let f = m.get(i, c);
                if f != 0 {
                    m.axpy_row(i, r, (p - f * inv % p) % p, c);
                }
            }
            r += 1;
        }
        r
    }

    /// Pivot rows of `self`: a lexicographically first set of linearly
    /// independent rows of maximal size.
    pub fn independent_rows(&self) -> Vec<usize> {
        self.transpose().rref().pivots
    }

    pub fn inverse(&self) -> Result<FpMatrix> {
        if self.rows != self.cols {
            return Err(Error::Precondition("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = self.hcat(&FpMatrix::identity(self.p, n))?;
        let ech = aug.rref();
        if ech.pivots.len() < n || ech.pivots[n - 1] >= n {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(ech.matrix.select(&(0..n).collect::<Vec<_>>(), &cols))
    }

    /// Basis of the right null space, one vector per column.
    pub fn nullspace(&self) -> FpMatrix {
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut out = FpMatrix::zeros(self.p, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, 1);
            for (r, &pc) in ech.pivots.iter().enumerate() {
                let v = ech.matrix.get(r, f);
                out.set(pc, k, (self.p - v) % self.p);
            }
        }
        out
    }

    /// `X` with `self · X = b`, for `self` of full column rank.
    pub fn solve(&self, b: &FpMatrix) -> Result<FpMatrix> {
        let ech = self.hcat(b)?.rref();
        let n = self.cols;
        if ech.pivots.iter().any(|&c| c >= n) {
            return Err(Error::Precondition("system is inconsistent".into()));
        }
        if ech.pivots.len() < n {
            return Err(Error::Precondition("system is underdetermined".into()));
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..n + b.cols).collect();
        Ok(ech.matrix.select(&rows, &cols))
    }

    pub fn pow(&self, e: u32) -> Result<FpMatrix> {
        let mut out = FpMatrix::identity(self.p, self.rows);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, f: u32) {
        let p = self.p;
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = *x * f % p;
        }
    }

    /// `row[dst] += f · row[src]`, starting at column `from`.
    fn axpy_row(&mut self, dst: usize, src: usize, f: u32, from: usize) {
        let (p, c) = (self.p, self.cols);
        let (s, d) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * c);
            (&lo[src * c..(src + 1) * c], &mut hi[..c])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * c);
            (&hi[..c], &mut lo[dst * c..(dst + 1) * c])
        };
        for j in from..c {
            if s[j] != 0 {
                d[j] = (d[j] + f * s[j]) % p;
            }
        }
    }
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn basic_rank() {
        assert_eq!(FpMatrix::identity(3, 5).rank(), 5);
        assert_eq!(FpMatrix::zeros(3, 4, 4).rank(), 0);
        assert_eq!(m(2, &[&[1, 1, 0], &[1, 1, 0]]).rank(), 1);
        assert_eq!(m(3, &[&[1, 2], &[2, 1]]).rank(), 1);
        assert_eq!(m(5, &[&[1, 2], &[2, 1]]).rank(), 2);
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(5, &[&[1, 2, 0], &[0, 1, 3], &[4, 0, 2]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let b = m(5, &[&[1], &[2], &[3]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
        assert!(m(3, &[&[1, 2], &[2, 1]]).inverse().is_err());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(3, &[&[1, 2, 0, 1], &[2, 1, 0, 2]]);
        let ns = a.nullspace();
        assert_eq!(ns.cols(), 4 - a.rank());
        assert!(a.mul(&ns).unwrap().is_zero());
    }

    #[test]
    fn independent_rows_span() {
        let a = m(2, &[&[1, 1, 0], &[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let idx = a.independent_rows();
        assert_eq!(idx, vec![0, 2]);
        assert_eq!(a.select_rows(&idx).rank(), a.rank());
    }

    #[test]
    fn inverse_mod() {
        for p in [2, 3, 5, 7, 101] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }
}
