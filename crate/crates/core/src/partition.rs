//! Integer partitions and their p-modular combinatorics: cores and weights
//! via the abacus, regularity, p-adic expansions and dominance.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{ensure_prime, Error, Result};

/// A weakly decreasing list of positive parts. The empty list is the
/// partition of zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an interior zero")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(n - second, second)`.
    pub fn two_part(n: usize, second: usize) -> Result<Self> {
        if 2 * second > n {
            return Err(Error::InvalidPartition(format!("({}, {second}) with 2·{second} > {n}", n as i64 - second as i64)));
        }
        Partition::new(vec![n - second, second])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&r| r > j).count())
            .collect();
        Partition { parts }
    }

    /// No `p` equal nonzero parts.
    pub fn is_regular(&self, p: usize) -> bool {
        self.parts.windows(p).all(|w| w[0] != w[p - 1])
    }

    /// The conjugate is `p`-regular, i.e. consecutive differences
    /// (including the last part against zero) are below `p`.
    pub fn is_restricted(&self, p: usize) -> bool {
        (0..self.len()).all(|i| self.part(i) - self.part(i + 1) < p)
    }

    /// Hook lengths row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| (0..row).map(|j| row - j + conj.part(j) - i - 1).collect())
            .collect()
    }

    /// Number of standard tableaux by the hook length formula.
    pub fn hook_formula_count(&self) -> u128 {
        let n = self.n() as u128;
        let mut num: u128 = (1..=n).product();
        let mut hooks: Vec<u128> = self.hook_lengths().into_iter().flatten().map(|h| h as u128).collect();
        hooks.sort_unstable();
        for h in hooks {
            num /= h;
        }
        num
    }

    /// Componentwise `self + factor · other`.
    pub fn add_scaled(&self, other: &Partition, factor: usize) -> Partition {
        let len = self.len().max(other.len());
        let parts = (0..len).map(|i| self.part(i) + factor * other.part(i)).collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", text.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreWeight {
    pub core: Partition,
    pub weight: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityFlags {
    pub p_regular: bool,
    pub p_restricted: bool,
}

/// p-core and p-weight by sliding beads up the runners of a `p`-abacus.
pub fn p_core(lambda: &Partition, p: usize) -> Result<CoreWeight> {
    ensure_prime(p as u64)?;
    let len = lambda.len();
    let beta: Vec<usize> = (0..len).map(|i| lambda.part(i) + len - 1 - i).collect();
    let mut per_runner = vec![0usize; p];
    let mut slides = 0usize;
    for &b in &beta {
        per_runner[b % p] += 1;
    }
    // each runner keeps its bead count; beads settle at the lowest positions
    let mut settled: Vec<usize> = Vec::with_capacity(len);
    for (r, &count) in per_runner.iter().enumerate() {
        settled.extend((0..count).map(|j| r + j * p));
    }
    let before: usize = beta.iter().sum();
    let after: usize = settled.iter().sum();
    slides += (before - after) / p;
    settled.sort_unstable_by(|a, b| b.cmp(a));
    let parts: Vec<usize> = settled.iter().enumerate().map(|(i, &b)| b - (len - 1 - i)).collect();
    let core = Partition::new(parts)?;
    debug_assert_eq!(lambda.n(), core.n() + p * slides);
    Ok(CoreWeight { core, weight: slides })
}

/// Closed-form core of `(n - second, second)`, with `second = m·p + s`,
/// `0 ≤ s < p` and `r = n mod p`.
pub fn p_core_two_part(n: usize, second: usize, p: usize) -> Result<CoreWeight> {
    ensure_prime(p as u64)?;
    if 2 * second > n {
        return Err(Error::Precondition(format!("2·{second} > {n}")));
    }
    let s = second % p;
    let r = n % p;
    let pair = |a: usize, b: usize| Partition::new(vec![a, b]);
    let core = if s == 0 {
        pair(r, 0)?
    } else if p == 2 {
        if r == 0 {
            Partition::empty()
        } else {
            pair(2, 1)?
        }
    } else if 2 * s < p {
        if r + 1 < s {
            pair(p + r - s, s)?
        } else if r < 2 * s - 1 {
            pair(s - 1, r + 1 - s)?
        } else if r == 2 * s - 1 {
            pair(p + s - 1, s)?
        } else {
            pair(r - s, s)?
        }
    } else if 2 * s == p + 1 {
        let h = (p - 1) / 2;
        if r == 0 {
            pair((3 * p - 1) / 2, p.div_ceil(2))?
        } else if r < h {
            pair(h + r, p.div_ceil(2))?
        } else {
            pair(h, r - h)?
        }
    } else {
        // (p+1)/2 < s < p, which forces p > 3
        let t = 2 * s - p - 1;
        if r < t {
            pair(s - 1, p + r + 1 - s)?
        } else if r == t {
            pair(p + s - 1, s)?
        } else if r + 1 < s {
            pair(p + r - s, s)?
        } else {
            pair(s - 1, r + 1 - s)?
        }
    };
    if core.n() > n || !(n - core.n()).is_multiple_of(p) {
        return Err(Error::Internal(format!("closed-form core {core} inconsistent with n={n}")));
    }
    let weight = (n - core.n()) / p;
    Ok(CoreWeight { core, weight })
}

pub fn classify(lambda: &Partition, p: usize) -> Result<RegularityFlags> {
    ensure_prime(p as u64)?;
    Ok(RegularityFlags { p_regular: lambda.is_regular(p), p_restricted: lambda.is_restricted(p) })
}

/// `[λ(0), λ(1), …]` with every `λ(i)` p-restricted and `λ = Σ p^i λ(i)`.
///
/// The number of columns of each length is written in base `p`; digit `i`
/// gives the column multiplicities of `λ(i)`.
pub fn p_adic_expansion(lambda: &Partition, p: usize) -> Result<Vec<Partition>> {
    ensure_prime(p as u64)?;
    if lambda.is_empty() {
        return Ok(vec![Partition::empty()]);
    }
    let len = lambda.len();
    // column multiplicity of length j+1
    let mult: Vec<usize> = (0..len).map(|j| lambda.part(j) - lambda.part(j + 1)).collect();
    let levels = mult.iter().map(|&c| digit_count(c, p)).max().unwrap_or(1).max(1);
    let mut out = Vec::with_capacity(levels);
    for level in 0..levels {
        let digits: Vec<usize> = mult.iter().map(|&c| (c / p.pow(level as u32)) % p).collect();
        let parts: Vec<usize> = (0..len).map(|i| digits[i..].iter().sum()).collect();
        out.push(Partition::new(parts)?);
    }
    let rebuilt = out
        .iter()
        .enumerate()
        .fold(Partition::empty(), |acc, (i, part)| acc.add_scaled(part, p.pow(i as u32)));
    if &rebuilt != lambda || out.iter().any(|q| !q.is_restricted(p)) {
        return Err(Error::Internal(format!("p-adic expansion of {lambda} failed to reassemble")));
    }
    Ok(out)
}

fn digit_count(mut c: usize, p: usize) -> usize {
    let mut k = 0;
    while c > 0 {
        c /= p;
        k += 1;
    }
    k
}

/// `(p^m)^{n_m} … (1)^{n_0}` with `n_i = |λ(i)|`.
pub fn o_lambda(lambda: &Partition, p: usize) -> Result<Partition> {
    let expansion = p_adic_expansion(lambda, p)?;
    let mut parts = Vec::new();
    for (i, piece) in expansion.iter().enumerate().rev() {
        parts.extend(std::iter::repeat_n(p.pow(i as u32), piece.n()));
    }
    Partition::new(parts)
}

/// `μ ⊵ λ`.
pub fn dominates(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.n() != lambda.n() {
        return Err(Error::SizeMismatch(mu.n(), lambda.n()));
    }
    let len = mu.len().max(lambda.len());
    let (mut sm, mut sl) = (0, 0);
    for i in 0..len {
        sm += mu.part(i);
        sl += lambda.part(i);
        if sm < sl {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            rec(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
