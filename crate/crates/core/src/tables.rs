//! Closed-form tables for two-part partitions `(n - second, second)`.

use serde::Serialize;

use crate::error::{ensure_prime, Error, Result};
use crate::modp::{binomial, sqsubseteq_p, subseteq_p};
use crate::partition::{p_core_two_part, Partition};

/// Largest `n` accepted by the dimension tables; keeps every binomial in `u128`.
pub const MAX_TABLE_N: usize = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwoPartLabel {
    pub n: usize,
    pub second: usize,
    pub p: usize,
}

impl TwoPartLabel {
    pub fn new(n: usize, second: usize, p: usize) -> Result<Self> {
        ensure_prime(p as u64)?;
        if 2 * second > n {
            return Err(Error::Precondition(format!("2·{second} > {n}")));
        }
        Ok(TwoPartLabel { n, second, p })
    }

    pub fn partition(&self) -> Partition {
        Partition::two_part(self.n, self.second).expect("validated label")
    }

    pub fn is_regular(&self) -> bool {
        is_two_part_regular(self.n, self.second, self.p)
    }
}

/// `(n - s, s)` has no `p` equal nonzero parts.
pub fn is_two_part_regular(n: usize, s: usize, p: usize) -> bool {
    !(p == 2 && s > 0 && n == 2 * s)
}

fn check_regular(n: usize, s: usize, p: usize) -> Result<()> {
    ensure_prime(p as u64)?;
    if 2 * s > n {
        return Err(Error::Precondition(format!("2·{s} > {n}")));
    }
    if !is_two_part_regular(n, s, p) {
        return Err(Error::NotRegular(format!("({},{s})", n - s), p as u64));
    }
    Ok(())
}

/// Decomposition number `[S^(n-k,k) : D^(n-s,s)]`.
pub fn psi(n: usize, k: usize, s: usize, p: usize) -> Result<u8> {
    check_regular(n, s, p)?;
    if 2 * k > n {
        return Err(Error::Precondition(format!("2·{k} > {n}")));
    }
    if s > k {
        return Ok(0);
    }
    Ok(sqsubseteq_p((k - s) as u64, (n - 2 * s + 1) as u64, p as u64) as u8)
}

/// p-Kostka number `[M^(n-k,k) : Y^(n-s,s)]`.
pub fn phi(n: usize, k: usize, s: usize, p: usize) -> Result<u8> {
    ensure_prime(p as u64)?;
    if 2 * k > n || 2 * s > n {
        return Err(Error::Precondition(format!("need 2·{s}, 2·{k} ≤ {n}")));
    }
    if s > k {
        return Ok(0);
    }
    Ok(subseteq_p((k - s) as u64, (n - 2 * s) as u64, p as u64) as u8)
}

/// `dim S^(n-m,m) = C(n,m) - C(n,m-1)`.
pub fn specht_dim(n: usize, m: usize) -> Result<u128> {
    if 2 * m > n {
        return Err(Error::Precondition(format!("2·{m} > {n}")));
    }
    if n > MAX_TABLE_N {
        return Err(Error::ResourceGuard(format!("n = {n} exceeds {MAX_TABLE_N}")));
    }
    let below = if m == 0 { 0 } else { binomial(n as u64, m as u64 - 1) };
    Ok(binomial(n as u64, m as u64) - below)
}

/// `dim D^(n-s,s)` by back substitution through the unitriangular
/// decomposition matrix.
pub fn simple_dim(n: usize, s: usize, p: usize) -> Result<u128> {
    check_regular(n, s, p)?;
    let mut dims: Vec<u128> = Vec::with_capacity(s + 1);
    for k in 0..=s {
        let mut d = specht_dim(n, k)?;
        for (j, &dj) in dims.iter().enumerate() {
            if psi(n, k, j, p)? == 1 {
                d = d
                    .checked_sub(dj)
                    .ok_or_else(|| Error::Internal(format!("negative simple dimension at ({},{k})", n - k)))?;
            }
        }
        dims.push(d);
    }
    Ok(dims[s])
}

/// Composition factors of `S^(n-s,s)`, each with multiplicity one.
pub fn specht_decomposition(n: usize, s: usize, p: usize) -> Result<Vec<TwoPartLabel>> {
    check_regular(n, s, p)?;
    let mut out = Vec::new();
    for j in 0..=s {
        if psi(n, s, j, p)? == 1 {
            out.push(TwoPartLabel { n, second: j, p });
        }
    }
    Ok(out)
}

/// Restriction of `D^(a,b)` to `S_{a+b-1}` for odd `p` in the two branches
/// where it is known to be semisimple or simple.
pub fn mbr_restrict(a: usize, b: usize, p: usize) -> Result<Vec<TwoPartLabel>> {
    ensure_prime(p as u64)?;
    if p == 2 {
        return Err(Error::Precondition("branching rule is only provided for odd p".into()));
    }
    if !(0 < b && b < a) {
        return Err(Error::Precondition(format!("need 0 < b < a, got ({a},{b})")));
    }
    let n = a + b - 1;
    // b - 2 may be negative; compare residues
    let lhs = (b as i64 - 2).rem_euclid(p as i64);
    let res_a = (a as i64).rem_euclid(p as i64);
    let res_a1 = (a as i64 - 1).rem_euclid(p as i64);
    if lhs == res_a1 {
        return Err(Error::BranchNotCovered(format!("({a},{b}) with b-2 ≡ a-1 mod {p}")));
    }
    if lhs == res_a {
        Ok(vec![TwoPartLabel { n, second: b, p }])
    } else {
        Ok(vec![TwoPartLabel { n, second: b, p }, TwoPartLabel { n, second: b - 1, p }])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    #[serde(rename = "ThmA_i")]
    ThmAi,
    #[serde(rename = "ThmA_ii")]
    ThmAii,
    #[serde(rename = "ThmC_i")]
    ThmCi,
    #[serde(rename = "ThmC_ii")]
    ThmCii,
    #[serde(rename = "dim_shortcut")]
    DimShortcut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedComplexity {
    /// `None` when no rule applies.
    pub value: Option<usize>,
    pub rule: Option<Rule>,
    pub weight: usize,
}

impl PredictedComplexity {
    pub fn is_covered(&self) -> bool {
        self.value.is_some()
    }
}

/// Expected complexity of `D^(n-second, second)`.
pub fn predicted_complexity(n: usize, second: usize, p: usize) -> Result<PredictedComplexity> {
    check_regular(n, second, p)?;
    let w = p_core_two_part(n, second, p)?.weight;
    let covered = |value, rule| Ok(PredictedComplexity { value: Some(value), rule: Some(rule), weight: w });
    if second == 1 {
        let drop = p == 2 && n % 4 == 2;
        return covered(if drop { w - 1 } else { w }, Rule::ThmAi);
    }
    if second == 2 {
        let drop = p == 2 && (n == 5 || n == 6);
        return covered(if drop { w - 1 } else { w }, Rule::ThmAii);
    }
    if p > 2 && second < 2 * p {
        return covered(w, Rule::ThmCi);
    }
    if p > 3 && second == 2 * p {
        return covered(w, Rule::ThmCii);
    }
    if simple_dim(n, second, p)? % p as u128 != 0 {
        return covered(w, Rule::DimShortcut);
    }
    Ok(PredictedComplexity { value: None, rule: None, weight: w })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_examples() {
        for p in [2, 3, 5] {
            for n in 1..15 {
                for k in 0..=n / 2 {
                    if is_two_part_regular(n, k, p) {
                        assert_eq!(psi(n, k, k, p).unwrap(), 1);
                    }
                }
            }
        }
        assert_eq!(psi(6, 2, 1, 2).unwrap(), 1);
        assert_eq!(psi(5, 2, 1, 2).unwrap(), 0);
        assert!(matches!(psi(4, 2, 2, 2), Err(Error::NotRegular(..))));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(6, 1, 0, 3).unwrap(), 0);
        assert_eq!(phi(7, 1, 0, 3).unwrap(), 1);
        assert_eq!(phi(8, 3, 3, 2).unwrap(), 1);
    }

    #[test]
    fn dims() {
        assert_eq!(specht_dim(5, 2).unwrap(), 5);
        assert_eq!(specht_dim(6, 2).unwrap(), 9);
        assert_eq!(specht_dim(9, 0).unwrap(), 1);
        assert_eq!(simple_dim(6, 2, 2).unwrap(), 4);
        assert_eq!(simple_dim(5, 2, 2).unwrap(), 4);
        assert_eq!(simple_dim(7, 0, 3).unwrap(), 1);
        // natural module modulo the trivial one when p | n
        assert_eq!(simple_dim(6, 1, 3).unwrap(), 4);
        assert_eq!(simple_dim(7, 1, 3).unwrap(), 6);
    }

    #[test]
    fn decompositions() {
        let labels = |v: Vec<TwoPartLabel>| v.iter().map(|l| l.second).collect::<Vec<_>>();
        assert_eq!(labels(specht_decomposition(6, 2, 2).unwrap()), vec![0, 1, 2]);
        assert_eq!(labels(specht_decomposition(7, 2, 3).unwrap()), vec![0, 2]);
        assert_eq!(labels(specht_decomposition(9, 0, 5).unwrap()), vec![0]);
    }

    #[test]
    fn dimension_consistency() {
        for p in [2, 3, 5] {
            for n in 1..=20 {
                for k in 0..=n / 2 {
                    let mut total = 0;
                    for s in 0..=k {
                        if is_two_part_regular(n, s, p) && psi(n, k, s, p).unwrap() == 1 {
                            total += simple_dim(n, s, p).unwrap();
                        }
                    }
                    assert_eq!(total, specht_dim(n, k).unwrap(), "n={n} k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn branching() {
        let out = mbr_restrict(4, 2, 5).unwrap();
        assert_eq!(out.iter().map(|l| l.partition().to_string()).collect::<Vec<_>>(), vec!["3,2", "4,1"]);
        let out = mbr_restrict(5, 2, 3).unwrap();
        assert_eq!(out.iter().map(|l| l.partition().to_string()).collect::<Vec<_>>(), vec!["4,2", "5,1"]);
        assert!(matches!(mbr_restrict(4, 2, 3), Err(Error::BranchNotCovered(_))));
        assert!(mbr_restrict(4, 2, 2).is_err());
    }

    #[test]
    fn branching_preserves_dimension() {
        for p in [3, 5] {
            for n in 2..=12 {
                for b in 1..=n / 2 {
                    let a = n - b;
                    if b >= a {
                        continue;
                    }
                    let Ok(parts) = mbr_restrict(a, b, p) else { continue };
                    let total: u128 = parts.iter().map(|l| simple_dim(l.n, l.second, p).unwrap()).sum();
                    assert_eq!(total, simple_dim(n, b, p).unwrap(), "({a},{b}) p={p}");
                }
            }
        }
    }

    #[test]
    fn predictions() {
        let pc = predicted_complexity(6, 1, 2).unwrap();
        assert_eq!((pc.value, pc.weight, pc.rule), (Some(2), 3, Some(Rule::ThmAi)));
        let pc = predicted_complexity(5, 2, 2).unwrap();
        assert_eq!((pc.value, pc.weight), (Some(1), 2));
        let pc = predicted_complexity(7, 2, 3).unwrap();
        assert_eq!((pc.value, pc.weight), (Some(2), 2));
        let pc = predicted_complexity(14, 7, 5).unwrap();
        assert_eq!(pc.rule, Some(Rule::ThmCi));
        let pc = predicted_complexity(22, 10, 5).unwrap();
        assert_eq!(pc.rule, Some(Rule::ThmCii));
    }

    #[test]
    fn predictions_bounded_by_weight() {
        for p in [2, 3, 5, 7] {
            for n in 1..=40 {
                for s in 0..=n / 2 {
                    if !is_two_part_regular(n, s, p) {
                        continue;
                    }
                    let pc = predicted_complexity(n, s, p).unwrap();
                    if let Some(v) = pc.value {
                        assert!(v <= pc.weight);
                    }
                    if !simple_dim(n, s, p).unwrap().is_multiple_of(p as u128) {
                        assert_eq!(pc.value, Some(pc.weight), "n={n} s={s} p={p}");
                    }
                }
            }
        }
    }
}
