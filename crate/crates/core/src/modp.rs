//! Base-`p` digit arithmetic: Lucas binomials and the digit containment
//! relations used by the two-part decomposition and p-Kostka tables.

use serde::Serialize;

/// Base-`p` digits of a non-negative integer, least significant first.
///
/// Zero has the empty digit list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitVector {
    pub digits: Vec<u64>,
    pub p: u64,
}

impl DigitVector {
    pub fn new(mut value: u64, p: u64) -> Self {
        assert!(p >= 2, "base must be at least 2");
        let mut digits = Vec::new();
        while value > 0 {
            digits.push(value % p);
            value /= p;
        }
        DigitVector { digits, p }
    }

    /// Digit at position `i`, zero beyond the canonical length.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exact binomial coefficient, `0` when `b > a`. Panics on overflow of `u128`.
pub fn binomial(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `C(a, b) mod p` via Lucas's digit product.
pub fn lucas_binom(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let (mut a, mut b) = (a, b);
    let mut acc = 1;
    while b > 0 {
        let (ai, bi) = (a % p, b % p);
        if bi > ai {
            return 0;
        }
        acc = acc * (binomial(ai, bi) % p as u128) as u64 % p;
        a /= p;
        b /= p;
    }
    acc
}

/// `a ⊆_p b`: every base-`p` digit of `a` is at most the matching digit of `b`.
pub fn subseteq_p(a: u64, b: u64, p: u64) -> bool {
    let (mut a, mut b) = (a, b);
    while a > 0 {
        if a % p > b % p {
            return false;
        }
        a /= p;
        b /= p;
    }
    true
}

/// `a ⊑_p b`: every base-`p` digit of `a` is either zero or equal to the
/// matching digit of `b`.
pub fn sqsubseteq_p(a: u64, b: u64, p: u64) -> bool {
    let (mut a, mut b) = (a, b);
    while a > 0 {
        let (ai, bi) = (a % p, b % p);
        if ai != 0 && ai != bi {
            return false;
        }
        a /= p;
        b /= p;
    }
    true
}
