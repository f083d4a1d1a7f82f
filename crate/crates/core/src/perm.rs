//! Permutations of `{1, …, n}`, stored 0-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u32).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Perm { images })
    }

    /// From 1-based images, as in one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("one-line images start at 1".into()));
        }
        Perm::from_images(images.iter().map(|&x| x as u32 - 1).collect())
    }

    /// From disjoint or overlapping 1-based cycles, composed right to left.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut out = Perm::identity(n);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::InvalidPermutation(format!("letter out of range in cycle {cycle:?}")));
                }
                images[a - 1] = b as u32 - 1;
            }
            out = Perm::from_images(images)?.compose(&out);
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Perm { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    pub fn pow(&self, e: u32) -> Perm {
        (0..e).fold(Perm::identity(self.degree()), |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Nontrivial cycles in 1-based letters, each starting at its least letter.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }

    /// Same permutation on `offset + n'` letters, moving letter `i` to `i + offset`.
    pub fn shifted(&self, offset: usize, total: usize) -> Result<Perm> {
        if offset + self.degree() > total {
            return Err(Error::InvalidPermutation(format!("cannot shift by {offset} into S_{total}")));
        }
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Ok(Perm { images })
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.compose(other) == other.compose(self)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let text: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", text.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

/// Parses `n:(1,2)(3,4)`.
impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (deg, rest) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected n:(cycles), got {s:?}")))?;
        let n: usize = deg.trim().parse().map_err(|_| Error::Parse(format!("bad degree in {s:?}")))?;
        let mut cycles = Vec::new();
        for chunk in rest.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let body = chunk.strip_prefix('(').ok_or_else(|| Error::Parse(format!("bad cycle {chunk:?}")))?;
            if body.trim().is_empty() {
                continue;
            }
            let cycle = body
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad letter {x:?}"))))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
        }
        Perm::from_cycles(n, &cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_composition() {
        let a = Perm::from_cycles(4, &[vec![1, 2]]).unwrap();
        let b = Perm::from_cycles(4, &[vec![2, 3]]).unwrap();
        // apply b then a: 2 -> 3, 3 -> 2 -> 1, 1 -> 2
        let ab = a.compose(&b);
        assert_eq!(ab.cycles(), vec![vec![1, 2, 3]]);
        assert_eq!(ab.order(), 3);
        assert!(ab.compose(&ab.inverse()).is_identity());
        assert!(ab.pow(3).is_identity());
    }

    #[test]
    fn parse_and_display() {
        let p: Perm = "6:(1,2)(3,4)(5,6)".parse().unwrap();
        assert_eq!(p.to_string(), "(1,2)(3,4)(5,6)");
        assert_eq!(p.order(), 2);
        assert_eq!("3:()".parse::<Perm>().unwrap(), Perm::identity(3));
        assert!("3:(1,4)".parse::<Perm>().is_err());
        assert!(Perm::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn shifting() {
        let p = Perm::from_cycles(2, &[vec![1, 2]]).unwrap();
        let q = p.shifted(3, 6).unwrap();
        assert_eq!(q.cycles(), vec![vec![4, 5]]);
        assert!(p.shifted(5, 6).is_err());
    }
}
