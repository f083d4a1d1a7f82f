//! Elementary abelian p-subgroups of `S_n`: the standard families, the
//! maximal class representatives, orbit statistics and fixed tabloids.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{ensure_prime, Error, Result};
use crate::linalg::FpMatrix;
use crate::modp::binomial;
use crate::partition::Partition;
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassTag {
    /// `E_a`: `a` disjoint p-cycles on the first `ap` letters.
    E(usize),
    /// `K_ℓ × F_ℓ` for `p = 2`.
    KF(usize),
    /// `R_{m,p}` on the first `p^m` letters.
    R(usize),
    /// `∏ R_{i,p}^{t_i}`, with `t[0]` fixed letters.
    Maximal(Vec<usize>),
    Conjugate(Box<ClassTag>),
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::E(a) => write!(f, "E_{a}"),
            ClassTag::KF(l) => write!(f, "K_{l}xF_{l}"),
            ClassTag::R(m) => write!(f, "R_{m}"),
            ClassTag::Maximal(t) => {
                let parts: Vec<String> = t.iter().enumerate().map(|(i, x)| format!("t{i}={x}")).collect();
                write!(f, "maximal[{}]", parts.join(","))
            }
            ClassTag::Conjugate(inner) => write!(f, "{inner}^g"),
        }
    }
}

impl Serialize for ClassTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElabSubgroup {
    n: usize,
    p: usize,
    gens: Vec<Perm>,
    tag: ClassTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitStats {
    pub a0: usize,
    pub a1: usize,
    /// Decreasing.
    pub orbit_sizes: Vec<usize>,
}

impl ElabSubgroup {
    /// Validates order, commutation and independence of the generators.
    pub fn new(n: usize, p: usize, gens: Vec<Perm>, tag: ClassTag) -> Result<Self> {
        ensure_prime(p as u64)?;
        for g in &gens {
            if g.degree() != n {
                return Err(Error::InvalidPermutation(format!("{g} is not in S_{n}")));
            }
            if g.order() != p {
                return Err(Error::InvalidPermutation(format!("{g} does not have order {p}")));
            }
        }
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(Error::InvalidPermutation(format!("{a} and {b} do not commute")));
                }
            }
        }
        let group = ElabSubgroup { n, p, gens, tag };
        if !group.generators_independent() {
            return Err(Error::InvalidPermutation("generators are not independent".into()));
        }
        Ok(group)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn tag(&self) -> &ClassTag {
        &self.tag
    }

    /// `h g h^{-1}` for every generator.
    pub fn conjugate(&self, h: &Perm) -> Result<ElabSubgroup> {
        let hi = h.inverse();
        let gens = self.gens.iter().map(|g| h.compose(g).compose(&hi)).collect();
        ElabSubgroup::new(self.n, self.p, gens, ClassTag::Conjugate(Box::new(self.tag.clone())))
    }

    /// The kernel of `F_p^r → Sym(O)` on each orbit `O` is spanned by the
    /// Schreier relations found while labelling `O`; the generators are
    /// independent when these kernels intersect trivially.
    fn generators_independent(&self) -> bool {
        let r = self.rank();
        if r == 0 {
            return true;
        }
        let p = self.p as u32;
        let mut annihilators: Vec<Vec<u32>> = Vec::new();
        for orbit in self.orbits() {
            let mut label: HashMap<usize, Vec<u32>> = HashMap::from([(orbit[0], vec![0; r])]);
            let mut stack = vec![orbit[0]];
            let mut relations: Vec<Vec<i64>> = Vec::new();
            while let Some(y) = stack.pop() {
                let v = label[&y].clone();
                for (i, g) in self.gens.iter().enumerate() {
                    let z = g.apply(y);
                    let mut w = v.clone();
                    w[i] = (w[i] + 1) % p;
                    match label.get(&z) {
                        Some(existing) => {
                            let rel: Vec<i64> = w.iter().zip(existing).map(|(&a, &b)| a as i64 - b as i64).collect();
                            if rel.iter().any(|&x| x.rem_euclid(p as i64) != 0) {
                                relations.push(rel);
                            }
                        }
                        None => {
                            label.insert(z, w);
                            stack.push(z);
                        }
                    }
                }
            }
            if relations.is_empty() {
                relations.push(vec![0; r]);
            }
            let kernel = FpMatrix::from_rows(p, &relations).expect("rectangular relations");
            let ann = kernel.nullspace();
            for j in 0..ann.cols() {
                annihilators.push((0..r).map(|i| ann.get(i, j)).collect());
            }
        }
        if annihilators.is_empty() {
            return false;
        }
        let rows: Vec<Vec<i64>> = annihilators.iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
        FpMatrix::from_rows(p, &rows).expect("rectangular").rank() == r
    }

    /// Orbits on 0-based letters, each sorted, in order of least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.gens {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn orbit_stats(&self) -> OrbitStats {
        let mut orbit_sizes: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
        OrbitStats {
            a0: orbit_sizes.iter().filter(|&&s| s == 1).count(),
            a1: orbit_sizes.iter().filter(|&&s| s == self.p).count(),
            orbit_sizes,
        }
    }
}

/// `E_a ≤ S_n`.
pub fn standard_e(a: usize, p: usize, n: usize) -> Result<ElabSubgroup> {
    ensure_prime(p as u64)?;
    if a * p > n {
        return Err(Error::Precondition(format!("E_{a} needs {} letters but n = {n}", a * p)));
    }
    let gens = (0..a)
        .map(|i| Perm::from_cycles(n, &[(i * p + 1..=(i + 1) * p).collect()]))
        .collect::<Result<Vec<_>>>()?;
    ElabSubgroup::new(n, p, gens, ClassTag::E(a))
}

/// `K_ℓ × F_ℓ ≤ S_n` for `p = 2`: generators `k_{i,1}, k_{i,2}` for
/// `i ≤ ℓ`, then the transpositions `s_{ℓ,i}` on the remaining letters.
pub fn k_f_subgroup(l: usize, n: usize) -> Result<ElabSubgroup> {
    if !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("K_ℓ × F_ℓ needs even n, got {n}")));
    }
    if 4 * l > n {
        return Err(Error::Precondition(format!("K_{l} needs {} letters but n = {n}", 4 * l)));
    }
    let mut gens = Vec::new();
    for i in 1..=l {
        gens.push(Perm::from_cycles(n, &[vec![4 * i - 3, 4 * i - 2], vec![4 * i - 1, 4 * i]])?);
        gens.push(Perm::from_cycles(n, &[vec![4 * i - 3, 4 * i - 1], vec![4 * i - 2, 4 * i]])?);
    }
    for i in 1..=(n - 4 * l) / 2 {
        gens.push(Perm::from_cycles(n, &[vec![4 * l + 2 * i - 1, 4 * l + 2 * i]])?);
    }
    ElabSubgroup::new(n, 2, gens, ClassTag::KF(l))
}

/// Generators of the left regular action of `(C_p)^m` on letters
/// `offset + Σ v_j p^j` (0-based), inside `S_n`.
fn regular_generators(m: usize, p: usize, offset: usize, n: usize) -> Result<Vec<Perm>> {
    let size = p.pow(m as u32);
    if offset + size > n {
        return Err(Error::Precondition(format!("R_{m},{p} needs {size} letters")));
    }
    (0..m)
        .map(|j| {
            let step = p.pow(j as u32);
            let mut images: Vec<u32> = (0..n as u32).collect();
            for v in 0..size {
                let digit = (v / step) % p;
                let w = v - digit * step + ((digit + 1) % p) * step;
                images[offset + v] = (offset + w) as u32;
            }
            Perm::from_images(images)
        })
        .collect()
}

/// `R_{m,p}` on the first `p^m` letters of `S_n`.
pub fn regular_r(m: usize, p: usize, n: usize) -> Result<ElabSubgroup> {
    ensure_prime(p as u64)?;
    ElabSubgroup::new(n, p, regular_generators(m, p, 0, n)?, ClassTag::R(m))
}

/// Tuples `(t_0, t_1, …)` with `n = Σ p^i t_i` and `0 ≤ t_0 < p`, ordered
/// by decreasing `t_1`, then decreasing `t_2`, and so on.
pub fn maximal_tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut top = 0;
    while p.pow(top as u32 + 1) <= n {
        top += 1;
    }
    let mut out = Vec::new();
    fn rec(rem: usize, level: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if level == 0 {
            if rem < p {
                let mut t = cur.clone();
                t.push(rem);
                t.reverse();
                out.push(t);
            }
            return;
        }
        let block = p.pow(level as u32);
        for count in 0..=rem / block {
            cur.push(count);
            rec(rem - count * block, level - 1, p, cur, out);
            cur.pop();
        }
    }
    rec(n, top, p, &mut Vec::new(), &mut out);
    for t in &mut out {
        while t.len() > 1 && *t.last().unwrap() == 0 {
            t.pop();
        }
    }
    out.sort_by(|a, b| {
        let key = |t: &Vec<usize>| (1..=top).map(|i| std::cmp::Reverse(t.get(i).copied().unwrap_or(0))).collect::<Vec<_>>();
        key(a).cmp(&key(b))
    });
    out
}

/// One representative per tuple: `t_i` copies of `R_{i,p}` on consecutive
/// letters, largest blocks first, fixed letters last.
pub fn maximal_elab_classes(n: usize, p: usize) -> Result<Vec<ElabSubgroup>> {
    ensure_prime(p as u64)?;
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    maximal_tuples(n, p)
        .into_iter()
        .map(|t| {
            let mut gens = Vec::new();
            let mut offset = 0;
            for i in (1..t.len()).rev() {
                for _ in 0..t[i] {
                    gens.extend(regular_generators(i, p, offset, n)?);
                    offset += p.pow(i as u32);
                }
            }
            ElabSubgroup::new(n, p, gens, ClassTag::Maximal(t))
        })
        .collect()
}

/// Number of λ-tabloids fixed by a group with the given orbits: ways to
/// place every orbit wholly inside one row so that row lengths match.
pub fn count_fixed_tabloids(lambda: &Partition, stats: &OrbitStats) -> Result<u128> {
    let total: usize = stats.orbit_sizes.iter().sum();
    if total != lambda.n() {
        return Err(Error::SizeMismatch(total, lambda.n()));
    }
    let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
    for &s in &stats.orbit_sizes {
        *classes.entry(s).or_default() += 1;
    }
    let mut states: HashMap<Vec<usize>, u128> = HashMap::from([(lambda.parts().to_vec(), 1)]);
    for (&size, &count) in classes.iter().rev() {
        let mut next: HashMap<Vec<usize>, u128> = HashMap::new();
        for (room, ways) in states {
            distribute(&room, size, count, 0, 1, ways, &mut room.clone(), &mut next);
        }
        states = next;
    }
    Ok(states.get(&vec![0; lambda.len()]).copied().unwrap_or(0))
}

/// Splits `count` labelled orbits of `size` among rows `row..`, multiplying
/// by the binomial for each row's choice.
#[allow(clippy::too_many_arguments)]
fn distribute(
    room: &[usize],
    size: usize,
    count: usize,
    row: usize,
    factor: u128,
    ways: u128,
    cur: &mut Vec<usize>,
    out: &mut HashMap<Vec<usize>, u128>,
) {
    if row == room.len() {
        if count == 0 {
            *out.entry(cur.clone()).or_default() += factor * ways;
        }
        return;
    }
    let max_here = (room[row] / size).min(count);
    for k in 0..=max_here {
        cur[row] = room[row] - k * size;
        let f = factor * binomial(count as u64, k as u64);
        distribute(room, size, count - k, row + 1, f, ways, cur, out);
    }
    cur[row] = room[row];
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specht::TabloidBasis;

    fn brute_force_fixed(lambda: &Partition, g: &ElabSubgroup) -> u128 {
        let basis = TabloidBasis::new(lambda).unwrap();
        (0..basis.len()).filter(|&t| g.gens().iter().all(|s| basis.act(s, t) == t)).count() as u128
    }

    #[test]
    fn standard_examples() {
        let e1 = standard_e(1, 3, 3).unwrap();
        assert_eq!(e1.gens()[0].cycles(), vec![vec![1, 2, 3]]);
        let e3 = standard_e(3, 2, 6).unwrap();
        assert_eq!(e3.rank(), 3);
        assert_eq!(standard_e(0, 5, 4).unwrap().rank(), 0);
        assert!(standard_e(3, 2, 5).is_err());
        let kf0 = k_f_subgroup(0, 6).unwrap();
        assert_eq!(kf0.gens(), e3.gens());
        let kf1 = k_f_subgroup(1, 6).unwrap();
        assert_eq!((kf1.rank(), kf1.orbit_stats().orbit_sizes.clone()), (3, vec![4, 2]));
        let k1 = k_f_subgroup(1, 4).unwrap();
        assert_eq!(k1.orbit_stats(), OrbitStats { a0: 0, a1: 0, orbit_sizes: vec![4] });
        assert!(k_f_subgroup(1, 5).is_err());
    }

    #[test]
    fn regular_action_matches_k1() {
        assert_eq!(regular_r(2, 2, 4).unwrap().gens(), k_f_subgroup(1, 4).unwrap().gens());
    }

    #[test]
    fn maximal_examples() {
        let classes = maximal_elab_classes(6, 2).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].gens(), standard_e(3, 2, 6).unwrap().gens());
        assert_eq!(classes[1].gens(), k_f_subgroup(1, 6).unwrap().gens());
        let c = maximal_elab_classes(7, 3).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].rank(), c[0].tag().clone()), (2, ClassTag::Maximal(vec![1, 2])));
        for p in [2, 3, 5] {
            let c = maximal_elab_classes(p, p).unwrap();
            assert_eq!(c.len(), 1);
            assert_eq!(c[0].rank(), 1);
        }
    }

    #[test]
    fn maximal_rank_bound() {
        for p in [2, 3, 5] {
            for n in 1..=40 {
                for t in maximal_tuples(n, p) {
                    let rank: usize = t.iter().enumerate().map(|(i, x)| i * x).sum();
                    let letters: usize = t.iter().enumerate().map(|(i, x)| p.pow(i as u32) * x).sum();
                    assert_eq!(letters, n);
                    assert!(rank <= n / p);
                }
            }
        }
    }

    #[test]
    fn half_rank_classes_are_k_f() {
        for n in (2..=16).step_by(2) {
            let classes = maximal_elab_classes(n, 2).unwrap();
            let top: Vec<&ElabSubgroup> = classes.iter().filter(|c| c.rank() == n / 2).collect();
            assert_eq!(top.len(), n / 4 + 1);
            for (l, c) in top.iter().enumerate() {
                // t_2 = ℓ and t_1 = (n - 4ℓ)/2 in the decreasing-t_1 order
                let ClassTag::Maximal(t) = c.tag() else { panic!() };
                assert_eq!(t.get(2).copied().unwrap_or(0), l);
                assert_eq!(t.get(1).copied().unwrap_or(0), (n - 4 * l) / 2);
                assert_eq!(c.orbit_stats(), k_f_subgroup(l, n).unwrap().orbit_stats());
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let s = standard_e(2, 2, 5).unwrap().orbit_stats();
        assert_eq!((s.a0, s.a1), (1, 2));
        for p in [3usize, 5] {
            for n in 2 * p..3 * p {
                let r = n % p;
                let e = standard_e((n - p - r) / p, p, n).unwrap();
                assert_eq!(e.orbit_stats().a0, p + r);
            }
        }
    }

    #[test]
    fn fixed_tabloid_examples() {
        let stats = OrbitStats { a0: 0, a1: 2, orbit_sizes: vec![2, 2] };
        assert_eq!(count_fixed_tabloids(&"2,2".parse().unwrap(), &stats).unwrap(), 2);
        assert_eq!(count_fixed_tabloids(&"3,1".parse().unwrap(), &stats).unwrap(), 0);
        // m_μ = C(p + r, s) for (n - s, s), s < p
        for p in [3usize, 5] {
            for n in 2 * p..4 * p {
                let r = n % p;
                let stats = standard_e((n - p - r) / p, p, n).unwrap().orbit_stats();
                for s in 1..p {
                    let lambda = Partition::two_part(n, s).unwrap();
                    assert_eq!(count_fixed_tabloids(&lambda, &stats).unwrap(), binomial((p + r) as u64, s as u64));
                }
            }
        }
        let stats = standard_e(5, 5, 33).unwrap().orbit_stats();
        assert_eq!(count_fixed_tabloids(&Partition::two_part(33, 7).unwrap(), &stats).unwrap(), 148);
    }

    #[test]
    fn fixed_tabloids_match_brute_force() {
        for n in 2..=10 {
            let mut groups = Vec::new();
            for p in [2usize, 3, 5] {
                for a in 0..=n / p {
                    groups.push(standard_e(a, p, n).unwrap());
                }
                groups.extend(maximal_elab_classes(n, p).unwrap());
            }
            if n % 2 == 0 {
                for l in 0..=n / 4 {
                    groups.push(k_f_subgroup(l, n).unwrap());
                }
            }
            for g in &groups {
                for s in 0..=n / 2 {
                    let lambda = Partition::two_part(n, s).unwrap();
                    assert_eq!(count_fixed_tabloids(&lambda, &g.orbit_stats()).unwrap(), brute_force_fixed(&lambda, g));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_generators() {
        let t = Perm::from_cycles(4, &[vec![1, 2]]).unwrap();
        let u = Perm::from_cycles(4, &[vec![2, 3]]).unwrap();
        assert!(ElabSubgroup::new(4, 2, vec![t.clone(), u], ClassTag::E(2)).is_err());
        assert!(ElabSubgroup::new(4, 2, vec![t.clone(), t.clone()], ClassTag::E(2)).is_err());
        let c3 = Perm::from_cycles(4, &[vec![1, 2, 3]]).unwrap();
        assert!(ElabSubgroup::new(4, 2, vec![c3], ClassTag::E(1)).is_err());
        let ab = Perm::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let a = t.clone();
        let b = Perm::from_cycles(4, &[vec![3, 4]]).unwrap();
        assert!(ElabSubgroup::new(4, 2, vec![a, b, ab], ClassTag::E(3)).is_err());
    }
}
