//! Rank varieties `V_E^#(M)`: membership, dimension by point counting or by
//! random linear slices, and closed-form fixtures for `D^{(n-1,1)}`, `p = 2`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jordan::shifted_generators;
use crate::linalg::{max_degree_below, Elem, FieldCtx, FieldInfo, FpMatrix, Matrix, RankCertificate};
use crate::specht::ModuleRep;
use crate::subgroups::ElabSubgroup;

/// Counting is refused above this rank.
pub const COUNT_MAX_RANK: usize = 6;
/// Counting is refused when it would visit more projective points.
pub const COUNT_MAX_POINTS: u64 = 1 << 22;

pub fn default_extensions(p: u32) -> Vec<u32> {
    match p {
        2 => vec![2, 4],
        3 => vec![2, 3],
        _ => vec![1, 2],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarietyConfig {
    pub exts: Vec<u32>,
    pub seed: u64,
}

impl VarietyConfig {
    pub fn for_prime(p: u32, seed: u64) -> Self {
        VarietyConfig { exts: default_extensions(p), seed }
    }
}

/// The operators `g_i - 1` of `M↓E`, ready for evaluation at points.
pub struct VarietyProbe {
    p: u32,
    dim: usize,
    ops: Vec<FpMatrix>,
}

impl VarietyProbe {
    pub fn new(m: &ModuleRep, e: &ElabSubgroup) -> Result<Self> {
        Ok(VarietyProbe { p: m.p(), dim: m.dim(), ops: shifted_generators(m, e)? })
    }

    pub fn rank(&self) -> usize {
        self.ops.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Σ α_i (g_i - 1)` over the field of `ctx`.
    pub fn operator(&self, ctx: &Arc<FieldCtx>, alpha: &[Elem]) -> Result<Matrix> {
        if alpha.len() != self.ops.len() {
            return Err(Error::Precondition(format!("point has {} coordinates, rank is {}", alpha.len(), self.ops.len())));
        }
        if ctx.p() != self.p {
            return Err(Error::Precondition("field characteristic mismatch".into()));
        }
        let d = self.dim;
        let mut out = Matrix::zeros(ctx, d, d);
        for (x, &a) in self.ops.iter().zip(alpha) {
            if ctx.is_zero(a) {
                continue;
            }
            for i in 0..d {
                for (j, &v) in x.row(i).iter().enumerate() {
                    if v != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, ctx.add(cur, ctx.mul(a, ctx.from_int(v as i64))));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `α = 0`, or `M` is not free over `⟨u_α⟩`.
    pub fn contains(&self, ctx: &Arc<FieldCtx>, alpha: &[Elem]) -> Result<bool> {
        if alpha.iter().all(|&a| ctx.is_zero(a)) {
            return Ok(true);
        }
        let p = self.p as usize;
        if !self.dim.is_multiple_of(p) {
            return Ok(true);
        }
        Ok(self.operator(ctx, alpha)?.rank() < self.dim / p * (p - 1))
    }
}

pub fn in_variety(m: &ModuleRep, e: &ElabSubgroup, ctx: &Arc<FieldCtx>, alpha: &[Elem]) -> Result<bool> {
    VarietyProbe::new(m, e)?.contains(ctx, alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimMethod {
    /// `p ∤ dim M`: the variety is everything.
    DimShortcut,
    /// Exhaustive point counts over the requested extensions.
    Count,
    /// Largest random linear slice meeting the variety only in zero.
    Slice,
    /// The generic Jordan type has a non-free block, so the variety is
    /// everything.
    NotGenericallyFree,
    /// Taken from a result cache; only consistent estimates are stored.
    Cached,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceCertificate {
    pub field: FieldInfo,
    pub samples_per_level: usize,
    /// Largest slice dimension with a free restriction found.
    pub free_slice_dim: usize,
    /// Bound on the chance that a free slice of the next dimension exists
    /// but was missed.
    pub failure_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VarietyReport {
    pub module: String,
    pub module_dim: usize,
    pub class_tag: String,
    pub rank: usize,
    pub method: DimMethod,
    /// Affine points, the origin included, per extension degree.
    pub counts: BTreeMap<u32, u64>,
    pub estimates: BTreeMap<u32, usize>,
    /// Growth rate of the counts between the two largest extensions;
    /// `consistent` asks it to equal `dim_estimate`.
    pub growth_estimate: Option<usize>,
    pub dim_estimate: usize,
    pub consistent: bool,
    pub fields: Vec<FieldInfo>,
    pub seed: u64,
    pub slice: Option<SliceCertificate>,
    pub generic: Option<RankCertificate>,
}

impl VarietyReport {
    pub(crate) fn shell(m: &ModuleRep, e: &ElabSubgroup, method: DimMethod, seed: u64) -> Self {
        VarietyReport {
            module: m.name().to_string(),
            module_dim: m.dim(),
            class_tag: e.tag().to_string(),
            rank: e.rank(),
            method,
            counts: BTreeMap::new(),
            estimates: BTreeMap::new(),
            growth_estimate: None,
            dim_estimate: e.rank(),
            consistent: true,
            fields: Vec::new(),
            seed,
            slice: None,
            generic: None,
        }
    }

    /// Report for a dimension recovered from a cache.
    pub fn cached(m: &ModuleRep, e: &ElabSubgroup, dim: usize, seed: u64) -> Self {
        VarietyReport { dim_estimate: dim, ..Self::shell(m, e, DimMethod::Cached, seed) }
    }
}

/// Projective points in `F_q^r` with leading coordinate one; the index
/// encodes the lead position and the remaining coordinates in base `q`.
pub fn projective_points(q: u64, r: usize) -> u64 {
    (0..r).map(|i| q.pow((r - 1 - i) as u32)).sum()
}

fn decode_point(ctx: &FieldCtx, elems: &[Elem], r: usize, mut index: u64) -> Vec<Elem> {
    let q = elems.len() as u64;
    let mut lead = 0;
    loop {
        let block = q.pow((r - 1 - lead) as u32);
        if index < block {
            break;
        }
        index -= block;
        lead += 1;
    }
    let mut point = vec![ctx.zero(); r];
    point[lead] = ctx.one();
    for slot in point.iter_mut().skip(lead + 1) {
        *slot = elems[(index % q) as usize];
        index /= q;
    }
    point
}

fn encode_point(ctx: &FieldCtx, position: &[u64], point: &[Elem]) -> u64 {
    let r = point.len();
    let q = ctx.order() as u64;
    let lead = point.iter().position(|&a| !ctx.is_zero(a)).expect("projective point is nonzero");
    let mut index: u64 = (0..lead).map(|i| q.pow((r - 1 - i) as u32)).sum();
    let mut scale = 1;
    for &a in &point[lead + 1..] {
        index += position[a as usize] * scale;
        scale *= q;
    }
    index
}

/// Affine points of the variety over `ctx`, the origin included. The
/// variety is stable under the Frobenius map, so only orbit
/// representatives are tested.
pub fn count_points(probe: &VarietyProbe, ctx: &Arc<FieldCtx>) -> Result<u64> {
    let r = probe.rank();
    let q = ctx.order() as u64;
    if r == 0 {
        return Ok(1);
    }
    let total = projective_points(q, r);
    if total > COUNT_MAX_POINTS {
        return Err(Error::ResourceGuard(format!("{total} projective points exceed the counting limit")));
    }
    let elems: Vec<Elem> = ctx.elements().collect();
    let mut position = vec![0u64; elems.len()];
    for (i, &a) in elems.iter().enumerate() {
        position[a as usize] = i as u64;
    }
    let projective: u64 = (0..total)
        .into_par_iter()
        .map(|index| -> Result<u64> {
            let point = decode_point(ctx, &elems, r, index);
            // orbit under coordinatewise Frobenius; the leading one is fixed
            let mut orbit = 1;
            let mut cur = point.clone();
            loop {
                cur = cur.iter().map(|&a| ctx.frobenius(a)).collect();
                if cur == point {
                    break;
                }
                if encode_point(ctx, &position, &cur) < index {
                    return Ok(0);
                }
                orbit += 1;
            }
            Ok(if probe.contains(ctx, &point)? { orbit } else { 0 })
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(1 + (q - 1) * projective)
}

fn log_estimate(count: u64, q: u64) -> usize {
    ((count as f64).ln() / (q as f64).ln()).round() as usize
}

/// Dimension of `V_E^#(M)` by exhaustive counting over each requested
/// extension. The estimate is `log_q N` for the largest extension; the
/// growth of `N` from the next largest one must round to the same value.
pub fn variety_dimension(m: &ModuleRep, e: &ElabSubgroup, cfg: &VarietyConfig) -> Result<VarietyReport> {
    if e.rank() > COUNT_MAX_RANK {
        return Err(Error::ResourceGuard(format!("point counting limited to rank {COUNT_MAX_RANK}")));
    }
    if cfg.exts.is_empty() {
        return Err(Error::Precondition("no extension degrees given".into()));
    }
    let p = m.p();
    if !m.dim().is_multiple_of(p as usize) {
        return Ok(VarietyReport::shell(m, e, DimMethod::DimShortcut, cfg.seed));
    }
    let probe = VarietyProbe::new(m, e)?;
    let mut exts = cfg.exts.clone();
    exts.sort_unstable();
    exts.dedup();
    let mut report = VarietyReport::shell(m, e, DimMethod::Count, cfg.seed);
    for &k in &exts {
        let ctx = FieldCtx::get(p, k, cfg.seed)?;
        let count = count_points(&probe, &ctx)?;
        report.counts.insert(k, count);
        report.estimates.insert(k, log_estimate(count, ctx.order() as u64));
        report.fields.push(ctx.info());
    }
    let top = *exts.last().expect("nonempty");
    report.dim_estimate = report.estimates[&top].min(e.rank());
    report.growth_estimate = exts.len().checked_sub(2).map(|i| {
        let (k1, k2) = (exts[i], top);
        let ratio = report.counts[&k2] as f64 / report.counts[&k1] as f64;
        (ratio.ln() / ((k2 - k1) as f64 * (p as f64).ln())).round().max(0.0) as usize
    });
    report.consistent = report.estimates[&top] <= e.rank() && report.growth_estimate.is_none_or(|g| g == report.dim_estimate);
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[derive(Default)]
pub struct SliceConfig {
    /// Samples per slice dimension; zero picks enough for `2^-40`.
    pub samples: usize,
    pub k: Option<u32>,
    pub seed: u64,
}


/// Whether `M` is free over the algebra generated by `Σ_i β_{ji}(g_i - 1)`,
/// `j < m`: a truncated polynomial algebra of dimension `p^m` when the rows
/// of `β` are independent, over which `M` is free exactly when the radical
/// layer has dimension `dim M / p^m`.
fn slice_is_free(probe: &VarietyProbe, ctx: &Arc<FieldCtx>, beta: &[Vec<Elem>]) -> Result<bool> {
    let m = beta.len();
    let pm = (probe.p as usize).pow(m as u32);
    if !probe.dim.is_multiple_of(pm) {
        return Ok(false);
    }
    let target = probe.dim - probe.dim / pm;
    let d = probe.dim;
    let ops: Vec<Matrix> = beta.iter().map(|b| probe.operator(ctx, b)).collect::<Result<_>>()?;
    let joined = Matrix::from_fn(ctx, d, d * m, |i, j| ops[j / d].get(i, j % d));
    Ok(joined.rank() == target)
}

/// Dimension of `V_E^#(M)` as `rank E` minus the largest `m` for which a
/// random `m`-dimensional slice meets the variety only at zero. A free
/// slice proves the upper bound; missing one at the next dimension has
/// probability at most `failure_bound`.
pub fn variety_dimension_slice(m: &ModuleRep, e: &ElabSubgroup, cfg: &SliceConfig) -> Result<VarietyReport> {
    let p = m.p();
    let r = e.rank();
    if !m.dim().is_multiple_of(p as usize) {
        return Ok(VarietyReport::shell(m, e, DimMethod::DimShortcut, cfg.seed));
    }
    let probe = VarietyProbe::new(m, e)?;
    let k = cfg.k.unwrap_or_else(|| max_degree_below(p, 1 << 20).max(1));
    let ctx = FieldCtx::get(p, k, cfg.seed)?;
    let q = ctx.order() as f64;
    // a missed free slice means a nonzero minor of size below dim M vanished
    let degree = m.dim().max(1) as f64;
    let samples = if cfg.samples > 0 {
        cfg.samples
    } else if degree >= q {
        64
    } else {
        (-40.0 / (degree / q).log2()).ceil().max(1.0) as usize
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5EED_511C);
    let mut free_dim = 0;
    'levels: for level in (1..=r).rev() {
        for _ in 0..samples {
            let beta: Vec<Vec<Elem>> = (0..level).map(|_| (0..r).map(|_| ctx.random(&mut rng)).collect()).collect();
            if slice_is_free(&probe, &ctx, &beta)? {
                free_dim = level;
                break 'levels;
            }
        }
    }
    let mut report = VarietyReport::shell(m, e, DimMethod::Slice, cfg.seed);
    report.dim_estimate = r - free_dim;
    report.fields.push(ctx.info());
    report.slice = Some(SliceCertificate {
        field: ctx.info(),
        samples_per_level: samples,
        free_slice_dim: free_dim,
        failure_bound: if free_dim == r { 0.0 } else { (degree / q).min(1.0).powi(samples as i32) },
    });
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum D1Case {
    /// `ℓ = 0`: a hypersurface.
    Hypersurface,
    /// `ℓ = (n-2)/4`: a union of coordinate planes.
    CoordinatePlanes,
    /// Otherwise: the planes together with a hypersurface in the tail.
    Mixed,
}

/// Closed-form rank variety of `D^{(n-1,1)}` over `K_ℓ × F_ℓ` for `p = 2`
/// and `n ≡ 2 (mod 4)`, in the coordinates of the standard generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct D1Fixture {
    pub n: usize,
    pub l: usize,
    pub case: D1Case,
}

impl D1Fixture {
    pub fn new(n: usize, l: usize) -> Result<Self> {
        if n < 6 || n % 4 != 2 {
            return Err(Error::Precondition(format!("the fixture needs n ≡ 2 mod 4 and n ≥ 6, got {n}")));
        }
        if 4 * l > n - 2 {
            return Err(Error::Precondition(format!("ℓ = {l} exceeds (n-2)/4")));
        }
        let case = if l == 0 {
            D1Case::Hypersurface
        } else if 4 * l == n - 2 {
            D1Case::CoordinatePlanes
        } else {
            D1Case::Mixed
        };
        Ok(D1Fixture { n, l, case })
    }

    pub fn expected_dim(&self) -> usize {
        match self.case {
            D1Case::CoordinatePlanes => self.n / 2 - 2,
            _ => self.n / 2 - 1,
        }
    }

    /// `Σ_i ∏_{j ≠ i} γ_j` over `coords`.
    fn cofactor_sum(ctx: &FieldCtx, coords: &[Elem]) -> Elem {
        let mut acc = ctx.zero();
        for i in 0..coords.len() {
            let prod = coords.iter().enumerate().filter(|&(j, _)| j != i).fold(ctx.one(), |a, (_, &g)| ctx.mul(a, g));
            acc = ctx.add(acc, prod);
        }
        acc
    }

    /// Some odd `s ≤ n/2 - 2` with `γ_s = γ_{s+1} = 0` (1-based).
    fn on_planes(&self, ctx: &FieldCtx, gamma: &[Elem]) -> bool {
        (1..=self.n / 2 - 2).step_by(2).any(|s| ctx.is_zero(gamma[s - 1]) && ctx.is_zero(gamma[s]))
    }

    pub fn contains(&self, ctx: &FieldCtx, gamma: &[Elem]) -> Result<bool> {
        if ctx.p() != 2 || gamma.len() != self.n / 2 {
            return Err(Error::Precondition(format!("expected {} coordinates over a field of characteristic 2", self.n / 2)));
        }
        Ok(match self.case {
            D1Case::Hypersurface => ctx.is_zero(Self::cofactor_sum(ctx, gamma)),
            D1Case::CoordinatePlanes => self.on_planes(ctx, gamma),
            D1Case::Mixed => self.on_planes(ctx, gamma) || ctx.is_zero(Self::cofactor_sum(ctx, &gamma[2 * self.l..])),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;
    use crate::specht::{induced_module, simple_module, young_permutation_module};
    use crate::subgroups::{k_f_subgroup, standard_e};

    fn d1(n: usize, e: &ElabSubgroup) -> ModuleRep {
        simple_module(&Partition::two_part(n, 1).unwrap(), e.gens(), 2).unwrap()
    }

    #[test]
    fn membership_basics() {
        let e = k_f_subgroup(1, 4).unwrap();
        let m = d1(4, &e);
        let f2 = FieldCtx::get(2, 1, 0).unwrap();
        assert!(in_variety(&m, &e, &f2, &[f2.zero(), f2.zero()]).unwrap());
        assert!(in_variety(&m, &e, &f2, &[f2.one(), f2.zero()]).unwrap());
        // regular module of E_2 for p = 3
        let e = standard_e(2, 3, 6).unwrap();
        let reg = induced_module(e.gens(), &[], &[], 3).unwrap();
        let f9 = FieldCtx::get(3, 2, 0).unwrap();
        for a in f9.elements() {
            for b in f9.elements() {
                let zero = f9.is_zero(a) && f9.is_zero(b);
                assert_eq!(in_variety(&reg, &e, &f9, &[a, b]).unwrap(), zero);
            }
        }
    }

    #[test]
    fn trivial_and_free() {
        for p in [2u32, 3] {
            let e = standard_e(2, p as usize, 2 * p as usize).unwrap();
            let triv = young_permutation_module(&Partition::two_part(2 * p as usize, 0).unwrap(), e.gens(), p).unwrap();
            let reg = induced_module(e.gens(), &[], &[], p).unwrap();
            let cfg = VarietyConfig::for_prime(p, 1);
            assert_eq!(variety_dimension(&triv, &e, &cfg).unwrap().dim_estimate, 2);
            let r = variety_dimension(&reg, &e, &cfg).unwrap();
            assert_eq!((r.dim_estimate, r.consistent, r.method), (0, true, DimMethod::Count));
            assert!(r.counts.values().all(|&c| c == 1));
            let s = variety_dimension_slice(&reg, &e, &SliceConfig::default()).unwrap();
            assert_eq!(s.dim_estimate, 0);
        }
    }

    #[test]
    fn frobenius_reduction_matches_plain_count() {
        let e = standard_e(3, 2, 6).unwrap();
        let m = d1(6, &e);
        let probe = VarietyProbe::new(&m, &e).unwrap();
        let ctx = FieldCtx::get(2, 3, 0).unwrap();
        let elems: Vec<Elem> = ctx.elements().collect();
        let mut plain = 0;
        for &a in &elems {
            for &b in &elems {
                for &c in &elems {
                    plain += probe.contains(&ctx, &[a, b, c]).unwrap() as u64;
                }
            }
        }
        assert_eq!(count_points(&probe, &ctx).unwrap(), plain);
    }

    #[test]
    fn fixture_small() {
        let f4 = FieldCtx::get(2, 2, 0).unwrap();
        let elems: Vec<Elem> = f4.elements().collect();
        for l in 0..=1 {
            let e = k_f_subgroup(l, 6).unwrap();
            let m = d1(6, &e);
            let fx = D1Fixture::new(6, l).unwrap();
            for &a in &elems {
                for &b in &elems {
                    for &c in &elems {
                        let pt = [a, b, c];
                        assert_eq!(in_variety(&m, &e, &f4, &pt).unwrap(), fx.contains(&f4, &pt).unwrap(), "ℓ={l}");
                    }
                }
            }
            let report = variety_dimension(&m, &e, &VarietyConfig::for_prime(2, 0)).unwrap();
            assert_eq!((report.dim_estimate, report.consistent), (fx.expected_dim(), true));
            let slice = variety_dimension_slice(&m, &e, &SliceConfig::default()).unwrap();
            assert_eq!(slice.dim_estimate, fx.expected_dim());
        }
        assert!(D1Fixture::new(8, 0).is_err());
        assert!(D1Fixture::new(10, 3).is_err());
    }
}
