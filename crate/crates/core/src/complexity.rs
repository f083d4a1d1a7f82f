//! Complexity of simple modules `D^{(n-s,s)}`: the largest rank-variety
//! dimension over the maximal elementary abelian classes, compared with the
//! predictions of the two-part tables.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jordan::generic_jordan_type;
use crate::linalg::GenericConfig;
use crate::modp::is_prime;
use crate::partition::p_core_two_part;
use crate::specht::{simple_module, ModuleRep};
use crate::subgroups::{maximal_elab_classes, ElabSubgroup};
use crate::tables::{is_two_part_regular, predicted_complexity, PredictedComplexity};
use crate::variety::{
    projective_points, variety_dimension, variety_dimension_slice, DimMethod, SliceConfig, VarietyConfig, VarietyReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch,
    NotCovered,
    ShortcutUsed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarietyMethod {
    /// Count points when cheap, otherwise slice.
    Auto,
    Count,
    Slice,
}

/// Counting is used by `Auto` while `points · dim³` stays below this.
pub const AUTO_COUNT_BUDGET: f64 = (1u64 << 31) as f64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexityConfig {
    pub exts: Vec<u32>,
    pub seed: u64,
    /// Compute every class even when `p ∤ dim`.
    pub no_shortcut: bool,
    pub method: VarietyMethod,
}

impl ComplexityConfig {
    pub fn for_prime(p: u32, seed: u64) -> Self {
        ComplexityConfig { exts: crate::variety::default_extensions(p), seed, no_shortcut: false, method: VarietyMethod::Auto }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexityReport {
    pub module: String,
    pub p: usize,
    pub n: usize,
    pub second: usize,
    pub module_dim: usize,
    pub weight: usize,
    pub classes: Vec<VarietyReport>,
    pub computed: usize,
    pub predicted: PredictedComplexity,
    pub verdict: Verdict,
    pub shortcut_used: bool,
    /// Every counted class gave agreeing estimates.
    pub consistent: bool,
}

/// `n ≤ 12` for `p ∈ {2, 3}`, `n ≤ 10` otherwise.
pub fn guard_n(p: usize) -> usize {
    if p <= 3 {
        12
    } else {
        10
    }
}

/// Dimension of `V_E^#(M↓E)` for one class. Modules of dimension prime to
/// `p`, and modules that are not generically free, fill the whole space;
/// with `no_shortcut` the first case is also settled through the generic
/// Jordan type.
pub fn class_dimension(m: &ModuleRep, e: &ElabSubgroup, cfg: &ComplexityConfig) -> Result<VarietyReport> {
    let p = m.p();
    let vcfg = VarietyConfig { exts: cfg.exts.clone(), seed: cfg.seed };
    let scfg = SliceConfig { samples: 0, k: None, seed: cfg.seed };
    if !m.dim().is_multiple_of(p as usize) && !cfg.no_shortcut {
        return variety_dimension(m, e, &vcfg);
    }
    let generic = generic_jordan_type(m, e, &GenericConfig { samples: 0, k: None, seed: cfg.seed })?;
    if !generic.jordan.is_generically_free() {
        let mut report = VarietyReport::shell(m, e, DimMethod::NotGenericallyFree, cfg.seed);
        report.fields = generic.certificate.iter().map(|c| c.field.clone()).collect();
        report.generic = generic.certificate;
        return Ok(report);
    }
    let use_count = match cfg.method {
        VarietyMethod::Count => true,
        VarietyMethod::Slice => false,
        VarietyMethod::Auto => {
            let k = cfg.exts.iter().copied().max().unwrap_or(1);
            let q = (p as u64).pow(k) as f64;
            let work = projective_points(q as u64, e.rank()) as f64 * (m.dim() as f64).powi(3);
            e.rank() <= crate::variety::COUNT_MAX_RANK && work <= AUTO_COUNT_BUDGET
        }
    };
    if use_count {
        variety_dimension(m, e, &vcfg)
    } else {
        variety_dimension_slice(m, e, &scfg)
    }
}

/// Complexity of `D^{(n-second, second)}` over `F_p`.
pub fn complexity(n: usize, second: usize, p: usize, cfg: &ComplexityConfig) -> Result<ComplexityReport> {
    complexity_with(n, second, p, cfg, |_, m, e| class_dimension(m, e, cfg))
}

/// As [`complexity`], with the per-class computation supplied by the
/// caller. It receives the class index, the module and the class.
pub fn complexity_with<F>(n: usize, second: usize, p: usize, cfg: &ComplexityConfig, mut class_dim: F) -> Result<ComplexityReport>
where
    F: FnMut(usize, &ModuleRep, &ElabSubgroup) -> Result<VarietyReport>,
{
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if n > guard_n(p) {
        return Err(Error::ResourceGuard(format!("complexity limited to n ≤ {} for p = {p}", guard_n(p))));
    }
    if n == 0 || 2 * second > n {
        return Err(Error::Precondition(format!("(n - {second}, {second}) is not a partition for n = {n}")));
    }
    if !is_two_part_regular(n, second, p) {
        return Err(Error::NotRegular(format!("({},{})", n - second, second), p as u64));
    }
    let lambda = crate::partition::Partition::two_part(n, second)?;
    let weight = p_core_two_part(n, second, p)?.weight;
    let predicted = predicted_complexity(n, second, p)?;
    let classes = maximal_elab_classes(n, p)?;
    let m = simple_module(&lambda, &[], p as u32)?;
    let module = format!("D:{lambda}");
    let max_rank = classes.iter().map(ElabSubgroup::rank).max().unwrap_or(0);

    if m.dim() % p != 0 && !cfg.no_shortcut {
        return Ok(ComplexityReport {
            module,
            p,
            n,
            second,
            module_dim: m.dim(),
            weight,
            classes: Vec::new(),
            computed: max_rank,
            predicted,
            verdict: Verdict::ShortcutUsed,
            shortcut_used: true,
            consistent: true,
        });
    }
    let reports = classes.iter().enumerate().map(|(i, e)| class_dim(i, &m, e)).collect::<Result<Vec<_>>>()?;
    let computed = reports.iter().map(|r| r.dim_estimate).max().unwrap_or(0);
    let consistent = reports.iter().all(|r| r.consistent);
    let verdict = match predicted.value {
        None => Verdict::NotCovered,
        Some(v) if v == computed => Verdict::Match,
        Some(_) => Verdict::Mismatch,
    };
    Ok(ComplexityReport {
        module,
        p,
        n,
        second,
        module_dim: m.dim(),
        weight,
        classes: reports,
        computed,
        predicted,
        verdict,
        shortcut_used: false,
        consistent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    TheoremA,
    TheoremC,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem-a" | "theorem_a" | "a" => Ok(Suite::TheoremA),
            "theorem-c" | "theorem_c" | "c" => Ok(Suite::TheoremC),
            _ => Err(Error::Parse(format!("unknown suite {s:?}; expected theorem-a or theorem-c"))),
        }
    }
}

/// Second parts checked by default: `{1, 2}` for the first suite, `1..2p`
/// (and `2p` itself when `p > 3`) for the second.
pub fn default_seconds(suite: Suite, p: usize) -> Vec<usize> {
    match suite {
        Suite::TheoremA => vec![1, 2],
        Suite::TheoremC if p > 3 => (1..=2 * p).collect(),
        Suite::TheoremC => (1..2 * p).collect(),
    }
}

/// Labels `(n, second)` a suite covers: valid, regular and within range.
pub fn suite_labels(
    suite: Suite,
    p: usize,
    ns: std::ops::RangeInclusive<usize>,
    seconds: Option<&[usize]>,
) -> Result<Vec<(usize, usize)>> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if suite == Suite::TheoremC && p == 2 {
        return Err(Error::Precondition("the second suite needs an odd prime".into()));
    }
    if *ns.end() > guard_n(p) {
        return Err(Error::ResourceGuard(format!("complexity limited to n ≤ {} for p = {p}", guard_n(p))));
    }
    let seconds = seconds.map(<[usize]>::to_vec).unwrap_or_else(|| default_seconds(suite, p));
    let mut out = Vec::new();
    for n in ns {
        for &s in &seconds {
            if s > 0 && 2 * s <= n && is_two_part_regular(n, s, p) {
                out.push((n, s));
            }
        }
    }
    Ok(out)
}

/// Full computations for every regular label in range; the shortcut is
/// never taken so each verdict compares two independent numbers.
pub fn verify_suite(
    suite: Suite,
    p: usize,
    ns: std::ops::RangeInclusive<usize>,
    seconds: Option<&[usize]>,
    cfg: &ComplexityConfig,
) -> Result<Vec<ComplexityReport>> {
    let cfg = ComplexityConfig { no_shortcut: true, ..cfg.clone() };
    suite_labels(suite, p, ns, seconds)?.into_iter().map(|(n, s)| complexity(n, s, p, &cfg)).collect()
}
