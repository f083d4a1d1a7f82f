//! Explicit modules for symmetric groups over `F_p`: Young permutation
//! modules, Specht modules in the standard polytabloid basis, simple heads
//! via the Gram matrix, the sum-zero submodule, and the operations used to
//! derive new modules from them.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{ensure_prime, Error, Result};
use crate::linalg::FpMatrix;
use crate::partition::Partition;
use crate::perm::Perm;

/// λ-tabloids of `{1, …, n}`, each stored as the row index of every letter.
#[derive(Debug)]
pub struct TabloidBasis {
    lambda: Partition,
    rows_of: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl TabloidBasis {
    pub fn new(lambda: &Partition) -> Result<Self> {
        if lambda.len() > u8::MAX as usize {
            return Err(Error::ResourceGuard("too many rows".into()));
        }
        let n = lambda.n();
        let mut rows_of = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut room: Vec<usize> = lambda.parts().to_vec();
        fn rec(n: usize, room: &mut [usize], cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for r in 0..room.len() {
                if room[r] > 0 {
                    room[r] -= 1;
                    cur.push(r as u8);
                    rec(n, room, cur, out);
                    cur.pop();
                    room[r] += 1;
                }
            }
        }
        rec(n, &mut room, &mut cur, &mut rows_of);
        let index = rows_of.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Ok(TabloidBasis { lambda: lambda.clone(), rows_of, index })
    }

    pub fn len(&self) -> usize {
        self.rows_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows_of.is_empty()
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn rows_of(&self, t: usize) -> &[u8] {
        &self.rows_of[t]
    }

    pub fn index_of(&self, rows_of: &[u8]) -> Option<usize> {
        self.index.get(rows_of).copied()
    }

    /// Index of `σ · {t}`.
    pub fn act(&self, sigma: &Perm, t: usize) -> usize {
        let src = &self.rows_of[t];
        let mut dst = vec![0u8; src.len()];
        for (i, &r) in src.iter().enumerate() {
            dst[sigma.apply(i)] = r;
        }
        self.index[&dst]
    }

    pub fn label(&self, t: usize) -> String {
        rows_label(&self.lambda, |r| {
            self.rows_of[t].iter().enumerate().filter(|(_, &x)| x as usize == r).map(|(i, _)| i + 1).collect()
        })
    }

    fn permutation_matrix(&self, sigma: &Perm, p: u32) -> FpMatrix {
        let d = self.len();
        let mut m = FpMatrix::zeros(p, d, d);
        for t in 0..d {
            m.set(self.act(sigma, t), t, 1);
        }
        m
    }
}

fn rows_label(lambda: &Partition, row: impl Fn(usize) -> Vec<usize>) -> String {
    let rows: Vec<String> = (0..lambda.len())
        .map(|r| row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    rows.join("|")
}

/// Standard λ-tableaux as rows of 0-based letters, in the order produced by
/// placing letters one at a time into the lowest admissible row first.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Vec<Vec<usize>>> {
    fn rec(lambda: &[usize], n: usize, next: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if next == n {
            out.push(cur.clone());
            return;
        }
        for r in 0..lambda.len() {
            let len = cur[r].len();
            if len < lambda[r] && (r == 0 || cur[r - 1].len() > len) {
                cur[r].push(next);
                rec(lambda, n, next + 1, cur, out);
                cur[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![Vec::new(); lambda.len()];
    rec(lambda.parts(), lambda.n(), 0, &mut cur, &mut out);
    out
}

/// All permutations of `0..len` with their signs.
fn signed_permutations(len: usize) -> Vec<(Vec<usize>, bool)> {
    if len == 0 {
        return vec![(Vec::new(), true)];
    }
    let mut out = Vec::new();
    for (perm, even) in signed_permutations(len - 1) {
        // insert the new largest element at every position
        for pos in 0..=perm.len() {
            let mut q = perm.clone();
            q.insert(pos, len - 1);
            let moved = perm.len() - pos;
            out.push((q, even == (moved % 2 == 0)));
        }
    }
    out
}

/// Coordinates of the polytabloid of `tableau` in the tabloid basis.
fn polytabloid(basis: &TabloidBasis, tableau: &[Vec<usize>], p: u32) -> Vec<(usize, u32)> {
    let n = basis.lambda.n();
    let width = basis.lambda.part(0);
    let columns: Vec<Vec<usize>> =
        (0..width).map(|j| tableau.iter().filter(|row| row.len() > j).map(|row| row[j]).collect()).collect();
    let col_perms: Vec<Vec<(Vec<usize>, bool)>> = columns.iter().map(|c| signed_permutations(c.len())).collect();
    let mut acc: HashMap<usize, u32> = HashMap::new();
    let mut choice = vec![0usize; width];
    loop {
        let mut rows_of = vec![0u8; n];
        let mut even = true;
        for (j, col) in columns.iter().enumerate() {
            let (perm, e) = &col_perms[j][choice[j]];
            even ^= !e;
            // the letter in column position i moves to row perm[i]
            for (i, &x) in col.iter().enumerate() {
                rows_of[x] = perm[i] as u8;
            }
        }
        let t = basis.index[&rows_of];
        let c = if even { 1 } else { p - 1 };
        let e = acc.entry(t).or_insert(0);
        *e = (*e + c) % p;
        // advance the mixed-radix counter
        let mut j = 0;
        while j < width {
            choice[j] += 1;
            if choice[j] < col_perms[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
        if j == width {
            break;
        }
    }
    let mut out: Vec<(usize, u32)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    out.sort_unstable();
    out
}

#[derive(Debug)]
pub struct SpechtData {
    tabloids: Arc<TabloidBasis>,
    tableaux: Vec<Vec<Vec<usize>>>,
    embedding: FpMatrix,
    pivot_rows: Vec<usize>,
    pivot_inv: FpMatrix,
}

impl SpechtData {
    fn new(lambda: &Partition, p: u32) -> Result<Self> {
        let tabloids = Arc::new(TabloidBasis::new(lambda)?);
        let tableaux = standard_tableaux(lambda);
        if tableaux.len() as u128 != lambda.hook_formula_count() {
            return Err(Error::Internal(format!("standard tableau count for {lambda} disagrees with the hook formula")));
        }
        let mut embedding = FpMatrix::zeros(p, tabloids.len(), tableaux.len());
        for (j, t) in tableaux.iter().enumerate() {
            for (i, c) in polytabloid(&tabloids, t, p) {
                embedding.set(i, j, c);
            }
        }
        let pivot_rows = embedding.independent_rows();
        if pivot_rows.len() != tableaux.len() {
            return Err(Error::Internal("standard polytabloids are not independent".into()));
        }
        let pivot_inv = embedding.select_rows(&pivot_rows).inverse()?;
        Ok(SpechtData { tabloids, tableaux, embedding, pivot_rows, pivot_inv })
    }

    fn action(&self, sigma: &Perm) -> Result<FpMatrix> {
        let inv = sigma.inverse();
        let rows: Vec<usize> = self.pivot_rows.iter().map(|&t| self.tabloids.act(&inv, t)).collect();
        self.pivot_inv.mul(&self.embedding.select_rows(&rows))
    }

    fn label(&self, j: usize) -> String {
        let t = &self.tableaux[j];
        rows_label(&self.tabloids.lambda, |r| t[r].iter().map(|x| x + 1).collect())
    }

    pub fn gram(&self) -> Result<FpMatrix> {
        self.embedding.transpose().mul(&self.embedding)
    }
}

#[derive(Debug)]
pub struct SimpleData {
    specht: Arc<SpechtData>,
    gram_rows: FpMatrix,
    columns: Vec<usize>,
    head_inv: FpMatrix,
}

impl SimpleData {
    fn action(&self, sigma: &Perm) -> Result<FpMatrix> {
        let x = self.specht.action(sigma)?.select_cols(&self.columns);
        self.head_inv.mul(&self.gram_rows.mul(&x)?)
    }
}

/// How a module's action matrices are produced for a permutation.
#[derive(Debug)]
pub enum Realizer {
    Tabloid { basis: Arc<TabloidBasis>, p: u32 },
    SumZero { basis: Arc<TabloidBasis>, p: u32 },
    Specht(Arc<SpechtData>),
    Simple(Arc<SimpleData>),
    /// Invariant subspace spanned by the columns of `basis`.
    Submodule { parent: Arc<Realizer>, basis: FpMatrix, rows: Vec<usize>, inv: FpMatrix },
    /// Quotient by the row space of `reduced` (in reduced echelon form).
    Quotient { parent: Arc<Realizer>, reduced: FpMatrix, pivots: Vec<usize>, free: Vec<usize> },
    Dual(Arc<Realizer>),
    DirectSum(Arc<Realizer>, Arc<Realizer>),
    /// Matrices known only on generators of a small group.
    Explicit { gens: Vec<Perm>, mats: Vec<FpMatrix> },
}

impl Realizer {
    pub fn action(&self, sigma: &Perm) -> Result<FpMatrix> {
        match self {
            Realizer::Tabloid { basis, p } => Ok(basis.permutation_matrix(sigma, *p)),
            Realizer::SumZero { basis, p } => {
                let d = basis.len();
                let mut m = FpMatrix::zeros(*p, d - 1, d - 1);
                let image_ref = basis.act(sigma, 0);
                for t in 1..d {
                    let image = basis.act(sigma, t);
                    if image != 0 {
                        m.set(image - 1, t - 1, 1);
                    }
                    if image_ref != 0 {
                        let v = m.get(image_ref - 1, t - 1);
                        m.set(image_ref - 1, t - 1, v + *p - 1);
                    }
                }
                Ok(m)
            }
            Realizer::Specht(data) => data.action(sigma),
            Realizer::Simple(data) => data.action(sigma),
            Realizer::Submodule { parent, basis, rows, inv } => {
                let image = parent.action(sigma)?.mul(basis)?;
                inv.mul(&image.select_rows(rows))
            }
            Realizer::Quotient { parent, reduced, pivots, free } => {
                let a = parent.action(sigma)?;
                let direct = a.select(free, free);
                let correction = reduced.select_cols(free).transpose().mul(&a.select(pivots, free))?;
                direct.sub(&correction)
            }
            Realizer::Dual(parent) => Ok(parent.action(&sigma.inverse())?.transpose()),
            Realizer::DirectSum(a, b) => Ok(a.action(sigma)?.block_diag(&b.action(sigma)?)),
            Realizer::Explicit { gens, mats } => explicit_action(gens, mats, sigma),
        }
    }
}

const EXPLICIT_GROUP_LIMIT: usize = 1 << 14;

fn explicit_action(gens: &[Perm], mats: &[FpMatrix], sigma: &Perm) -> Result<FpMatrix> {
    if let Some(i) = gens.iter().position(|g| g == sigma) {
        return Ok(mats[i].clone());
    }
    let first = mats.first().ok_or_else(|| Error::InvalidPermutation(format!("{sigma} not in the trivial group")))?;
    let start = Perm::identity(sigma.degree());
    let mut seen: HashMap<Perm, FpMatrix> = HashMap::from([(start.clone(), FpMatrix::identity(first.p(), first.rows()))]);
    let mut queue = VecDeque::from([start]);
    while let Some(g) = queue.pop_front() {
        if &g == sigma {
            return Ok(seen[&g].clone());
        }
        for (h, m) in gens.iter().zip(mats) {
            let next = h.compose(&g);
            if !seen.contains_key(&next) {
                let mat = m.mul(&seen[&g])?;
                seen.insert(next.clone(), mat);
                queue.push_back(next);
            }
        }
        if seen.len() > EXPLICIT_GROUP_LIMIT {
            return Err(Error::ResourceGuard("generated group too large to factor permutations".into()));
        }
    }
    Err(Error::InvalidPermutation(format!("{sigma} is not in the group generated by the stored permutations")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    YoungPerm,
    Specht,
    Simple,
    SumZero,
    Dual,
    Induced,
    Radical,
    Submodule,
    Quotient,
    DirectSum,
}

/// A module over `F_p S_n`, with action matrices for a chosen list of
/// permutations and a realizer for computing further ones.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    name: String,
    p: u32,
    n: usize,
    dim: usize,
    labels: Vec<String>,
    provenance: Provenance,
    realizer: Arc<Realizer>,
    perms: Vec<Perm>,
    actions: Vec<FpMatrix>,
}

impl ModuleRep {
    #[allow(clippy::too_many_arguments)]
    fn build(
        name: String,
        p: u32,
        n: usize,
        dim: usize,
        labels: Vec<String>,
        provenance: Provenance,
        realizer: Arc<Realizer>,
        perms: &[Perm],
    ) -> Result<Self> {
        let mut module = ModuleRep { name, p, n, dim, labels, provenance, realizer, perms: Vec::new(), actions: Vec::new() };
        module.set_perms(perms)?;
        Ok(module)
    }

    fn set_perms(&mut self, perms: &[Perm]) -> Result<()> {
        for s in perms {
            if s.degree() != self.n {
                return Err(Error::InvalidPermutation(format!("{s} is not in S_{}", self.n)));
            }
        }
        self.actions = perms.iter().map(|s| self.realizer.action(s)).collect::<Result<_>>()?;
        self.perms = perms.to_vec();
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn actions(&self) -> &[FpMatrix] {
        &self.actions
    }

    pub fn realizer(&self) -> &Arc<Realizer> {
        &self.realizer
    }

    /// Matrix of any permutation the realizer can handle.
    pub fn action_of(&self, sigma: &Perm) -> Result<FpMatrix> {
        if sigma.degree() != self.n {
            return Err(Error::InvalidPermutation(format!("{sigma} is not in S_{}", self.n)));
        }
        if let Some(i) = self.perms.iter().position(|s| s == sigma) {
            return Ok(self.actions[i].clone());
        }
        self.realizer.action(sigma)
    }

    /// Same module with actions for `perms` instead.
    pub fn restrict(&self, perms: &[Perm]) -> Result<ModuleRep> {
        let mut out = self.clone();
        out.set_perms(perms)?;
        Ok(out)
    }

    /// `action(στ) = action(σ)·action(τ)` for the given words.
    pub fn is_multiplicative_on(&self, pairs: &[(Perm, Perm)]) -> Result<bool> {
        for (s, t) in pairs {
            let lhs = self.action_of(&s.compose(t))?;
            let rhs = self.action_of(s)?.mul(&self.action_of(t)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_perms(perms: &[Perm], n: usize) -> Result<()> {
    match perms.iter().find(|s| s.degree() != n) {
        Some(s) => Err(Error::InvalidPermutation(format!("{s} has degree {} but n = {n}", s.degree()))),
        None => Ok(()),
    }
}

pub fn young_permutation_module(lambda: &Partition, perms: &[Perm], p: u32) -> Result<ModuleRep> {
    ensure_prime(p as u64)?;
    check_perms(perms, lambda.n())?;
    let basis = Arc::new(TabloidBasis::new(lambda)?);
    let labels = (0..basis.len()).map(|t| basis.label(t)).collect();
    let dim = basis.len();
    ModuleRep::build(
        format!("M:{lambda}"),
        p,
        lambda.n(),
        dim,
        labels,
        Provenance::YoungPerm,
        Arc::new(Realizer::Tabloid { basis, p }),
        perms,
    )
}

/// Specht module and its embedding (tabloid coordinates of each standard
/// polytabloid, one per column).
pub fn specht_module(lambda: &Partition, perms: &[Perm], p: u32) -> Result<(ModuleRep, FpMatrix)> {
    ensure_prime(p as u64)?;
    check_perms(perms, lambda.n())?;
    let data = Arc::new(SpechtData::new(lambda, p)?);
    let labels = (0..data.tableaux.len()).map(|j| data.label(j)).collect();
    let embedding = data.embedding.clone();
    let module = ModuleRep::build(
        format!("S:{lambda}"),
        p,
        lambda.n(),
        data.tableaux.len(),
        labels,
        Provenance::Specht,
        Arc::new(Realizer::Specht(data)),
        perms,
    )?;
    Ok((module, embedding))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramData {
    pub gram: FpMatrix,
    pub rank: usize,
}

/// Gram matrix of the standard polytabloids and the simple head `D^λ`.
pub fn gram_and_simple(lambda: &Partition, perms: &[Perm], p: u32) -> Result<(GramData, ModuleRep)> {
    ensure_prime(p as u64)?;
    if !lambda.is_regular(p as usize) {
        return Err(Error::NotRegular(lambda.to_string(), p as u64));
    }
    check_perms(perms, lambda.n())?;
    let specht = Arc::new(SpechtData::new(lambda, p)?);
    let gram = specht.gram()?;
    let columns = gram.rref().pivots;
    let rank = columns.len();
    let gram_rows = gram.select_rows(&columns);
    let head_inv = gram.select(&columns, &columns).inverse()?;
    let labels = columns.iter().map(|&j| specht.label(j)).collect();
    let data = Arc::new(SimpleData { specht, gram_rows, columns, head_inv });
    let module = ModuleRep::build(
        format!("D:{lambda}"),
        p,
        lambda.n(),
        rank,
        labels,
        Provenance::Simple,
        Arc::new(Realizer::Simple(data)),
        perms,
    )?;
    Ok((GramData { gram, rank }, module))
}

pub fn simple_module(lambda: &Partition, perms: &[Perm], p: u32) -> Result<ModuleRep> {
    Ok(gram_and_simple(lambda, perms, p)?.1)
}

/// `Rad(S^λ)`, the kernel of the Gram form, as a submodule of `S^λ`.
pub fn radical_module(lambda: &Partition, perms: &[Perm], p: u32) -> Result<ModuleRep> {
    let (specht, _) = specht_module(lambda, perms, p)?;
    let gram = match specht.realizer.as_ref() {
        Realizer::Specht(data) => data.gram()?,
        _ => unreachable!("specht_module builds a Specht realizer"),
    };
    let kernel = gram.nullspace();
    let mut rad = submodule(&specht, &kernel)?;
    rad.name = format!("Rad:{lambda}");
    rad.provenance = Provenance::Radical;
    Ok(rad)
}

/// Kernel of the augmentation map on `M^λ`, in the basis `t - t_0`.
pub fn sum_zero_submodule(lambda: &Partition, perms: &[Perm], p: u32) -> Result<ModuleRep> {
    ensure_prime(p as u64)?;
    check_perms(perms, lambda.n())?;
    let basis = Arc::new(TabloidBasis::new(lambda)?);
    if basis.len() < 2 {
        return Err(Error::Precondition(format!("M^{lambda} has no nonzero sum-zero vectors")));
    }
    let reference = basis.label(0);
    let labels = (1..basis.len()).map(|t| format!("{}-{}", basis.label(t), reference)).collect();
    let dim = basis.len() - 1;
    ModuleRep::build(
        format!("M0:{lambda}"),
        p,
        lambda.n(),
        dim,
        labels,
        Provenance::SumZero,
        Arc::new(Realizer::SumZero { basis, p }),
        perms,
    )
}

pub fn dual(m: &ModuleRep) -> Result<ModuleRep> {
    let labels = m.labels.iter().map(|l| format!("{l}*")).collect();
    ModuleRep::build(
        format!("{}*", m.name),
        m.p,
        m.n,
        m.dim,
        labels,
        Provenance::Dual,
        Arc::new(Realizer::Dual(Arc::clone(&m.realizer))),
        &m.perms,
    )
}

pub fn direct_sum(a: &ModuleRep, b: &ModuleRep) -> Result<ModuleRep> {
    if a.p != b.p || a.n != b.n {
        return Err(Error::Precondition("direct sum of modules for different groups".into()));
    }
    let labels = a.labels.iter().map(|l| format!("1:{l}")).chain(b.labels.iter().map(|l| format!("2:{l}"))).collect();
    ModuleRep::build(
        format!("{}+{}", a.name, b.name),
        a.p,
        a.n,
        a.dim + b.dim,
        labels,
        Provenance::DirectSum,
        Arc::new(Realizer::DirectSum(Arc::clone(&a.realizer), Arc::clone(&b.realizer))),
        &a.perms,
    )
}

/// Submodule spanned by the columns of `basis`; the span must be invariant
/// under the stored permutations.
pub fn submodule(m: &ModuleRep, basis: &FpMatrix) -> Result<ModuleRep> {
    if basis.rows() != m.dim {
        return Err(Error::Precondition("basis vectors have the wrong length".into()));
    }
    let ech = basis.transpose().rref();
    let r = ech.pivots.len();
    let basis = ech.matrix.select_rows(&(0..r).collect::<Vec<_>>()).transpose();
    let rows = basis.independent_rows();
    let inv = basis.select_rows(&rows).inverse()?;
    let realizer = Arc::new(Realizer::Submodule { parent: Arc::clone(&m.realizer), basis: basis.clone(), rows, inv });
    for a in &m.actions {
        let image = a.mul(&basis)?;
        if image.hcat(&basis)?.rank() != r {
            return Err(Error::Precondition("subspace is not invariant".into()));
        }
    }
    let labels = (0..r).map(|i| format!("w{}", i + 1)).collect();
    ModuleRep::build(format!("sub({})", m.name), m.p, m.n, r, labels, Provenance::Submodule, realizer, &m.perms)
}

/// Quotient by the invariant subspace spanned by the columns of `basis`.
pub fn quotient(m: &ModuleRep, basis: &FpMatrix) -> Result<ModuleRep> {
    if basis.rows() != m.dim {
        return Err(Error::Precondition("basis vectors have the wrong length".into()));
    }
    let ech = basis.transpose().rref();
    let pivots = ech.pivots.clone();
    let reduced = ech.matrix.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
    for a in &m.actions {
        let image = a.mul(&reduced.transpose())?;
        if image.hcat(&reduced.transpose())?.rank() != pivots.len() {
            return Err(Error::Precondition("subspace is not invariant".into()));
        }
    }
    let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..m.dim).filter(|c| !pivot_set.contains(c)).collect();
    let labels = free.iter().map(|&j| format!("{}+W", m.labels[j])).collect();
    let realizer = Arc::new(Realizer::Quotient { parent: Arc::clone(&m.realizer), reduced, pivots, free: free.clone() });
    ModuleRep::build(format!("{}/W", m.name), m.p, m.n, free.len(), labels, Provenance::Quotient, realizer, &m.perms)
}

/// `L↑^E` where `E` is generated by commuting `e_gens` of order `p`,
/// the subgroup `F` by `e_gens[i]` for `i` in `f_indices`, and `l_actions`
/// gives the action of those generators on `L`.
pub fn induced_module(e_gens: &[Perm], f_indices: &[usize], l_actions: &[FpMatrix], p: u32) -> Result<ModuleRep> {
    ensure_prime(p as u64)?;
    if f_indices.len() != l_actions.len() {
        return Err(Error::Precondition("one matrix per subgroup generator is required".into()));
    }
    let n = e_gens.first().map(Perm::degree).ok_or_else(|| Error::Precondition("empty generator list".into()))?;
    let l_dim = l_actions.first().map_or(1, FpMatrix::rows);
    let complement: Vec<usize> = (0..e_gens.len()).filter(|i| !f_indices.contains(i)).collect();
    let c = complement.len();
    let cosets = (p as usize).pow(c as u32);
    // coset index Σ v_j p^j for exponents v of the complement generators
    let shift = |j: usize| {
        let q = p as usize;
        FpMatrix::from_fn(p, cosets, cosets, |row, col| {
            let digit = (col / q.pow(j as u32)) % q;
            let target = col - digit * q.pow(j as u32) + ((digit + 1) % q) * q.pow(j as u32);
            (row == target) as u32
        })
    };
    let mats: Vec<FpMatrix> = (0..e_gens.len())
        .map(|g| {
            if let Some(k) = f_indices.iter().position(|&i| i == g) {
                kron(&l_actions[k], &FpMatrix::identity(p, cosets))
            } else {
                let j = complement.iter().position(|&i| i == g).expect("generator is in F or its complement");
                kron(&FpMatrix::identity(p, l_dim), &shift(j))
            }
        })
        .collect();
    let labels = (0..l_dim * cosets).map(|i| format!("l{}⊗c{}", i / cosets + 1, i % cosets)).collect();
    let realizer = Arc::new(Realizer::Explicit { gens: e_gens.to_vec(), mats });
    ModuleRep::build(format!("Ind(rank {})", f_indices.len()), p, n, l_dim * cosets, labels, Provenance::Induced, realizer, e_gens)
}

pub fn kron(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
    let p = a.p();
    FpMatrix::from_fn(p, a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        a.get(i / b.rows(), j / b.cols()) * b.get(i % b.rows(), j % b.cols()) % p
    })
}
