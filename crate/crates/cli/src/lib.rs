//! Command-line front end. Every result is one JSON object per line; the
//! table commands can also write tab-separated rows.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use modrep::complexity::{
    class_dimension, complexity_with, suite_labels, ComplexityConfig, ComplexityReport, Suite, VarietyMethod, Verdict,
};
use modrep::jordan::{generic_jordan_type, insertion_quotients_general, ses_quotients_oracle, JordanType};
use modrep::linalg::GenericConfig;
use modrep::partition::{classify, o_lambda, p_adic_expansion, p_core, Partition};
use modrep::specht::{
    radical_module, simple_module, specht_module, sum_zero_submodule, young_permutation_module, ModuleRep,
};
use modrep::subgroups::{count_fixed_tabloids, k_f_subgroup, maximal_elab_classes, regular_r, standard_e, ElabSubgroup};
use modrep::tables::{
    mbr_restrict, phi, predicted_complexity, psi, simple_dim, specht_decomposition, specht_dim, TwoPartLabel,
};
use modrep::variety::{variety_dimension, variety_dimension_slice, SliceConfig, VarietyConfig, VarietyReport};

/// Environment variable naming the cache file; wins over `--cache`.
pub const CACHE_ENV: &str = "MODREP_CACHE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "modrep", version, about = "Two-part simple modules of symmetric groups: tables, Jordan types, rank varieties, complexity")]
struct Cli {
    /// Output format; tsv is accepted by table commands only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Count,
    Slice,
}

impl From<MethodArg> for VarietyMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => VarietyMethod::Auto,
            MethodArg::Count => VarietyMethod::Count,
            MethodArg::Slice => VarietyMethod::Slice,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// p-core and p-weight of a partition.
    Core(PartitionArgs),
    /// p-adic expansion, O_λ and regularity flags.
    Expand(PartitionArgs),
    /// Decomposition number (S^(n-k,k) : D^(n-s,s)).
    Psi(TableArgs),
    /// p-Kostka number [M^(n-k,k) : Y^(n-s,s)].
    Phi(TableArgs),
    /// Dimension of S^(n-second,second).
    DimSpecht(LabelArgs),
    /// Dimension of D^(n-second,second).
    DimSimple(LabelArgs),
    /// Composition factors of S^(n-second,second).
    Decompose(LabelArgs),
    /// Predicted complexity of D^(n-second,second).
    Predict(LabelArgs),
    /// Restriction of D^(a,b) to S_{a+b-1} (odd p).
    Mbr(PartitionArgs),
    /// Maximal elementary abelian classes of S_n, or one named subgroup.
    Subgroups(SubgroupsArgs),
    /// Tabloids of M^λ fixed by a subgroup.
    FixedTabloids(FixedArgs),
    /// Generic Jordan type of a module restricted to a subgroup.
    GenericJordan(GenericArgs),
    /// Quotient Jordan types of F C_p-module short exact sequences.
    Insertion(InsertionArgs),
    /// Dimension of the rank variety of a module over a subgroup.
    RankVarietyDim(VarietyArgs),
    /// Complexity of a simple module D^λ.
    Complexity(ComplexityArgs),
    /// Compare computed complexities with the predictions over a range.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct PartitionArgs {
    #[arg(long)]
    p: usize,
    /// Comma separated parts, "-" for the empty partition.
    #[arg(long, allow_hyphen_values = true)]
    partition: String,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    s: usize,
}

#[derive(Debug, Args)]
struct LabelArgs {
    /// Ignored by dim-specht.
    #[arg(long, default_value_t = 2)]
    p: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    second: usize,
}

#[derive(Debug, Args)]
struct SubgroupsArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    n: usize,
    /// E:a, KF:l, R:m or maximal:i; all maximal classes when absent.
    #[arg(long)]
    subgroup: Option<String>,
}

#[derive(Debug, Args)]
struct FixedArgs {
    #[arg(long)]
    p: usize,
    #[arg(long, allow_hyphen_values = true)]
    partition: String,
    #[arg(long)]
    subgroup: String,
}

#[derive(Debug, Args)]
struct GenericArgs {
    #[arg(long)]
    p: usize,
    /// M:λ, S:λ, D:λ, M0:λ or Rad:λ.
    #[arg(long)]
    module: String,
    #[arg(long)]
    subgroup: String,
    /// Samples per power; 0 picks enough for a 2^-40 failure bound.
    #[arg(long, default_value_t = 0)]
    samples: usize,
    /// Extension degree of the sampling field.
    #[arg(long)]
    ext: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct InsertionArgs {
    #[arg(long)]
    p: u32,
    /// Jordan type of the submodule, e.g. "1^2 2^1".
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    /// Also run the exhaustive oracle and report agreement.
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct VarietyArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    module: String,
    #[arg(long)]
    subgroup: String,
    /// Extension degrees to count over, e.g. 2,4.
    #[arg(long, value_delimiter = ',')]
    exts: Option<Vec<u32>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// count or slice; auto counts.
    #[arg(long, value_enum, default_value_t = MethodArg::Count)]
    method: MethodArg,
}

#[derive(Debug, Args)]
struct EngineArgs {
    #[arg(long, value_delimiter = ',')]
    exts: Option<Vec<u32>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// JSONL cache of per-class dimensions.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ComplexityArgs {
    #[arg(long)]
    p: usize,
    /// D:λ with λ two-part.
    #[arg(long)]
    module: String,
    /// Compute every class even when p does not divide dim D^λ.
    #[arg(long)]
    no_shortcut: bool,
    /// Print the full report with every class; bypasses the cache.
    #[arg(long)]
    detail: bool,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// theorem-a or theorem-c.
    #[arg(long)]
    suite: String,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    /// Second parts to check; the suite default when absent.
    #[arg(long, value_delimiter = ',')]
    seconds: Option<Vec<usize>>,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] modrep::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cache {path}: {source}")]
    Cache { path: String, source: std::io::Error },
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs one command line (program name first). Returns the exit code.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PRECONDITION } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "error": e.to_string() }));
            EXIT_PRECONDITION
        }
    }
}

fn emit(out: &mut dyn Write, v: &impl Serialize) -> CliResult<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("serializable"))?;
    Ok(())
}

fn json_only(format: Format, cmd: &str) -> CliResult<()> {
    match format {
        Format::Json => Ok(()),
        Format::Tsv => Err(CliError::Usage(format!("--format tsv is only available for subgroups and verify, not {cmd}"))),
    }
}

fn parse_partition(text: &str) -> CliResult<Partition> {
    Ok(text.parse::<Partition>()?)
}

fn check_p(p: usize) -> CliResult<u32> {
    if !modrep::modp::is_prime(p as u64) {
        return Err(modrep::Error::NotPrime(p as u64).into());
    }
    u32::try_from(p).map_err(|_| CliError::Usage(format!("--p {p} is too large")))
}

/// `E:a`, `KF:l`, `R:m` or `maximal:i` (zero based) inside `S_n`.
pub fn parse_subgroup(text: &str, n: usize, p: usize) -> modrep::Result<ElabSubgroup> {
    let (kind, arg) = text
        .split_once(':')
        .ok_or_else(|| modrep::Error::Parse(format!("subgroup {text:?}: expected E:a, KF:l, R:m or maximal:i")))?;
    let idx: usize = arg.trim().parse().map_err(|_| modrep::Error::Parse(format!("subgroup {text:?}: bad index")))?;
    match kind.trim() {
        "E" => standard_e(idx, p, n),
        "KF" if p == 2 => k_f_subgroup(idx, n),
        "KF" => Err(modrep::Error::Precondition("KF subgroups exist for p = 2 only".into())),
        "R" => regular_r(idx, p, n),
        "maximal" => {
            let classes = maximal_elab_classes(n, p)?;
            let count = classes.len();
            classes
                .into_iter()
                .nth(idx)
                .ok_or_else(|| modrep::Error::Precondition(format!("S_{n} has {count} maximal classes for p = {p}")))
        }
        other => Err(modrep::Error::Parse(format!("unknown subgroup kind {other:?}"))),
    }
}

/// `M:λ`, `S:λ`, `D:λ`, `M0:λ` or `Rad:λ` over `F_p`.
pub fn parse_module(text: &str, p: u32) -> modrep::Result<ModuleRep> {
    let (kind, lam) =
        text.split_once(':').ok_or_else(|| modrep::Error::Parse(format!("module {text:?}: expected KIND:partition")))?;
    let lambda: Partition = lam.parse()?;
    match kind.trim() {
        "M" => young_permutation_module(&lambda, &[], p),
        "S" => Ok(specht_module(&lambda, &[], p)?.0),
        "D" => simple_module(&lambda, &[], p),
        "M0" => sum_zero_submodule(&lambda, &[], p),
        "Rad" => radical_module(&lambda, &[], p),
        other => Err(modrep::Error::Parse(format!("unknown module kind {other:?}"))),
    }
}

/// Two-part label of `D:a,b`.
fn parse_simple_label(text: &str) -> CliResult<(usize, usize)> {
    let lam = text
        .strip_prefix("D:")
        .ok_or_else(|| CliError::Usage(format!("--module {text:?}: complexity takes D:λ")))?;
    let lambda = parse_partition(lam)?;
    if lambda.len() > 2 {
        return Err(CliError::Usage(format!("--module {text:?}: λ must have at most two parts")));
    }
    Ok((lambda.n(), lambda.part(1)))
}

fn label_text(l: &TwoPartLabel) -> String {
    l.partition().to_string()
}

/// Integer results keyed by operation and canonical arguments, one JSON
/// object per line. Later lines win.
#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: HashMap<(String, String), u64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheLine {
    op: String,
    args: String,
    value: u64,
}

impl Cache {
    pub fn open(path: Option<&Path>) -> std::io::Result<Self> {
        let Some(path) = path else { return Ok(Cache::default()) };
        let mut entries = HashMap::new();
        if path.exists() {
            for line in BufReader::new(std::fs::File::open(path)?).lines() {
                let line = line?;
                // torn or foreign lines are skipped, not fatal
                if let Ok(c) = serde_json::from_str::<CacheLine>(&line) {
                    entries.insert((c.op, c.args), c.value);
                }
            }
        }
        Ok(Cache { path: Some(path.to_path_buf()), entries })
    }

    pub fn get(&self, op: &str, args: &str) -> Option<u64> {
        self.entries.get(&(op.to_string(), args.to_string())).copied()
    }

    pub fn put(&mut self, op: &str, args: &str, value: u64) -> std::io::Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        if self.get(op, args) == Some(value) {
            return Ok(());
        }
        let line = CacheLine { op: op.into(), args: args.into(), value };
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(f, "{}", serde_json::to_string(&line).expect("serializable"))?;
        self.entries.insert((line.op, line.args), value);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn cache_path(flag: Option<&PathBuf>) -> Option<PathBuf> {
    match std::env::var_os(CACHE_ENV) {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => flag.cloned(),
    }
}

fn engine_config(p: usize, engine: &EngineArgs, no_shortcut: bool) -> ComplexityConfig {
    let mut cfg = ComplexityConfig::for_prime(p as u32, engine.seed);
    if let Some(exts) = &engine.exts {
        cfg.exts = exts.clone();
    }
    cfg.method = engine.method.into();
    cfg.no_shortcut = no_shortcut;
    cfg
}

fn method_name(m: VarietyMethod) -> &'static str {
    match m {
        VarietyMethod::Auto => "auto",
        VarietyMethod::Count => "count",
        VarietyMethod::Slice => "slice",
    }
}

/// Complexity with per-class dimensions read from and written to `cache`.
fn cached_complexity(n: usize, second: usize, p: usize, cfg: &ComplexityConfig, cache: &mut Cache) -> CliResult<ComplexityReport> {
    let exts: Vec<String> = cfg.exts.iter().map(u32::to_string).collect();
    let mut io_error = None;
    let report = complexity_with(n, second, p, cfg, |i, m, e| {
        let args = format!(
            "p={p};module={};class={i}:{};exts={};seed={};method={};no_shortcut={}",
            m.name(),
            e.tag(),
            exts.join(","),
            cfg.seed,
            method_name(cfg.method),
            cfg.no_shortcut
        );
        if let Some(v) = cache.get("class-dim", &args) {
            return Ok(VarietyReport::cached(m, e, v as usize, cfg.seed));
        }
        let r = class_dimension(m, e, cfg)?;
        if r.consistent {
            if let Err(err) = cache.put("class-dim", &args, r.dim_estimate as u64) {
                io_error.get_or_insert(err);
            }
        }
        Ok(r)
    })?;
    if let Some(source) = io_error {
        let path = cache.path.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
        return Err(CliError::Cache { path, source });
    }
    Ok(report)
}

#[derive(Serialize)]
struct Summary<'a> {
    module: &'a str,
    p: usize,
    n: usize,
    second: usize,
    module_dim: usize,
    weight: usize,
    class_dims: Vec<usize>,
    computed: usize,
    predicted: Option<usize>,
    rule: Value,
    verdict: Verdict,
    shortcut_used: bool,
    consistent: bool,
    exts: &'a [u32],
    seed: u64,
}

fn summary<'a>(r: &'a ComplexityReport, cfg: &'a ComplexityConfig) -> Summary<'a> {
    Summary {
        module: &r.module,
        p: r.p,
        n: r.n,
        second: r.second,
        module_dim: r.module_dim,
        weight: r.weight,
        class_dims: r.classes.iter().map(|c| c.dim_estimate).collect(),
        computed: r.computed,
        predicted: r.predicted.value,
        rule: serde_json::to_value(r.predicted.rule).expect("serializable"),
        verdict: r.verdict,
        shortcut_used: r.shortcut_used,
        consistent: r.consistent,
        exts: &cfg.exts,
        seed: cfg.seed,
    }
}

fn verdict_text(v: Verdict) -> String {
    serde_json::to_value(v).expect("serializable").as_str().unwrap_or_default().to_string()
}

fn run(cli: Cli, out: &mut dyn Write) -> CliResult<i32> {
    let format = cli.format;
    match cli.command {
        Command::Core(a) => {
            json_only(format, "core")?;
            let cw = p_core(&parse_partition(&a.partition)?, a.p)?;
            emit(out, &json!({ "core": cw.core.to_string(), "weight": cw.weight }))?;
        }
        Command::Expand(a) => {
            json_only(format, "expand")?;
            let lambda = parse_partition(&a.partition)?;
            let exp: Vec<String> = p_adic_expansion(&lambda, a.p)?.iter().map(ToString::to_string).collect();
            let flags = classify(&lambda, a.p)?;
            emit(
                out,
                &json!({
                    "expansion": exp,
                    "o_lambda": o_lambda(&lambda, a.p)?.to_string(),
                    "p_regular": flags.p_regular,
                    "p_restricted": flags.p_restricted,
                }),
            )?;
        }
        Command::Psi(a) => {
            json_only(format, "psi")?;
            emit(out, &json!({ "value": psi(a.n, a.k, a.s, a.p)? }))?;
        }
        Command::Phi(a) => {
            json_only(format, "phi")?;
            emit(out, &json!({ "value": phi(a.n, a.k, a.s, a.p)? }))?;
        }
        Command::DimSpecht(a) => {
            json_only(format, "dim-specht")?;
            emit(out, &json!({ "dim": specht_dim(a.n, a.second)? }))?;
        }
        Command::DimSimple(a) => {
            json_only(format, "dim-simple")?;
            emit(out, &json!({ "dim": simple_dim(a.n, a.second, a.p)? }))?;
        }
        Command::Decompose(a) => {
            json_only(format, "decompose")?;
            let factors: Vec<String> = specht_decomposition(a.n, a.second, a.p)?.iter().map(label_text).collect();
            emit(out, &json!({ "factors": factors }))?;
        }
        Command::Predict(a) => {
            json_only(format, "predict")?;
            let pc = predicted_complexity(a.n, a.second, a.p)?;
            match pc.rule {
                Some(rule) => emit(out, &json!({ "value": pc.value, "rule": rule }))?,
                None => emit(out, &json!({ "value": null, "rule": "not_covered" }))?,
            }
        }
        Command::Mbr(a) => {
            json_only(format, "mbr")?;
            let lambda = parse_partition(&a.partition)?;
            if lambda.len() != 2 {
                return Err(CliError::Usage(format!("--partition {}: mbr needs two nonzero parts", a.partition)));
            }
            let factors: Vec<String> =
                mbr_restrict(lambda.part(0), lambda.part(1), a.p)?.iter().map(label_text).collect();
            emit(out, &json!({ "factors": factors }))?;
        }
        Command::Subgroups(a) => {
            check_p(a.p)?;
            let groups = match &a.subgroup {
                Some(text) => vec![(0, parse_subgroup(text, a.n, a.p)?)],
                None => maximal_elab_classes(a.n, a.p)?.into_iter().enumerate().collect(),
            };
            if format == Format::Tsv {
                writeln!(out, "index\tclass\trank\ta0\ta1\torbit_sizes\tgens")?;
            }
            for (i, e) in groups {
                let st = e.orbit_stats();
                let gens: Vec<String> = e.gens().iter().map(ToString::to_string).collect();
                match format {
                    Format::Json => emit(
                        out,
                        &json!({
                            "index": i,
                            "class": e.tag(),
                            "rank": e.rank(),
                            "a0": st.a0,
                            "a1": st.a1,
                            "orbit_sizes": st.orbit_sizes,
                            "gens": gens,
                        }),
                    )?,
                    Format::Tsv => {
                        let sizes: Vec<String> = st.orbit_sizes.iter().map(usize::to_string).collect();
                        writeln!(out, "{i}\t{}\t{}\t{}\t{}\t{}\t{}", e.tag(), e.rank(), st.a0, st.a1, sizes.join(","), gens.join(" "))?;
                    }
                }
            }
        }
        Command::FixedTabloids(a) => {
            json_only(format, "fixed-tabloids")?;
            let lambda = parse_partition(&a.partition)?;
            let e = parse_subgroup(&a.subgroup, lambda.n(), a.p)?;
            emit(out, &json!({ "count": count_fixed_tabloids(&lambda, &e.orbit_stats())? }))?;
        }
        Command::GenericJordan(a) => {
            json_only(format, "generic-jordan")?;
            let p = check_p(a.p)?;
            let m = parse_module(&a.module, p)?;
            let e = parse_subgroup(&a.subgroup, m.n(), a.p)?;
            let g = generic_jordan_type(&m, &e, &GenericConfig { samples: a.samples, k: a.ext, seed: a.seed })?;
            emit(
                out,
                &json!({
                    "module": m.name(),
                    "module_dim": m.dim(),
                    "subgroup": e.tag(),
                    "rank": e.rank(),
                    "jordan": g.jordan,
                    "stable": g.stable,
                    "generically_free": g.jordan.is_generically_free(),
                    "ranks": g.ranks,
                    "certificate": g.certificate,
                }),
            )?;
        }
        Command::Insertion(a) => {
            json_only(format, "insertion")?;
            let u = JordanType::parse(&a.u, a.p)?;
            let v = JordanType::parse(&a.v, a.p)?;
            let rule = insertion_quotients_general(&u, &v)?;
            let mut line = json!({ "u": u, "v": v, "quotients": rule });
            if a.oracle {
                let oracle = ses_quotients_oracle(&u, &v)?;
                line["oracle"] = json!(oracle);
                line["agree"] = json!(oracle == rule);
            }
            emit(out, &line)?;
        }
        Command::RankVarietyDim(a) => {
            json_only(format, "rank-variety-dim")?;
            let p = check_p(a.p)?;
            let m = parse_module(&a.module, p)?;
            let e = parse_subgroup(&a.subgroup, m.n(), a.p)?;
            let report = match a.method {
                MethodArg::Slice => variety_dimension_slice(&m, &e, &SliceConfig { samples: 0, k: None, seed: a.seed })?,
                MethodArg::Auto | MethodArg::Count => {
                    let mut cfg = VarietyConfig::for_prime(p, a.seed);
                    if let Some(exts) = a.exts {
                        cfg.exts = exts;
                    }
                    variety_dimension(&m, &e, &cfg)?
                }
            };
            emit(out, &report)?;
        }
        Command::Complexity(a) => {
            json_only(format, "complexity")?;
            check_p(a.p)?;
            let (n, second) = parse_simple_label(&a.module)?;
            let cfg = engine_config(a.p, &a.engine, a.no_shortcut);
            if a.detail {
                let report = complexity_with(n, second, a.p, &cfg, |_, m, e| class_dimension(m, e, &cfg))?;
                emit(out, &report)?;
            } else {
                let mut cache = open_cache(a.engine.cache.as_ref())?;
                let report = cached_complexity(n, second, a.p, &cfg, &mut cache)?;
                emit(out, &summary(&report, &cfg))?;
            }
        }
        Command::Verify(a) => {
            check_p(a.p)?;
            let suite: Suite = a.suite.parse()?;
            if a.n_min > a.n_max {
                return Err(CliError::Usage(format!("--n-min {} exceeds --n-max {}", a.n_min, a.n_max)));
            }
            let labels = suite_labels(suite, a.p, a.n_min..=a.n_max, a.seconds.as_deref())?;
            let cfg = engine_config(a.p, &a.engine, true);
            let mut cache = open_cache(a.engine.cache.as_ref())?;
            if format == Format::Tsv {
                writeln!(out, "module\tn\tsecond\tdim\tclass_dims\tcomputed\tpredicted\tverdict\tconsistent")?;
            }
            let mut mismatches = 0usize;
            for (n, s) in labels {
                let report = cached_complexity(n, s, a.p, &cfg, &mut cache)?;
                if report.verdict == Verdict::Mismatch {
                    mismatches += 1;
                }
                let sm = summary(&report, &cfg);
                match format {
                    Format::Json => emit(out, &sm)?,
                    Format::Tsv => {
                        let dims: Vec<String> = sm.class_dims.iter().map(usize::to_string).collect();
                        let pred = sm.predicted.map_or("-".to_string(), |v| v.to_string());
                        writeln!(
                            out,
                            "{}\t{n}\t{s}\t{}\t{}\t{}\t{pred}\t{}\t{}",
                            sm.module,
                            sm.module_dim,
                            dims.join(","),
                            sm.computed,
                            verdict_text(sm.verdict),
                            sm.consistent
                        )?;
                    }
                }
                out.flush()?;
            }
            match format {
                Format::Json => emit(out, &json!({ "mismatches": mismatches }))?,
                Format::Tsv => writeln!(out, "mismatches\t{mismatches}")?,
            }
            if mismatches > 0 {
                return Ok(EXIT_MISMATCH);
            }
        }
    }
    Ok(EXIT_OK)
}

fn open_cache(flag: Option<&PathBuf>) -> CliResult<Cache> {
    let path = cache_path(flag);
    Cache::open(path.as_deref())
        .map_err(|source| CliError::Cache { path: path.map(|p| p.display().to_string()).unwrap_or_default(), source })
}
