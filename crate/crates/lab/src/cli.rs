//! Argument parsing, command execution, certificates and exit codes.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::{BigRational, Ratio};
use ramsey_core::clique::{
    enumerate_mono_sets, find_convex_clique, find_square_path_convex, find_type_clique, is_square_path_convex,
    max_mono_clique, max_weight_mono_clique, Clique, OrderType, SearchBudget, TypeOutcome, TypeSearch,
};
use ramsey_core::constructions::{
    block_triple_coloring, monotone_diff_triple_coloring, paley_coloring, parity_log_coloring, pentagon,
    product_coloring, rodl_coloring, rodl_three_color, second_diff_coloring, BaseColorer, BlockSpec,
    InnerTripleColorer, RodlColoring, RodlColoringSpec,
};
use ramsey_core::drc::{self, BipartiteGraph, DrcParams};
use ramsey_core::ordertype::{
    cascade_params, find_separated_pair, separated::check_guarantees, shrink, EnumerationOrder, RpiResult, Verdict,
};
use ramsey_core::ordertype::cascade::parse_big;
use ramsey_core::ordertype::rpi::{compute_r_pi_with, decide, merge_shards, Shard};
use ramsey_core::weighted_ramsey::{check_balance, weighted_ramsey_solve, WeightPair};
use ramsey_core::weights::{
    f_exact, rodl_color_weight, verify_block_structure, verify_monotone_diff_counterexample,
    verify_second_diff_counterexample, Traversal, VerifyReport, WeightSpec, DEFAULT_FEXACT_BUDGET,
};
use ramsey_core::{Color, EdgeColoring, Rng, VertexInterval};
use serde_json::{json, Map, Value};

use crate::format::{BipartiteFile, ColoringFile};
use crate::manifest::{hash_file, sha256_hex, RunClock};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

pub const BUDGET_ENV: &str = "RAMSEY_LAB_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "ramsey-lab", version, about = "Search, construct and verify Ramsey colorings")]
pub struct Cli {
    /// Print only the JSON certificate.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Node limit for searches.
    #[arg(long, global = true, env = BUDGET_ENV)]
    pub budget: Option<u64>,
    /// Exit 3 unless the result is proved (optimal or exhausted).
    #[arg(long, global = true)]
    pub require_proof: bool,
    /// Where to write the artifact; the manifest goes next to it.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Generate a coloring (or bipartite graph) file.
    Gen(GenArgs),
    /// Maximum monochromatic clique.
    Maxclique(MaxcliqueArgs),
    /// Maximum-weight monochromatic clique of a file or of a Rödl coloring.
    Wclique(WcliqueArgs),
    /// Monochromatic clique of a given order type.
    Typeclique(TypecliqueArgs),
    /// Convex monochromatic clique, or its square-of-path relaxation.
    Convex(ConvexArgs),
    /// Enumerate monochromatic sets of a triple coloring.
    Monosets(MonosetsArgs),
    /// Constructive red/blue weighted cliques.
    Wramsey(WramseyArgs),
    /// Dependent random choice.
    #[command(subcommand)]
    Drc(DrcCmd),
    /// Separated pair inside a dense set.
    Sep(SepArgs),
    /// Dense window of a set.
    Shrink(ShrinkArgs),
    /// Parameter cascade with exact closed-form checks.
    Cascade(CascadeArgs),
    /// Order-type Ramsey number by exhaustive search.
    Rpi(RpiArgs),
    /// Exact minimum over colorings of the heaviest monochromatic clique.
    Fexact(FexactArgs),
    /// Exhaustive counterexample checks, or certificate re-verification.
    Verify(VerifyArgs),
    /// Weight of a vertex set.
    Weight(WeightArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenName {
    ParityLog,
    SecondDiff,
    Paley,
    Pentagon,
    Random,
    Rodl,
    Rodl3,
    Product,
    MonotoneDiff,
    Blocks,
    Bipartite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColorerName {
    Random,
    Paley,
    ParityLog,
    PaleyBlowup,
    Red,
    Blue,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InnerName {
    Random,
    Red,
    Blue,
    MonotoneDiff,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub name: GenName,
    #[arg(long)]
    pub n: Option<i64>,
    /// First vertex label for `random` and `paley`.
    #[arg(long, default_value_t = 1)]
    pub lo: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Edge probability for `random` and `bipartite`.
    #[arg(long, default_value = "1/2")]
    pub p: String,
    #[arg(long, value_enum, default_value = "random")]
    pub colorer: ColorerName,
    #[arg(long, value_enum, default_value = "random")]
    pub top: ColorerName,
    #[arg(long, default_value_t = 101)]
    pub leaf: usize,
    /// Interval growth `a` of the Rödl cover.
    #[arg(long, default_value = "2")]
    pub growth: String,
    #[arg(long, value_delimiter = ',')]
    pub blocks: Vec<usize>,
    #[arg(long, value_enum, default_value = "random")]
    pub inner: InnerName,
    #[arg(long)]
    pub left: Option<PathBuf>,
    #[arg(long)]
    pub right: Option<PathBuf>,
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub n2: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MaxcliqueArgs {
    pub file: PathBuf,
    /// Search one color; all colors by default.
    #[arg(long)]
    pub color: Option<Color>,
}

#[derive(Debug, Args)]
pub struct WcliqueArgs {
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub color: Option<Color>,
    #[arg(long, default_value = "w1")]
    pub weights: String,
    /// Use the Rödl coloring of `[2, N]` instead of a file.
    #[arg(long, conflicts_with = "file")]
    pub rodl: Option<i64>,
    #[arg(long, default_value_t = 101)]
    pub leaf: usize,
    /// 3 for the green-between-intervals variant.
    #[arg(long, default_value_t = 3)]
    pub colors: u32,
}

#[derive(Debug, Args)]
pub struct TypecliqueArgs {
    pub file: PathBuf,
    /// Ranking of the consecutive differences, largest first (1-based).
    #[arg(long, value_delimiter = ',', required = true)]
    pub pi: Vec<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub color: Color,
}

#[derive(Debug, Args)]
pub struct ConvexArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub color: Color,
    /// Only pairs at index distance at most 2 must carry the color.
    #[arg(long)]
    pub square_path: bool,
}

#[derive(Debug, Args)]
pub struct MonosetsArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub max_size: usize,
    /// How many sets to list in the certificate.
    #[arg(long, default_value_t = 20)]
    pub list: usize,
}

#[derive(Debug, Args)]
pub struct WramseyArgs {
    #[arg(required_unless_present = "coloring")]
    pub file: Option<PathBuf>,
    #[arg(long, conflicts_with = "file")]
    pub coloring: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// JSON map vertex -> {r, b}; seeded random balanced weights otherwise.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct DrcCommon {
    pub file: PathBuf,
    #[arg(long)]
    pub p: String,
    #[arg(long)]
    pub s: u64,
    #[arg(long)]
    pub t: u64,
    #[arg(long)]
    pub m: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum DrcCmd {
    Extract {
        #[command(flatten)]
        common: DrcCommon,
        #[arg(long, default_value_t = 100)]
        retries: u64,
    },
    Report {
        #[command(flatten)]
        common: DrcCommon,
        #[arg(long, default_value_t = 200)]
        samples: u64,
    },
}

#[derive(Debug, Args)]
pub struct SepArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub set: Vec<i64>,
    #[arg(long)]
    pub lo: i64,
    #[arg(long)]
    pub hi: i64,
}

#[derive(Debug, Args)]
pub struct ShrinkArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub set: Vec<i64>,
    #[arg(long)]
    pub lo: i64,
    #[arg(long)]
    pub hi: i64,
    #[arg(long)]
    pub r: usize,
}

#[derive(Debug, Args)]
pub struct CascadeArgs {
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub q: u64,
    /// Accepts `1e9`-style powers of ten.
    #[arg(long)]
    pub n: String,
    #[arg(long)]
    pub p: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderName {
    Forward,
    Backward,
}

#[derive(Debug, Args)]
pub struct RpiArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub q: u32,
    #[arg(long, value_delimiter = ',')]
    pub pi: Vec<usize>,
    #[arg(long, alias = "nmax", default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "forward")]
    pub order: OrderName,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TraversalName {
    Lex,
    Shuffled,
}

#[derive(Debug, Args)]
pub struct FexactArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long, default_value = "w1")]
    pub weights: String,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, value_enum, default_value = "lex")]
    pub traversal: TraversalName,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct VerifyArgs {
    /// Re-run a certificate's recorded command and compare.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    #[command(subcommand)]
    pub check: Option<VerifyCheck>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCheck {
    /// Monochromatic sets of the difference-comparison triple coloring.
    MonotoneDiff {
        #[arg(long, default_value_t = 30)]
        n: i64,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    /// 7-cliques of the parity-log coloring against the second-difference pattern.
    SecondDiff {
        #[arg(long, default_value_t = 40)]
        n: i64,
    },
    /// Block property of the surrogate block coloring.
    Blocks {
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, value_enum, default_value = "random")]
        inner: InnerName,
    },
}

impl WramseyArgs {
    fn coloring_path(&self) -> Option<PathBuf> {
        self.file.clone().or_else(|| self.coloring.clone())
    }
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub set: Vec<i64>,
    #[arg(long, alias = "spec", default_value = "w1")]
    pub weights: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Nothing to prove (generators, reports).
    Done,
    Proved,
    /// A valid answer without a proof of optimality.
    Unproved,
    Inconclusive,
    CheckFailed,
}

/// Result of one command before anything is written.
#[derive(Debug)]
pub struct Outcome {
    pub certificate: Value,
    /// Replaces the certificate as the written artifact (generators).
    pub artifact: Option<Vec<u8>>,
    pub table: String,
    pub status: Status,
    pub seed: Option<u64>,
    pub metadata: Option<Value>,
}

impl Outcome {
    fn new(certificate: Value, table: String, status: Status) -> Self {
        Outcome { certificate, artifact: None, table, status, seed: None, metadata: None }
    }

    fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Canonical bytes: sorted keys, no whitespace.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

/// `argv` minus the flags that do not change the result, with the budget
/// pinned so that a re-run does not depend on the environment.
pub fn recorded_args(argv: &[String], budget: Option<u64>) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        match a.as_str() {
            "--json" | "--require-proof" => {}
            "-o" | "--output" | "--threads" | "--budget" => {
                it.next();
            }
            s if s.starts_with("--output=") || s.starts_with("--threads=") || s.starts_with("--budget=") => {}
            s if s.starts_with("-o") && s.len() > 2 && !s.starts_with("--") => {}
            _ => out.push(a.clone()),
        }
    }
    if let Some(b) = budget {
        out.push("--budget".into());
        out.push(b.to_string());
    }
    out
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>> {
    let bad = || anyhow!("{s:?} is not a nonnegative rational (use 1/2 or 0.5)");
    if let Some((a, b)) = s.split_once('/') {
        let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if b == 0 {
            bail!("{s:?} has a zero denominator");
        }
        return Ok(Ratio::new(a, b));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 18 || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let den = 10u64.pow(frac.len() as u32);
    let i: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let f: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = i.checked_mul(den).and_then(|x| x.checked_add(f)).ok_or_else(bad)?;
    Ok(Ratio::new(num, den))
}

fn ratio_str(r: Ratio<u64>) -> String {
    r.to_string()
}

fn big_ratio_str(r: &BigRational) -> String {
    r.to_string()
}

fn budget_of(cli: &Cli) -> Result<SearchBudget> {
    Ok(match cli.budget {
        Some(n) => SearchBudget::nodes(n)?,
        None => SearchBudget::unlimited(),
    })
}

/// Runs `f` over `items` on up to `threads` workers, keeping input order.
pub fn par_map<T: Sync, R: Send>(threads: usize, items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if threads <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(move || c.iter().map(f).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn clique_json(c: &Clique) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), json!("clique"));
    m.insert("color".into(), json!(c.color));
    m.insert("vertices".into(), json!(c.vertices));
    if let Some(w) = c.weight {
        m.insert("weight".into(), json!(w));
    }
    if let Some(r) = &c.diff_ranks {
        m.insert("diff_ranks".into(), json!(r));
    }
    m
}

fn coloring_json(c: &EdgeColoring) -> Value {
    serde_json::from_str(&ColoringFile::Edge(c.clone()).to_json()).expect("canonical JSON parses")
}

fn report_json(r: &VerifyReport) -> Value {
    json!({
        "n": r.n,
        "inspected": r.inspected.iter().map(|(s, c)| json!({"size": s, "count": c})).collect::<Vec<_>>(),
        "total": r.total(),
        "violations": r.violations,
    })
}

fn read_edge(path: &Path) -> Result<EdgeColoring> {
    ColoringFile::read(path)?.edge().with_context(|| format!("in {}", path.display()))
}

fn colorer(name: ColorerName, seed: u64, leaf: usize) -> BaseColorer {
    match name {
        ColorerName::Random => BaseColorer::Random { seed },
        ColorerName::Paley => BaseColorer::Paley,
        ColorerName::ParityLog => BaseColorer::ParityLog,
        ColorerName::PaleyBlowup => BaseColorer::PaleyBlowUp { leaf },
        ColorerName::Red => BaseColorer::Constant(0),
        ColorerName::Blue => BaseColorer::Constant(1),
    }
}

fn inner(name: InnerName) -> InnerTripleColorer {
    match name {
        InnerName::Random => InnerTripleColorer::Random,
        InnerName::Red => InnerTripleColorer::Constant(0),
        InnerName::Blue => InnerTripleColorer::Constant(1),
        InnerName::MonotoneDiff => InnerTripleColorer::MonotoneDiff,
    }
}

/// Inputs named on the command line, for hashing.
pub fn input_paths(cmd: &Cmd) -> Vec<PathBuf> {
    match cmd {
        Cmd::Gen(g) => g.left.iter().chain(&g.right).cloned().collect(),
        Cmd::Maxclique(a) => vec![a.file.clone()],
        Cmd::Wclique(a) => a.file.iter().cloned().collect(),
        Cmd::Typeclique(a) => vec![a.file.clone()],
        Cmd::Convex(a) => vec![a.file.clone()],
        Cmd::Monosets(a) => vec![a.file.clone()],
        Cmd::Wramsey(a) => a.coloring_path().into_iter().chain(a.weights.clone()).collect(),
        Cmd::Drc(DrcCmd::Extract { common, .. } | DrcCmd::Report { common, .. }) => vec![common.file.clone()],
        Cmd::Verify(VerifyArgs { certificate: Some(c), .. }) => vec![c.clone()],
        _ => Vec::new(),
    }
}

fn hashes(paths: &[PathBuf]) -> Result<BTreeMap<String, String>> {
    paths.iter().map(|p| Ok((p.display().to_string(), hash_file(p)?))).collect()
}

/// Executes a parsed command; writes nothing.
pub fn execute(cli: &Cli, recorded: &[String]) -> Result<Outcome> {
    let inputs = hashes(&input_paths(&cli.cmd))?;
    let mut out = match &cli.cmd {
        Cmd::Gen(a) => gen(cli, a)?,
        Cmd::Maxclique(a) => maxclique(cli, a)?,
        Cmd::Wclique(a) => wclique(cli, a)?,
        Cmd::Typeclique(a) => typeclique(cli, a)?,
        Cmd::Convex(a) => convex(cli, a)?,
        Cmd::Monosets(a) => monosets(a)?,
        Cmd::Wramsey(a) => wramsey(a)?,
        Cmd::Drc(d) => drc_cmd(cli, d)?,
        Cmd::Sep(a) => sep(a)?,
        Cmd::Shrink(a) => shrink_cmd(a)?,
        Cmd::Cascade(a) => cascade(a)?,
        Cmd::Rpi(a) => rpi(cli, a)?,
        Cmd::Fexact(a) => fexact(cli, a)?,
        Cmd::Verify(a) => verify(a)?,
        Cmd::Weight(a) => weight(a)?,
    };
    if let Value::Object(m) = &mut out.certificate {
        m.insert("args".into(), json!(recorded));
        m.insert("inputs".into(), json!(inputs));
        m.insert("command".into(), json!(command_name(&cli.cmd)));
    }
    Ok(out)
}

pub fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Gen(_) => "gen",
        Cmd::Maxclique(_) => "maxclique",
        Cmd::Wclique(_) => "wclique",
        Cmd::Typeclique(_) => "typeclique",
        Cmd::Convex(_) => "convex",
        Cmd::Monosets(_) => "monosets",
        Cmd::Wramsey(_) => "wramsey",
        Cmd::Drc(_) => "drc",
        Cmd::Sep(_) => "sep",
        Cmd::Shrink(_) => "shrink",
        Cmd::Cascade(_) => "cascade",
        Cmd::Rpi(_) => "rpi",
        Cmd::Fexact(_) => "fexact",
        Cmd::Verify(_) => "verify",
        Cmd::Weight(_) => "weight",
    }
}

fn need_n(a: &GenArgs) -> Result<i64> {
    a.n.ok_or_else(|| anyhow!("generator needs --n"))
}

fn gen(cli: &Cli, a: &GenArgs) -> Result<Outcome> {
    let mut metadata = None;
    let file = match a.name {
        GenName::ParityLog => ColoringFile::Edge(parity_log_coloring(need_n(a)?)?),
        GenName::SecondDiff => ColoringFile::Edge(second_diff_coloring(need_n(a)?)?),
        GenName::Paley => ColoringFile::Edge(paley_coloring(a.lo, usize::try_from(need_n(a)?)?)?),
        GenName::Pentagon => ColoringFile::Edge(pentagon()),
        GenName::MonotoneDiff => ColoringFile::Triple(monotone_diff_triple_coloring(need_n(a)?)?),
        GenName::Random => {
            let n = usize::try_from(need_n(a)?)?;
            if a.q == 0 || a.q > 256 {
                bail!("q = {} must lie in 1..=256", a.q);
            }
            let mut rng = Rng::new(a.seed);
            let iv = VertexInterval::with_size(a.lo, n)?;
            ColoringFile::Edge(EdgeColoring::from_fn(iv, a.q, |_, _| rng.below(a.q as usize) as Color)?)
        }
        GenName::Rodl | GenName::Rodl3 => {
            let mut spec = RodlColoringSpec::classical(
                need_n(a)?,
                colorer(a.colorer, a.seed, a.leaf),
                colorer(a.top, a.seed, a.leaf),
            );
            spec.growth = parse_ratio(&a.growth)?;
            let r = if matches!(a.name, GenName::Rodl) { rodl_coloring(&spec)? } else { rodl_three_color(&spec)? };
            metadata = Some(rodl_metadata(cli, &r)?);
            ColoringFile::Edge(r.coloring.to_explicit()?)
        }
        GenName::Product => {
            let l = read_edge(a.left.as_deref().ok_or_else(|| anyhow!("product needs --left"))?)?;
            let r = read_edge(a.right.as_deref().ok_or_else(|| anyhow!("product needs --right"))?)?;
            ColoringFile::Edge(product_coloring(&l, &r)?)
        }
        GenName::Blocks => {
            let spec = BlockSpec { block_sizes: a.blocks.clone(), inner_colorer: inner(a.inner), seed: a.seed };
            ColoringFile::Triple(block_triple_coloring(&spec)?)
        }
        GenName::Bipartite => {
            let (n1, n2) = (a.n1.ok_or_else(|| anyhow!("needs --n1"))?, a.n2.ok_or_else(|| anyhow!("needs --n2"))?);
            let p = parse_ratio(&a.p)?;
            let mut rng = Rng::new(a.seed);
            let g = BipartiteGraph::random(n1, n2, *p.numer() as f64 / *p.denom() as f64, &mut rng)?;
            let text = serde_json::to_string(&BipartiteFile::from_graph(&g))?;
            let table = format!("bipartite graph {n1} x {n2}, {} edges\n", g.edge_count());
            let mut o = Outcome::new(json!({"kind": "bipartite"}), table, Status::Done).seed(a.seed);
            o.artifact = Some(text.into_bytes());
            return Ok(o);
        }
    };
    let (iv, q, entries) = match &file {
        ColoringFile::Edge(c) => (c.vertices(), c.q(), c.colors().len()),
        ColoringFile::Triple(c) => (c.vertices(), c.q(), c.colors().len()),
    };
    let table = format!("{} coloring on {iv}, q = {q}, {entries} entries\n", file.kind());
    let binary = cli.output.as_deref().is_some_and(crate::format::is_binary_path);
    let bytes = if binary { file.to_binary() } else { file.to_json().into_bytes() };
    let mut o = Outcome::new(json!({"kind": file.kind()}), table, Status::Done).seed(a.seed);
    o.artifact = Some(bytes);
    o.metadata = metadata;
    Ok(o)
}

/// Achieved maximum clique per interval, recorded instead of assumed.
fn rodl_metadata(cli: &Cli, r: &RodlColoring) -> Result<Value> {
    let budget = budget_of(cli)?;
    let ramsey_core::structured::Coloring::BlowUp(b) = &r.coloring else {
        return Ok(Value::Null);
    };
    let rows = par_map(cli.threads, &r.intervals.iter().enumerate().collect::<Vec<_>>(), |(i, iv)| {
        let part = &b.parts()[*i];
        let best = (0..2)
            .map(|c| part.max_mono_clique(c, &budget))
            .collect::<ramsey_core::Result<Vec<_>>>()?;
        let order = best.iter().map(|s| s.clique.order()).max().unwrap_or(0);
        Ok(json!({"lo": iv.lo(), "hi": iv.hi(), "max_mono_clique": order, "optimal": best.iter().all(|s| s.optimal)}))
    });
    Ok(json!({"intervals": rows.into_iter().collect::<Result<Vec<_>>>()?}))
}

fn maxclique(cli: &Cli, a: &MaxcliqueArgs) -> Result<Outcome> {
    let c = read_edge(&a.file)?;
    let budget = budget_of(cli)?;
    let colors: Vec<Color> = match a.color {
        Some(col) => vec![col],
        None => (0..c.q()).map(|x| x as Color).collect(),
    };
    let runs = par_map(cli.threads, &colors, |&col| max_mono_clique(&c, col, &budget))
        .into_iter()
        .collect::<ramsey_core::Result<Vec<_>>>()?;
    let mut table = String::new();
    for r in &runs {
        table += &format!(
            "color {}: order {} {:?} ({}, {} nodes)\n",
            r.clique.color,
            r.clique.order(),
            r.clique.vertices,
            if r.optimal { "optimal" } else { "budget exhausted" },
            r.nodes
        );
    }
    let optimal = runs.iter().all(|r| r.optimal);
    let status = if optimal { Status::Proved } else { Status::Unproved };
    let cert = if runs.len() == 1 {
        let mut m = clique_json(&runs[0].clique);
        m.insert("optimal".into(), json!(runs[0].optimal));
        Value::Object(m)
    } else {
        let cliques: Vec<Value> = runs
            .iter()
            .map(|r| {
                let mut m = clique_json(&r.clique);
                m.insert("optimal".into(), json!(r.optimal));
                Value::Object(m)
            })
            .collect();
        json!({"kind": "cliques", "cliques": cliques, "optimal": optimal})
    };
    Ok(Outcome::new(cert, table, status))
}

fn wclique(cli: &Cli, a: &WcliqueArgs) -> Result<Outcome> {
    let spec = WeightSpec::parse(&a.weights)?;
    let budget = budget_of(cli)?;
    if let Some(n) = a.rodl {
        let base = BaseColorer::PaleyBlowUp { leaf: a.leaf };
        let rspec = RodlColoringSpec::classical(n, base.clone(), base);
        let r = match a.colors {
            2 => rodl_coloring(&rspec)?,
            3 => rodl_three_color(&rspec)?,
            k => bail!("--colors must be 2 or 3, got {k}"),
        };
        let colors: Vec<Color> = match a.color {
            Some(c) => vec![c],
            None => (0..r.coloring.q()).map(|x| x as Color).collect(),
        };
        let per = par_map(cli.threads, &colors, |&c| rodl_color_weight(&r, &spec, c, &budget))
            .into_iter()
            .collect::<ramsey_core::Result<Vec<_>>>()?;
        let mut table = format!("Rödl coloring of [2, {n}], {} intervals, weights {}\n", r.intervals.len(), spec.name());
        for c in &per {
            table += &format!(
                "color {}: weight {:.6} on {} vertices ({})\n",
                c.color,
                c.weight,
                c.clique.len(),
                if c.optimal { "optimal" } else { "budget exhausted" }
            );
        }
        let max = per.iter().map(|c| c.weight).fold(0.0, f64::max);
        let optimal = per.iter().all(|c| c.optimal);
        let cert = json!({
            "kind": "rodl-weights",
            "n": n,
            "weights": spec.name(),
            "per_color": per.iter().map(|c| json!({"color": c.color, "weight": c.weight, "vertices": c.clique, "optimal": c.optimal})).collect::<Vec<_>>(),
            "max_weight": max,
            "optimal": optimal,
        });
        return Ok(Outcome::new(cert, table, if optimal { Status::Proved } else { Status::Unproved }));
    }
    let file = a.file.as_deref().ok_or_else(|| anyhow!("give a coloring file or --rodl N"))?;
    let c = read_edge(file)?;
    let w = spec.vector(c.vertices())?;
    let colors: Vec<Color> = match a.color {
        Some(col) => vec![col],
        None => (0..c.q()).map(|x| x as Color).collect(),
    };
    let runs = par_map(cli.threads, &colors, |&col| max_weight_mono_clique(&c, col, &w, &budget))
        .into_iter()
        .collect::<ramsey_core::Result<Vec<_>>>()?;
    let best = runs
        .iter()
        .max_by(|x, y| x.clique.weight.unwrap_or(0.0).total_cmp(&y.clique.weight.unwrap_or(0.0)))
        .expect("at least one color");
    let optimal = runs.iter().all(|r| r.optimal);
    let mut table = String::new();
    for r in &runs {
        table += &format!(
            "color {}: weight {:.6} {:?}{}\n",
            r.clique.color,
            r.clique.weight.unwrap_or(0.0),
            r.clique.vertices,
            if r.optimal { "" } else { " (budget exhausted)" }
        );
    }
    let mut m = clique_json(&best.clique);
    m.insert("optimal".into(), json!(optimal));
    m.insert("weights".into(), json!(spec.name()));
    Ok(Outcome::new(Value::Object(m), table, if optimal { Status::Proved } else { Status::Unproved }))
}

fn type_outcome(s: &TypeSearch, what: &str, color: Color) -> (Value, String, Status) {
    match &s.outcome {
        TypeOutcome::Found(c) => {
            let mut m = clique_json(c);
            m.insert("status".into(), json!("found"));
            m.insert("nodes".into(), json!(s.nodes));
            (Value::Object(m), format!("found {what} in color {color}: {:?}\n", c.vertices), Status::Proved)
        }
        TypeOutcome::ProvedAbsent => (
            json!({"kind": "absence", "color": color, "status": "none exists, exhausted", "nodes": s.nodes}),
            format!("no {what} in color {color}: none exists, exhausted ({} nodes)\n", s.nodes),
            Status::Proved,
        ),
        TypeOutcome::BudgetExhausted => (
            json!({"kind": "absence", "color": color, "status": "not found within budget", "nodes": s.nodes}),
            format!("no {what} in color {color} found within budget ({} nodes)\n", s.nodes),
            Status::Inconclusive,
        ),
    }
}

fn typeclique(cli: &Cli, a: &TypecliqueArgs) -> Result<Outcome> {
    let ot = OrderType::new(a.pi.clone())?;
    if let Some(k) = a.k {
        if k != ot.k() {
            bail!("--k {k} does not match a permutation of length {} (k = {})", a.pi.len(), ot.k());
        }
    }
    let c = read_edge(&a.file)?;
    let s = find_type_clique(&c, a.color, &ot, &budget_of(cli)?)?;
    let (mut cert, table, status) = type_outcome(&s, &format!("type-{:?} clique", a.pi), a.color);
    cert["pi"] = json!(a.pi);
    Ok(Outcome::new(cert, table, status))
}

fn convex(cli: &Cli, a: &ConvexArgs) -> Result<Outcome> {
    let c = read_edge(&a.file)?;
    let budget = budget_of(cli)?;
    let s = if a.square_path {
        find_square_path_convex(&c, a.color, a.k, &budget)?
    } else {
        find_convex_clique(&c, a.color, a.k, &budget)?
    };
    let what = if a.square_path { "square-path convex sequence" } else { "convex clique" };
    let (mut cert, table, status) = type_outcome(&s, &format!("{what} of order {}", a.k), a.color);
    if a.square_path && cert["kind"] == "clique" {
        cert["kind"] = json!("square-path");
    }
    cert["k"] = json!(a.k);
    Ok(Outcome::new(cert, table, status))
}

fn monosets(a: &MonosetsArgs) -> Result<Outcome> {
    let tc = ColoringFile::read(&a.file)?.triple()?;
    let mut counts: BTreeMap<(usize, Color), u64> = BTreeMap::new();
    let mut listed = Vec::new();
    for (set, color) in enumerate_mono_sets(&tc, a.max_size)? {
        *counts.entry((set.len(), color)).or_default() += 1;
        if listed.len() < a.list {
            listed.push(json!({"color": color, "vertices": set}));
        }
    }
    let mut table = String::from("size color count\n");
    for ((s, c), n) in &counts {
        table += &format!("{s:>4} {c:>5} {n}\n");
    }
    let cert = json!({
        "kind": "mono-sets",
        "max_size": a.max_size,
        "counts": counts.iter().map(|((s, c), n)| json!({"size": s, "color": c, "count": n})).collect::<Vec<_>>(),
        "sets": listed,
    });
    Ok(Outcome::new(cert, table, Status::Done))
}

fn wramsey(a: &WramseyArgs) -> Result<Outcome> {
    let c = read_edge(&a.coloring_path().ok_or_else(|| anyhow!("give a coloring file"))?)?;
    let iv = c.vertices();
    let w = match &a.weights {
        Some(p) => crate::format::read_weight_pair(p, iv, a.c)?,
        None => {
            let mut rng = Rng::new(a.seed);
            let r: Vec<f64> = (0..iv.size()).map(|_| 0.05 + rng.unit() * a.c).collect();
            let b: Vec<f64> = (0..iv.size()).map(|_| 0.05 + rng.unit() * a.c).collect();
            WeightPair::balanced(r, b, a.c)
        }
    };
    if let Some(v) = check_balance(&w) {
        bail!(
            "weights of vertex {} (r = {}, b = {}) break the balance rule: need {}",
            iv.label(v.position),
            v.r,
            v.b,
            v.required
        );
    }
    let res = weighted_ramsey_solve(&c, &w)?;
    let red_ok = res.red_clique.verify(&c)?;
    let blue_ok = res.blue_clique.verify(&c)?;
    let bound = a.c * (iv.size() as f64).ln();
    let holds = res.total >= bound - 1e-9;
    let table = format!(
        "red {:?}\nblue {:?}\ntotal {:.6} >= c ln n = {:.6}: {holds}\n",
        res.red_clique.vertices, res.blue_clique.vertices, res.total, bound
    );
    let cert = json!({
        "kind": "weighted-ramsey",
        "red": res.red_clique.vertices,
        "blue": res.blue_clique.vertices,
        "total": res.total,
        "c": a.c,
        "bound": bound,
        "holds": holds,
        "verified": red_ok && blue_ok,
        "subproblems": res.nodes,
    });
    let status = if holds && red_ok && blue_ok { Status::Done } else { Status::CheckFailed };
    Ok(Outcome::new(cert, table, status).seed(a.seed))
}

fn drc_setup(common: &DrcCommon) -> Result<(BipartiteGraph, DrcParams)> {
    let text = std::fs::read_to_string(&common.file).with_context(|| format!("cannot read {}", common.file.display()))?;
    let f: BipartiteFile = serde_json::from_str(&text).context("bipartite file must be {n1, n2, rows}")?;
    let g = f.to_graph().with_context(|| format!("invalid bipartite file {}", common.file.display()))?;
    let params = DrcParams {
        p: parse_ratio(&common.p)?,
        s: common.s,
        t: common.t,
        m: common.m,
        n1: g.n1() as u64,
        n2: g.n2() as u64,
    };
    Ok((g, params))
}

fn drc_cmd(cli: &Cli, d: &DrcCmd) -> Result<Outcome> {
    let budget = cli.budget.unwrap_or(drc::DEFAULT_ENUMERATION_BUDGET);
    match d {
        DrcCmd::Extract { common, retries } => {
            let (g, params) = drc_setup(common)?;
            let rng = Rng::new(common.seed);
            match drc::drc_extract(&g, &params, &rng, *retries, budget)? {
                Some(o) => {
                    let table = format!(
                        "U = {:?} (|W| = {}, attempt {}); {} subsets checked, min common {:?}, valid {}\n",
                        o.u, o.w.len(), o.attempt, o.certificate.subsets_checked, o.certificate.min_common, o.certificate.valid
                    );
                    let cert = json!({
                        "kind": "drc",
                        "u": o.u,
                        "t": o.t,
                        "w": o.w,
                        "attempt": o.attempt,
                        "subsets_checked": o.certificate.subsets_checked,
                        "min_common": o.certificate.min_common,
                        "valid": o.certificate.valid,
                    });
                    let status = if o.certificate.valid { Status::Proved } else { Status::CheckFailed };
                    Ok(Outcome::new(cert, table, status).seed(common.seed))
                }
                None => {
                    let cert = json!({"kind": "drc", "status": "no success within retries", "retries": retries});
                    let table = format!("no attempt out of {retries} produced a large enough U\n");
                    Ok(Outcome::new(cert, table, Status::Inconclusive).seed(common.seed))
                }
            }
        }
        DrcCmd::Report { common, samples } => {
            let (g, params) = drc_setup(common)?;
            let feasible = drc::drc_feasible(&params)?;
            let r = drc::drc_expectation_report(&g, &params, *samples, &Rng::new(common.seed), budget)?;
            let table = format!(
                "E[X] = {:.6} >= p^t N1 = {:.6}: {}\nE[Y] <= {:.6}; sampled E[X - Y] = {:.4}\nfeasible: {feasible}\n",
                drc::approx(&r.exact),
                drc::approx(&r.jensen),
                r.jensen_holds,
                drc::approx(&r.bad_bound),
                r.mean_x_minus_y()
            );
            let cert = json!({
                "kind": "drc-report",
                "exact_ex": big_ratio_str(&r.exact),
                "jensen": big_ratio_str(&r.jensen),
                "density_at_least_p": r.density_at_least_p,
                "jensen_holds": r.jensen_holds,
                "bad_bound": big_ratio_str(&r.bad_bound),
                "samples": r.samples,
                "mean_x": r.mean_x,
                "mean_y": r.mean_y,
                "feasible": feasible,
            });
            let status = if !r.density_at_least_p || r.jensen_holds { Status::Done } else { Status::CheckFailed };
            Ok(Outcome::new(cert, table, status).seed(common.seed))
        }
    }
}

fn sorted_set(set: &[i64]) -> Vec<i64> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

fn sep(a: &SepArgs) -> Result<Outcome> {
    let s = sorted_set(&a.set);
    let i = VertexInterval::new(a.lo, a.hi)?;
    let pair = find_separated_pair(&s, i)?;
    let ok = check_guarantees(&s, &i, &pair).is_ok();
    let d = ramsey_core::density(&s, &i)?;
    let d1 = ramsey_core::density(&pair.t1, &pair.i1)?;
    let d2 = ramsey_core::density(&pair.t2, &pair.i2)?;
    let table = format!(
        "d_I(S) = {d}\nT1 = {:?} in {} (density {d1})\nT2 = {:?} in {} (density {d2})\nguarantees hold: {ok}\n",
        pair.t1, pair.i1, pair.t2, pair.i2
    );
    let cert = json!({
        "kind": "separated-pair",
        "density": ratio_str(d),
        "t1": pair.t1, "i1": [pair.i1.lo(), pair.i1.hi()], "d1": ratio_str(d1),
        "t2": pair.t2, "i2": [pair.i2.lo(), pair.i2.hi()], "d2": ratio_str(d2),
        "guarantees_hold": ok,
    });
    Ok(Outcome::new(cert, table, if ok { Status::Proved } else { Status::CheckFailed }))
}

fn shrink_cmd(a: &ShrinkArgs) -> Result<Outcome> {
    let s = sorted_set(&a.set);
    let j = VertexInterval::new(a.lo, a.hi)?;
    let (sub, iv) = shrink(&s, j, a.r)?;
    let d = ramsey_core::density(&s, &j)?;
    let d2 = ramsey_core::density(&sub, &iv)?;
    let ok = d2 * 2 >= d;
    let table = format!("S' = {sub:?} in {iv}: density {d2} vs d_J(S) = {d}; at least half: {ok}\n");
    let cert = json!({
        "kind": "shrink",
        "s_prime": sub,
        "window": [iv.lo(), iv.hi()],
        "density": ratio_str(d),
        "window_density": ratio_str(d2),
        "holds": ok,
    });
    Ok(Outcome::new(cert, table, if ok { Status::Proved } else { Status::CheckFailed }))
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Undecided => "undecided",
    }
}

fn cascade(a: &CascadeArgs) -> Result<Outcome> {
    let n = parse_big(&a.n)?;
    let p = parse_ratio(&a.p)?;
    let c = cascade_params(a.k, a.q, &n, p)?;
    let mut table = format!("k = {}, q = {}, n = {}, p = {}, t in [{}, {}]\n", c.k, c.q, a.n, c.p, c.t_floor, c.t_ceil);
    table += &format!("Delta = {}\nGamma = {}\n", c.big_delta[c.q as usize], c.big_gamma[c.q as usize]);
    table += "closed-form identities:\n";
    for id in &c.identities {
        table += &format!("  {:<5} {}\n", id.holds, id.name);
    }
    table += "inequalities (log2 lhs/rhs bracket):\n";
    for l in &c.links {
        table += &format!(
            "  {:<9} {} [{:.4}, {:.4}]\n",
            verdict_str(l.verdict),
            l.name,
            drc::approx(&l.margin.lo),
            drc::approx(&l.margin.hi)
        );
    }
    let all = c.all_identities_hold();
    let cert = json!({
        "kind": "cascade",
        "k": c.k, "q": c.q, "n": c.n.to_string(), "p": ratio_str(c.p),
        "t": [c.t_floor, c.t_ceil],
        "delta_i": c.delta.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "beta_i": c.beta.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "eta_i": c.eta.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "gamma_i": c.gamma.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "big_delta": c.big_delta.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "big_gamma": c.big_gamma.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "identities": c.identities.iter().map(|i| json!({"name": i.name, "holds": i.holds})).collect::<Vec<_>>(),
        "links": c.links.iter().map(|l| json!({
            "name": l.name,
            "verdict": verdict_str(l.verdict),
            "log2_margin": [big_ratio_str(&l.margin.lo), big_ratio_str(&l.margin.hi)],
        })).collect::<Vec<_>>(),
        "all_identities_hold": all,
    });
    Ok(Outcome::new(cert, table, if all { Status::Proved } else { Status::CheckFailed }))
}

fn rpi(cli: &Cli, a: &RpiArgs) -> Result<Outcome> {
    let pi = if a.pi.is_empty() && a.k == 2 { OrderType::new(vec![1])? } else { OrderType::new(a.pi.clone())? };
    let order = match a.order {
        OrderName::Forward => EnumerationOrder::Forward,
        OrderName::Backward => EnumerationOrder::Backward,
    };
    let limit = cli.budget.unwrap_or(u64::MAX);
    let threads = cli.threads.max(1) as u64;
    let report = compute_r_pi_with(a.k, a.q, &pi, a.n_max, |n| {
        if threads == 1 {
            return decide(n, a.q, &pi, order, limit, Shard::WHOLE);
        }
        let depth = (n * (n - 1) / 2).min(8);
        let shards = (0..threads).map(|i| Shard::new(i, threads, depth)).collect::<ramsey_core::Result<Vec<_>>>()?;
        let runs = par_map(cli.threads, &shards, |s| decide(n, a.q, &pi, order, limit, *s))
            .into_iter()
            .collect::<ramsey_core::Result<Vec<_>>>()?;
        Ok(merge_shards(runs))
    })?;
    let decided: Vec<Value> = report.decided.iter().map(|(n, av)| json!({"n": n, "avoidable": av})).collect();
    let mut table = String::new();
    for (n, av) in &report.decided {
        table += &format!("n = {n:>2}: {}\n", if *av { "avoidable" } else { "unavoidable" });
    }
    let (result, status) = match &report.result {
        RpiResult::Exact { value, witness } => {
            table += &format!("R = {value}\n");
            (json!({"exact": value, "witness": witness.as_ref().map(coloring_json)}), Status::Proved)
        }
        RpiResult::LowerBound { exceeds, witness } => {
            table += &format!("R > {exceeds}\n");
            let w = coloring_json(witness);
            (json!({"exceeds": exceeds, "witness": w}), Status::Proved)
        }
        RpiResult::Inconclusive { n, best_lower } => {
            table += &format!("undecided at n = {n} within budget; R > {best_lower}\n");
            (json!({"inconclusive_at": n, "exceeds": best_lower}), Status::Inconclusive)
        }
    };
    let cert = json!({
        "kind": "r-pi",
        "k": a.k, "q": a.q, "pi": pi.pi(), "n_max": a.n_max,
        "order": format!("{order:?}").to_lowercase(),
        "decided": decided,
        "result": result,
    });
    Ok(Outcome::new(cert, table, status))
}

fn fexact(cli: &Cli, a: &FexactArgs) -> Result<Outcome> {
    let spec = WeightSpec::parse(&a.weights)?;
    let traversal = match a.traversal {
        TraversalName::Lex => Traversal::Lexicographic,
        TraversalName::Shuffled => Traversal::Shuffled { seed: a.seed },
    };
    let r = f_exact(a.n, &spec, a.q, traversal, cli.budget.unwrap_or(DEFAULT_FEXACT_BUDGET))?;
    let table = format!(
        "f({}) = {:.12} over {} canonical colorings; heaviest clique {:?}\n",
        a.n, r.value, r.colorings, r.heaviest
    );
    let cert = json!({
        "kind": "f-exact",
        "n": a.n, "q": a.q, "weights": spec.name(),
        "value": r.value,
        "witness": coloring_json(&r.witness),
        "heaviest": r.heaviest,
        "colorings": r.colorings,
    });
    Ok(Outcome::new(cert, table, Status::Proved).seed(a.seed))
}

fn weight(a: &WeightArgs) -> Result<Outcome> {
    let spec = WeightSpec::parse(&a.weights)?;
    let s = sorted_set(&a.set);
    let w = spec.weight(&s)?;
    let exact = spec.exact_w1(&s).map(|r| r.to_string());
    let table = match &exact {
        Some(e) => format!("{} weight {w:.12} (exactly {e})\n", spec.name()),
        None => format!("{} weight {w:.12}\n", spec.name()),
    };
    let cert = json!({"kind": "weight", "weights": spec.name(), "set": s, "weight": w, "exact": exact});
    Ok(Outcome::new(cert, table, Status::Done))
}

fn verify_table(what: &str, r: &VerifyReport) -> String {
    let mut t = format!("{what} on n = {}\n", r.n);
    for (s, c) in &r.inspected {
        t += &format!("  size {s}: {c} inspected\n");
    }
    t += &format!("violations: {}\n", r.violations.len());
    t
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    if let Some(path) = &a.certificate {
        return verify_certificate(path);
    }
    let (what, report) = match a.check.as_ref().ok_or_else(|| anyhow!("verify needs a check or --certificate"))? {
        VerifyCheck::MonotoneDiff { n, max_size } => ("monotone-diff", verify_monotone_diff_counterexample(*n, *max_size)?),
        VerifyCheck::SecondDiff { n } => ("second-diff", verify_second_diff_counterexample(*n)?),
        VerifyCheck::Blocks { blocks, seeds, seed, max_size, inner: i } => {
            let spec = BlockSpec { block_sizes: blocks.clone(), inner_colorer: inner(*i), seed: *seed };
            let total: usize = blocks.iter().sum();
            ("blocks", verify_block_structure(&spec, max_size.unwrap_or(total), *seeds)?)
        }
    };
    let ok = report.violations.is_empty();
    let cert = json!({"kind": "verification", "check": what, "report": report_json(&report), "holds": ok});
    Ok(Outcome::new(cert, verify_table(what, &report), if ok { Status::Proved } else { Status::CheckFailed }))
}

/// Direct checks of clique-like claims against the recorded input.
fn check_claims(cert: &Value) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let kind = cert["kind"].as_str().unwrap_or_default();
    let claims: Vec<&Value> = match kind {
        "clique" | "square-path" => vec![cert],
        "cliques" => cert["cliques"].as_array().map(|v| v.iter().collect()).unwrap_or_default(),
        _ => return Ok(problems),
    };
    let input = cert["inputs"]
        .as_object()
        .and_then(|m| m.keys().next())
        .ok_or_else(|| anyhow!("clique certificate names no input coloring"))?;
    let c = read_edge(Path::new(input))?;
    for claim in claims {
        let vertices: Vec<i64> = serde_json::from_value(claim["vertices"].clone()).context("bad vertex list")?;
        let color: Color = serde_json::from_value(claim["color"].clone()).context("bad color")?;
        let ok = if claim["kind"] == "square-path" {
            is_square_path_convex(&c, color, &vertices)?
        } else {
            Clique::new(vertices.clone(), color).verify(&c)?
        };
        if !ok {
            problems.push(format!("{vertices:?} is not monochromatic in color {color}"));
        }
        if let Some(r) = claim.get("diff_ranks").filter(|v| !v.is_null()) {
            let ranks: Vec<usize> = serde_json::from_value(r.clone()).context("bad diff_ranks")?;
            if !OrderType::new(ranks)?.inverse().accepts(&vertices) {
                problems.push(format!("{vertices:?} does not have the recorded difference ranks"));
            }
        }
    }
    Ok(problems)
}

fn verify_certificate(path: &Path) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let cert: Value = serde_json::from_str(&text).context("certificate is not valid JSON")?;
    let args: Vec<String> = serde_json::from_value(cert["args"].clone()).context("certificate has no args list")?;
    let recorded: BTreeMap<String, String> =
        serde_json::from_value(cert["inputs"].clone()).context("certificate has no inputs map")?;
    let mut problems = Vec::new();
    for (p, h) in &recorded {
        let now = hash_file(Path::new(p))?;
        if &now != h {
            problems.push(format!("input {p} changed: sha256 {now}, recorded {h}"));
        }
    }
    problems.extend(check_claims(&cert)?);
    let argv: Vec<String> = std::iter::once("ramsey-lab".to_string()).chain(args.iter().cloned()).collect();
    let cli = Cli::try_parse_from(&argv).map_err(|e| anyhow!("recorded args do not parse: {e}"))?;
    if matches!(cli.cmd, Cmd::Verify(VerifyArgs { certificate: Some(_), .. }) | Cmd::Gen(_)) {
        bail!("{} is not a re-runnable certificate", path.display());
    }
    let rerun = execute(&cli, &args)?;
    let same = canonical(&rerun.certificate) == canonical(&cert);
    if !same {
        problems.push("re-running the recorded command gives a different certificate".into());
    }
    let ok = problems.is_empty();
    let mut table = format!("certificate {}: {}\n", path.display(), if ok { "verified" } else { "FAILED" });
    for p in &problems {
        table += &format!("  {p}\n");
    }
    let out = json!({
        "kind": "certificate-check",
        "certificate_sha256": sha256_hex(text.trim_end().as_bytes()),
        "problems": problems,
        "verified": ok,
    });
    Ok(Outcome::new(out, table, if ok { Status::Proved } else { Status::CheckFailed }))
}

/// Exit code for an error: 3 for budget errors from the core, 2 otherwise.
pub fn exit_code_for(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if let Some(ramsey_core::Error::Budget { .. }) = cause.downcast_ref::<ramsey_core::Error>() {
            return EXIT_INCONCLUSIVE;
        }
    }
    EXIT_DOMAIN
}

pub fn exit_code_for_status(status: Status, require_proof: bool) -> i32 {
    match status {
        Status::Done | Status::Proved => EXIT_OK,
        Status::Unproved if require_proof => EXIT_INCONCLUSIVE,
        Status::Unproved => EXIT_OK,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
        Status::CheckFailed => EXIT_CHECK_FAILED,
    }
}

fn manifest_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Parses `argv`, runs the command, writes artifacts and returns the exit
/// code.
pub fn dispatch(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let clock = RunClock::start();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { write!(stdout, "{rendered}") } else { write!(stderr, "{rendered}") };
            return code;
        }
    };
    let recorded = recorded_args(argv, cli.budget);
    let result = execute(&cli, &recorded).and_then(|out| {
        let cert = canonical(&out.certificate);
        let bytes = out.artifact.clone().unwrap_or_else(|| cert.clone().into_bytes());
        let inputs = hashes(&input_paths(&cli.cmd))?;
        let mut manifest = serde_json::to_value(clock.finish(argv.to_vec(), out.seed, inputs, &bytes))?;
        if let Some(m) = &out.metadata {
            manifest["metadata"] = m.clone();
        }
        match &cli.output {
            Some(path) => {
                std::fs::write(path, &bytes).with_context(|| format!("cannot write {}", path.display()))?;
                std::fs::write(manifest_path(path), canonical(&manifest))
                    .with_context(|| format!("cannot write manifest for {}", path.display()))?;
            }
            None => writeln!(stderr, "manifest {}", canonical(&manifest))?,
        }
        if cli.json {
            if out.artifact.is_none() || cli.output.is_none() {
                stdout.write_all(&bytes)?;
                writeln!(stdout)?;
            }
        } else {
            write!(stdout, "{}", out.table)?;
            if out.artifact.is_some() && cli.output.is_none() {
                stdout.write_all(&bytes)?;
                writeln!(stdout)?;
            }
        }
        Ok(out.status)
    });
    match result {
        Ok(status) => exit_code_for_status(status, cli.require_proof),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            exit_code_for(&e)
        }
    }
}
