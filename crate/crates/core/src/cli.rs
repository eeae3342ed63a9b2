//! Command-line frontend. Every run prints one JSON document holding the
//! result and a manifest that pins down how it was produced.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bounds::{self, tower, Power};
use crate::composition::{self, TreePartitionScheme};
use crate::decomposition::{self, genus, layered};
use crate::embedding::{LayeredPlanarGraph, OuterplaneGraph, RotationSystem};
use crate::error::{Budget, HatError, Result};
use crate::extremal;
use crate::game::{self, ColorLists, HatAssignment, StrategyProfile};
use crate::generate;
use crate::graph::{Graph, VertexPartition};

#[derive(Debug, Parser)]
#[command(name = "hatguess", version, about = "Hat guessing number workbench")]
pub struct Cli {
    /// Indented JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Search node cap (env HATGUESS_MAX_NODES).
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,
    /// Wall-clock cap in seconds (env HATGUESS_MAX_SECS).
    #[arg(long, global = true)]
    pub max_secs: Option<u64>,
    /// Worker cap; searches run on one thread.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact hat guessing number, or the game outcome at one color count.
    Solve(SolveArgs),
    #[command(subcommand)]
    Verify(VerifyCommand),
    #[command(subcommand)]
    Adversary(AdversaryCommand),
    /// Constructive vertex partitions.
    Decompose(DecomposeArgs),
    /// Exact evaluation of the bound formulas.
    Bound(BoundArgs),
    #[command(subcommand)]
    Extremal(ExtremalCommand),
    /// Named families and seeded random instances.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Graph6,
    Json,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph as a graph6 string.
    #[arg(long, conflicts_with = "input")]
    pub graph6: Option<String>,
    /// Input file, `-` for stdin.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Input file format; detected from the first byte when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Largest color count tried by the exact search.
    #[arg(long, default_value_t = 8)]
    pub cap: u32,
    /// Decide the game at this color count instead.
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Debug, Args)]
pub struct GameInput {
    #[command(flatten)]
    pub graph: GraphInput,
    /// Strategy profile JSON.
    #[arg(long)]
    pub strategy: Option<PathBuf>,
    /// Color lists JSON; uniform lists `1..=k` otherwise.
    #[arg(long)]
    pub lists: Option<PathBuf>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Seed for a random strategy when no strategy file is given.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Whether a strategy wins against every assignment.
    Strategy(GameInput),
    /// Whether an assignment defeats a strategy.
    Adversary {
        #[command(flatten)]
        game: GameInput,
        #[arg(long)]
        assignment: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum AdversaryCommand {
    /// Two-part construction on a split `A ∪ B`.
    Lemma22 {
        #[command(flatten)]
        game: GameInput,
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
    },
    /// Tree-partition construction.
    Theorem25 {
        #[command(flatten)]
        game: GameInput,
        /// Vertex partition JSON.
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 0)]
        designated: usize,
        #[arg(long)]
        pad: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Petunia,
    Outerplanar,
    Layered,
    GenusPeel,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(value_enum)]
    pub method: Method,
    #[command(flatten)]
    pub graph: GraphInput,
    /// Oriented root edge for the outerplanar split.
    #[arg(long, value_delimiter = ',')]
    pub root: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// One of 2.5, 3.1, 3.4, 4.2, 5.2.
    #[arg(long)]
    pub theorem: String,
    #[arg(long, default_value_t = 1)]
    pub s: u64,
    #[arg(long, default_value_t = 1)]
    pub g: u32,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub l: Option<u64>,
    /// Report a certified upper bound on log2 of the value.
    #[arg(long)]
    pub log2: bool,
    /// Check the estimate inequalities for every s up to this value.
    #[arg(long)]
    pub appendix: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum ExtremalCommand {
    /// Exact extremal number by search.
    Ex {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        unpruned: bool,
    },
    /// Density threshold `3 n^(r - 1/l^(r-1))`.
    Threshold {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Zarankiewicz bound.
    Kst {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    Clique,
    Star,
    Petal,
    Tree,
    Petunia,
    Outerplanar,
    MaximalOuterplanar,
    Layered,
    PlanarRotation,
    ToroidalGrid,
    ToroidalK5,
    ToroidalK33,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Required for random families.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Level sizes for layered instances.
    #[arg(long, value_delimiter = ',')]
    pub levels: Option<Vec<usize>>,
    /// Output plain graphs as graph6.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Vec<String>,
    pub input_digests: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub max_nodes: u64,
    pub max_secs: Option<u64>,
    pub tool_version: String,
    pub outcome_digest: String,
}

/// Exit code with the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Accepts either a bare document or a full run output, whose `result` is used.
fn unwrap_envelope(text: String) -> String {
    if let Ok(Value::Object(mut m)) = serde_json::from_str::<Value>(&text) {
        if m.contains_key("manifest") {
            if let Some(r) = m.remove("result") {
                return r.to_string();
            }
        }
    }
    text
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Ctx {
    budget: Budget,
    inputs: Vec<(String, String)>,
    seed: Option<u64>,
}

impl Ctx {
    fn read(&mut self, path: &PathBuf) -> Result<String> {
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| HatError::Input(e.to_string()))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| HatError::Input(format!("{}: {e}", path.display())))?
        };
        self.inputs.push((path.display().to_string(), digest(text.as_bytes())));
        Ok(unwrap_envelope(text))
    }

    fn json<T: serde::de::DeserializeOwned>(&mut self, path: &PathBuf) -> Result<T> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| HatError::Input(format!("{}: {e}", path.display())))
    }

    fn text(&mut self, input: &GraphInput) -> Result<(String, Format)> {
        if let Some(g6) = &input.graph6 {
            self.inputs.push(("graph6".into(), digest(g6.as_bytes())));
            return Ok((g6.clone(), Format::Graph6));
        }
        let path = input.input.as_ref().ok_or_else(|| HatError::Input("give --graph6 or --input".into()))?;
        let text = self.read(path)?;
        let format = input.format.unwrap_or(if text.trim_start().starts_with('{') { Format::Json } else { Format::Graph6 });
        Ok((text, format))
    }

    fn graph(&mut self, input: &GraphInput) -> Result<Graph> {
        let (text, format) = self.text(input)?;
        match format {
            Format::Graph6 => Graph::parse_graph6(text.trim()),
            Format::Json => {
                let v: Value = serde_json::from_str(&text).map_err(|e| HatError::Input(e.to_string()))?;
                match v.get("graph6").and_then(Value::as_str) {
                    Some(g6) => Graph::parse_graph6(g6),
                    None => serde_json::from_value(v).map_err(|e| HatError::Input(e.to_string())),
                }
            }
        }
    }

    fn document<T: serde::de::DeserializeOwned>(&mut self, input: &GraphInput) -> Result<T> {
        let (text, _) = self.text(input)?;
        serde_json::from_str(&text).map_err(|e| HatError::Input(e.to_string()))
    }

    fn game(&mut self, game: &GameInput) -> Result<(Graph, ColorLists, StrategyProfile)> {
        let g = self.graph(&game.graph)?;
        let lists = match (&game.lists, game.k) {
            (Some(p), _) => self.json(p)?,
            (None, Some(k)) => ColorLists::uniform(g.vertex_count(), k),
            (None, None) => return Err(HatError::Input("give --lists or --k".into())),
        };
        let strat = match (&game.strategy, game.seed) {
            (Some(p), _) => self.json(p)?,
            (None, Some(seed)) => {
                self.seed = Some(seed);
                game::random_strategy(&g, &lists, game.s, &mut generate::rng(seed))
            }
            (None, None) => return Err(HatError::Input("give --strategy or --seed".into())),
        };
        Ok((g, lists, strat))
    }
}

fn budget_from(cli: &Cli) -> Result<Budget> {
    let env = |key: &str| -> Result<Option<u64>> {
        match std::env::var(key) {
            Ok(v) => v.parse().map(Some).map_err(|_| HatError::Input(format!("{key} is not an integer"))),
            Err(_) => Ok(None),
        }
    };
    let nodes = match cli.max_nodes {
        Some(n) => n,
        None => env("HATGUESS_MAX_NODES")?.unwrap_or(Budget::DEFAULT_NODES),
    };
    let secs = match cli.max_secs {
        Some(s) => s,
        None => env("HATGUESS_MAX_SECS")?.unwrap_or(Budget::DEFAULT_SECS),
    };
    Ok(Budget::new(nodes, Some(Duration::from_secs(secs))))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn log2_of_power(p: &Power) -> Value {
    let ub = BigRational::from_integer(BigInt::from(p.exponent().clone()))
        * tower::log2_ub(&BigRational::from_integer(BigInt::from(p.base().clone())));
    let ceil = ub.ceil().to_integer();
    json!({ "log2_upper": ub.to_string(), "log2_upper_ceil": ceil.to_string() })
}

fn power_value(p: &Power, log2: bool) -> Value {
    let mut v = json!({ "value": p.to_string(), "base": p.base().to_string(), "exponent": p.exponent().to_string() });
    if let Some(x) = p.to_biguint(4096) {
        v["integer"] = json!(x.to_string());
    }
    if log2 {
        v["log2"] = log2_of_power(p);
    }
    v
}

fn run_bound(a: &BoundArgs) -> Result<Value> {
    if let Some(max) = a.appendix {
        let report = bounds::verify_appendix_inequalities(max)?;
        if !report.all_hold() {
            return Err(HatError::claim("appendix estimate fails", serde_json::to_string(&report).unwrap()));
        }
        return Ok(to_value(&report));
    }
    match a.theorem.as_str() {
        "2.5" => {
            let (r, l) = a.r.zip(a.l).ok_or_else(|| HatError::Input("theorem 2.5 needs --r and --l".into()))?;
            Ok(power_value(&composition::theorem25_bound(r, l)?, a.log2))
        }
        "3.1" => Ok(power_value(&bounds::petunia_bound(a.s), a.log2)),
        "3.4" => Ok(power_value(&bounds::outerplanar_bound(a.s), a.log2)),
        "4.2" => {
            let chain = bounds::layered_chain(a.s)?;
            if let Some(e) = chain.entries.iter().find(|e| !e.holds) {
                return Err(HatError::claim("layered chain bound fails", format!("{} at s = {}", e.name, a.s)));
            }
            Ok(to_value(&chain))
        }
        "5.2" => {
            let s_prime = bounds::genus_bound_param(a.g, a.s);
            let mut v = json!({ "g": a.g, "s": a.s, "s_prime": s_prime.to_string() });
            if let Some(sp) = s_prime.to_u64() {
                v["planar_chain"] = to_value(&bounds::layered_chain(sp)?);
            }
            Ok(v)
        }
        other => Err(HatError::Input(format!("unknown theorem {other}"))),
    }
}

fn run_generate(a: &GenerateArgs, ctx: &mut Ctx) -> Result<Value> {
    let random = matches!(
        a.family,
        Family::Tree
            | Family::Petunia
            | Family::Outerplanar
            | Family::MaximalOuterplanar
            | Family::Layered
            | Family::PlanarRotation
    );
    let mut r = if random {
        let seed = a.seed.ok_or_else(|| HatError::Input("random families need --seed".into()))?;
        ctx.seed = Some(seed);
        generate::rng(seed)
    } else {
        generate::rng(0)
    };
    let graph_out = |g: Graph| -> Value {
        match a.format {
            Format::Graph6 => json!({ "graph6": g.to_graph6() }),
            Format::Json => to_value(&g),
        }
    };
    Ok(match a.family {
        Family::Path => graph_out(generate::path(a.n)?),
        Family::Cycle => graph_out(generate::cycle(a.n)?),
        Family::Clique => graph_out(generate::clique(a.n)?),
        Family::Star => graph_out(generate::star(a.n)?),
        Family::Petal => graph_out(generate::petal(a.n)?),
        Family::Tree => graph_out(generate::random_tree(a.n, &mut r)?),
        Family::Petunia => graph_out(generate::random_petunia(a.n, 0.8, &mut r)?),
        Family::Outerplanar => to_value(&generate::random_outerplanar(a.n, 0.4, &mut r)?),
        Family::MaximalOuterplanar => to_value(&generate::random_maximal_outerplanar(a.n, &mut r)?),
        Family::Layered => {
            let sizes = a.levels.clone().unwrap_or_else(|| vec![a.n, a.n.saturating_sub(2).max(3)]);
            to_value(&generate::random_layered(&sizes, 0.4, 0.85, &mut r)?)
        }
        Family::PlanarRotation => to_value(&generate::random_planar_rotation(a.n, &mut r)?),
        Family::ToroidalGrid => to_value(&generate::toroidal_grid()?),
        Family::ToroidalK5 => to_value(&generate::toroidal_k5()?),
        Family::ToroidalK33 => to_value(&generate::toroidal_k33()?),
    })
}

fn run_decompose(a: &DecomposeArgs, ctx: &mut Ctx) -> Result<Value> {
    match a.method {
        Method::Petunia => {
            let g = ctx.graph(&a.graph)?;
            let cert = decomposition::is_petunia(&g).ok_or_else(|| HatError::precondition("graph is not a petunia"))?;
            let partition = decomposition::petunia_forest_partition(&g, &cert)?;
            Ok(json!({ "certificate": to_value(&cert), "partition": to_value(&partition) }))
        }
        Method::Outerplanar => {
            let og: OuterplaneGraph = ctx.document(&a.graph)?;
            let root = match &a.root {
                Some(r) if r.len() == 2 => (r[0], r[1]),
                Some(_) => return Err(HatError::Input("--root takes two vertices".into())),
                None => {
                    let b = og.blocks.first().ok_or_else(|| HatError::Input("empty outerplane graph".into()))?;
                    if b.boundary.len() < 2 {
                        return Err(HatError::Input("first block has no edge".into()));
                    }
                    (b.boundary[0], b.boundary[1])
                }
            };
            Ok(to_value(&decomposition::outerplanar_split(&og, root)?))
        }
        Method::Layered => {
            let lp: LayeredPlanarGraph = ctx.document(&a.graph)?;
            let (coloring, report) = layered::layered_five_coloring(&lp)?;
            Ok(json!({ "coloring": to_value(&coloring), "report": to_value(&report) }))
        }
        Method::GenusPeel => {
            let rs: RotationSystem = ctx.document(&a.graph)?;
            Ok(to_value(&genus::genus_peel(&rs, ctx.budget)?))
        }
    }
}

fn run_command(cli: &Cli, ctx: &mut Ctx) -> Result<Value> {
    match &cli.command {
        Command::Solve(a) => {
            let g = ctx.graph(&a.graph)?;
            match a.k {
                Some(k) => {
                    let lists = ColorLists::uniform(g.vertex_count(), k);
                    let out = game::players_win(&g, &lists, a.s, ctx.budget)?;
                    Ok(json!({ "k": k, "s": a.s, "players_win": out.wins(), "outcome": to_value(&out) }))
                }
                None => {
                    let hg = game::hg_exact(&g, a.s, a.cap, ctx.budget)?;
                    Ok(json!({ "hg": hg, "s": a.s, "cap": a.cap, "reached_cap": hg == a.cap }))
                }
            }
        }
        Command::Verify(VerifyCommand::Strategy(game_in)) => {
            let (g, lists, strat) = ctx.game(game_in)?;
            Ok(to_value(&game::verify_strategy(&g, &lists, &strat, ctx.budget)?))
        }
        Command::Verify(VerifyCommand::Adversary { game: game_in, assignment }) => {
            let (g, lists, strat) = ctx.game(game_in)?;
            strat.check(&g, &lists)?;
            let a: HatAssignment = ctx.json(assignment)?;
            if a.colors.len() != g.vertex_count() || !a.respects(&lists) {
                return Err(HatError::contract("assignment does not respect the lists"));
            }
            Ok(json!({ "defeats": !strat.wins_on(&g, &lists, &a) }))
        }
        Command::Adversary(AdversaryCommand::Lemma22 { game: game_in, a, b }) => {
            let k = game_in.k.ok_or_else(|| HatError::Input("lemma22 needs --k".into()))?;
            let (g, _, strat) = ctx.game(game_in)?;
            Ok(to_value(&composition::lemma22_adversary(&g, a, b, &strat, k, ctx.budget)?))
        }
        Command::Adversary(AdversaryCommand::Theorem25 { game: game_in, partition, r, l, designated, pad }) => {
            let (g, lists, strat) = ctx.game(game_in)?;
            let partition: VertexPartition = ctx.json(partition)?;
            let scheme = TreePartitionScheme { partition, r: *r, l: *l, s: strat.s };
            Ok(to_value(&composition::theorem25_adversary(&g, &scheme, *designated, &strat, &lists, *pad, ctx.budget)?))
        }
        Command::Decompose(a) => run_decompose(a, ctx),
        Command::Bound(a) => run_bound(a),
        Command::Extremal(ExtremalCommand::Ex { r, n, l, unpruned }) => {
            Ok(to_value(&extremal::ex_exact(*r, *n, *l, !unpruned, ctx.budget)?))
        }
        Command::Extremal(ExtremalCommand::Threshold { r, n, l, m }) => {
            let t = extremal::erdos_threshold(*r, *n, *l)?;
            let mut v = json!({ "r": r, "n": n, "l": l, "ceiling": t.ceiling() });
            if let Some(m) = m {
                v["met_by_m"] = json!(t.is_met_by(*m));
            }
            Ok(v)
        }
        Command::Extremal(ExtremalCommand::Kst { n, l, m }) => {
            let kst = extremal::kst_bound(*n, *l)?;
            let (mut lo, mut hi) = (0u64, (*n as u64) * (*n as u64));
            while lo < hi {
                let mid = lo + (hi - lo).div_ceil(2);
                if kst.compare(mid) == std::cmp::Ordering::Greater {
                    hi = mid - 1;
                } else {
                    lo = mid;
                }
            }
            let max = lo;
            let mut v = json!({ "n": n, "l": l, "max_edges_allowed": max });
            if let Some(m) = m {
                v["m_vs_bound"] = json!(format!("{:?}", kst.compare(*m)).to_lowercase());
            }
            Ok(v)
        }
        Command::Generate(a) => run_generate(a, ctx),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Solve(_) => "solve",
        Command::Verify(VerifyCommand::Strategy(_)) => "verify strategy",
        Command::Verify(VerifyCommand::Adversary { .. }) => "verify adversary",
        Command::Adversary(AdversaryCommand::Lemma22 { .. }) => "adversary lemma22",
        Command::Adversary(AdversaryCommand::Theorem25 { .. }) => "adversary theorem25",
        Command::Decompose(_) => "decompose",
        Command::Bound(_) => "bound",
        Command::Extremal(_) => "extremal",
        Command::Generate(_) => "generate",
    }
}

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let fail = |e: HatError| CliOutput { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") };
    let budget = match budget_from(&cli) {
        Ok(b) => b,
        Err(e) => return fail(e),
    };
    let mut ctx = Ctx { budget, inputs: Vec::new(), seed: None };
    let result = match run_command(&cli, &mut ctx) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let manifest = RunManifest {
        command: command_name(&cli.command).into(),
        parameters: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        input_digests: ctx.inputs,
        seed: ctx.seed,
        max_nodes: budget.max_nodes,
        max_secs: budget.max_time.map(|d| d.as_secs()),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        outcome_digest: digest(result.to_string().as_bytes()),
    };
    let doc = json!({ "result": result, "manifest": to_value(&manifest) });
    let stdout = if cli.pretty { serde_json::to_string_pretty(&doc) } else { serde_json::to_string(&doc) }.unwrap() + "\n";
    CliOutput { code: 0, stdout, stderr: String::new() }
}
