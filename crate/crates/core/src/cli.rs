//! The `reslin` command line.
//!
//! Every subcommand prints a report of `key=value` lines on standard output
//! (except `gen` and `fmt` writing to standard output, which print the
//! artifact itself). Exit codes: 0 when the property holds or the input
//! verifies, 1 when it fails or is rejected, 2 on usage, input or budget
//! errors. `RESLIN_BUDGET` overrides the default search budgets.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::extend::{
    build_canonical_strategy, check_extensibility, check_winning_strategy, exact_width, parse_xws, write_xws, ExtendError,
    ExtendOptions, WidthLimits, DEFAULT_NODE_BUDGET,
};
use crate::formula::{generate, parse_graph, parse_xlcnf, write_graph, write_xlcnf, Family, GraphInput, LinCnf};
use crate::games::{
    run_game, FinalStatus, GameError, GameOptions, InteractiveProver, Prover, RandomProver, ScriptedProver, SweepProver,
};
use crate::gf2::LinSystem;
use crate::oracle::{
    min_split_tree, parse_split_tree, split_tree_to_proof, write_split_tree, OracleError, OracleOptions, TreeProver,
};
use crate::proofcheck::{
    desugar_space_script, parse_xlp, parse_xls, verify_space_script, verify_tree_proof, write_xlp, write_xls,
};

pub const BUDGET_ENV: &str = "RESLIN_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "reslin", version, about = "Workbench for resolution over F2-linear equations")]
pub struct Cli {
    /// Seed for randomized provers.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the exhaustive checks.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a formula family as XLCNF.
    Gen(GenArgs),
    /// Verify a tree-like proof (-p) or a space script (-s).
    Verify(VerifyArgs),
    /// Exact width by width-bounded saturation.
    Width(WidthArgs),
    /// Check m-extensibility with respect to a clause subset.
    Extend(ExtendArgs),
    /// Check or build k-winning strategies.
    Strategy(StrategyArgs),
    /// Play Prover-Delayer games against the extensibility Delayer.
    Game(GameArgs),
    /// Minimal splitting trees and their conversion to proofs.
    Oracle(OracleArgs),
    /// Validate a file and print it in canonical form.
    Fmt(FmtArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: GenFamily,
    /// Output file (standard output when omitted).
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenFamily {
    Php {
        #[arg(long)]
        pigeons: usize,
        #[arg(long)]
        holes: usize,
    },
    /// Functional pigeonhole principle on a bipartite graph file.
    Fphp {
        #[arg(long)]
        graph: PathBuf,
    },
    Ordering {
        #[arg(long)]
        n: usize,
    },
    Dlo {
        #[arg(long)]
        n: usize,
    },
    /// Graph ordering principle on a graph file.
    Gop {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct FormulaArg {
    /// Formula in XLCNF (`-` for standard input).
    #[arg(short = 'f', long = "formula")]
    pub formula: PathBuf,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
pub struct SubsetArg {
    /// Comma-separated clause labels forming F.
    #[arg(long)]
    pub family: Option<String>,
    /// Comma-separated 1-based clause indices forming F.
    #[arg(long)]
    pub indices: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub cnf: FormulaArg,
    /// Tree-like proof in XLP.
    #[arg(short = 'p', long, conflicts_with = "script", required_unless_present = "script")]
    pub proof: Option<PathBuf>,
    /// Space script in XLS.
    #[arg(short = 's', long)]
    pub script: Option<PathBuf>,
    /// Write the script with every semantic weakening expanded into syntactic steps.
    #[arg(long, requires = "script")]
    pub desugar: Option<PathBuf>,
    /// Write the space script of a tree-like proof.
    #[arg(long, requires = "proof")]
    pub to_space: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WidthArgs {
    #[command(flatten)]
    pub cnf: FormulaArg,
    #[arg(long, default_value_t = 3)]
    pub kmax: usize,
    #[arg(long, default_value_t = WidthLimits::default().max_vars)]
    pub max_vars: usize,
}

#[derive(Args, Debug)]
pub struct ExtendArgs {
    #[command(flatten)]
    pub cnf: FormulaArg,
    #[command(flatten)]
    pub subset: SubsetArg,
    #[arg(long)]
    pub m: usize,
    /// Node budget of each F-proper search.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = ExtendOptions::default().max_systems)]
    pub max_systems: u64,
}

#[derive(Args, Debug)]
pub struct StrategyArgs {
    #[arg(value_enum)]
    pub action: StrategyAction,
    #[command(flatten)]
    pub cnf: FormulaArg,
    #[arg(long)]
    pub k: usize,
    /// Strategy family in xws format (check) or output file (build).
    #[arg(short = 'H', long = "family-file")]
    pub family_file: Option<PathBuf>,
    #[arg(long, default_value_t = WidthLimits::default().max_vars)]
    pub max_vars: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StrategyAction {
    Check,
    Build,
}

#[derive(Args, Debug)]
pub struct GameArgs {
    #[command(flatten)]
    pub cnf: FormulaArg,
    #[command(flatten)]
    pub subset: SubsetArg,
    #[arg(long, value_enum, default_value_t = ProverKind::Random)]
    pub prover: ProverKind,
    /// Number of games; game i uses seed `seed + i`.
    #[arg(long, default_value_t = 1)]
    pub games: u64,
    /// Prover script (scripted prover).
    #[arg(long)]
    pub script: Option<PathBuf>,
    /// Splitting tree (tree prover).
    #[arg(long)]
    pub tree: Option<PathBuf>,
    #[arg(long)]
    pub max_rounds: Option<usize>,
    /// Write the transcript of the last game in scripted-prover format.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
    /// Exit with 1 when some game ends with fewer coins.
    #[arg(long)]
    pub min_coins: Option<usize>,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProverKind {
    Random,
    Sweep,
    Scripted,
    Interactive,
    Tree,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(value_enum)]
    pub action: OracleAction,
    #[command(flatten)]
    pub cnf: FormulaArg,
    /// Splitting tree to convert (to-proof).
    #[arg(short = 't', long)]
    pub tree: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Maximum number of memoized subspaces.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = OracleOptions::default().max_vars)]
    pub max_vars: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OracleAction {
    TreeSize,
    ToProof,
}

#[derive(Args, Debug)]
pub struct FmtArgs {
    /// File to format (`-` for standard input).
    #[arg(default_value = "-")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = FileKind::Auto)]
    pub kind: FileKind,
    /// Variable count for proof, script, strategy and tree files.
    #[arg(long)]
    pub nvars: Option<usize>,
    /// Formula supplying the variable and clause counts.
    #[arg(short = 'f', long = "formula")]
    pub formula: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FileKind {
    Auto,
    Xlcnf,
    Xlp,
    Xls,
    Xws,
    Graph,
    Tree,
}

/// Failure that ends a command with exit code 2.
#[derive(Debug)]
pub struct CliError(String);

impl<E: Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

/// Lines of a run report.
#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn set(&mut self, key: &str, value: impl Display) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn render(&self) -> String {
        self.lines.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

struct Io<'a> {
    stdin: &'a mut dyn BufRead,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        if path == Path::new("-") {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            return Ok(s);
        }
        std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
    }

    fn write(&mut self, path: Option<&Path>, text: &str) -> Result<(), CliError> {
        match path {
            Some(p) if p != Path::new("-") => std::fs::write(p, text).map_err(|e| CliError(format!("{}: {e}", p.display()))),
            _ => Ok(self.stdout.write_all(text.as_bytes())?),
        }
    }

    fn formula(&mut self, path: &Path) -> Result<LinCnf, CliError> {
        let text = self.read(path)?;
        parse_xlcnf(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
    }
}

/// Hex SHA-256 of the canonical XLCNF text.
pub fn fingerprint(cnf: &LinCnf) -> String {
    Sha256::digest(write_xlcnf(cnf).as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn env_budget() -> Result<Option<u64>, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => {
            v.trim().parse().map(Some).map_err(|_| CliError(format!("{BUDGET_ENV} must be a non-negative integer, found {v:?}")))
        }
        Err(_) => Ok(None),
    }
}

fn budget(flag: Option<u64>, default: u64) -> Result<u64, CliError> {
    Ok(match flag {
        Some(b) => b,
        None => env_budget()?.unwrap_or(default),
    })
}

fn subset(cnf: &LinCnf, arg: &SubsetArg) -> Result<Vec<usize>, CliError> {
    if let Some(labels) = &arg.family {
        let mut out = Vec::new();
        for label in labels.split(',') {
            let idx = cnf.indices_with_label(label);
            if idx.is_empty() {
                return Err(CliError(format!(
                    "no clause carries label {label:?}; labels present: {}",
                    cnf.label_set().join(",")
                )));
            }
            out.extend(idx);
        }
        out.sort_unstable();
        out.dedup();
        return Ok(out);
    }
    if let Some(list) = &arg.indices {
        let mut out = Vec::new();
        for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let i: usize = part.parse().map_err(|_| CliError(format!("bad clause index {part:?}")))?;
            if i == 0 || i > cnf.len() {
                return Err(CliError(format!("clause index {i} out of range 1..={}", cnf.len())));
            }
            out.push(i - 1);
        }
        out.sort_unstable();
        out.dedup();
        return Ok(out);
    }
    Ok(Vec::new())
}

fn show_system(sys: &LinSystem) -> String {
    if sys.canonical_rows().is_empty() {
        return "T".into();
    }
    sys.canonical_rows().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn extend_failure(e: ExtendError) -> CliError {
    CliError(e.to_string())
}

/// Parses `args` and runs the command. Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let start = Instant::now();
    let mut io = Io { stdin, stdout };
    let mut report = Report::default();
    report.set("command", &echo);
    let result = dispatch(&cli, &pool, &mut io, &mut report);
    match result {
        Ok(Some(code)) => {
            report.set("wall_ms", start.elapsed().as_millis());
            let _ = io.stdout.write_all(report.render().as_bytes());
            code
        }
        Ok(None) => 0,
        Err(CliError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

/// `Ok(None)` means the command wrote its artifact to standard output and
/// no report follows.
fn dispatch(cli: &Cli, pool: &rayon::ThreadPool, io: &mut Io<'_>, report: &mut Report) -> Result<Option<i32>, CliError> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, io, report),
        Command::Verify(a) => cmd_verify(a, io, report).map(Some),
        Command::Width(a) => cmd_width(a, io, report).map(Some),
        Command::Extend(a) => cmd_extend(a, pool, io, report).map(Some),
        Command::Strategy(a) => cmd_strategy(a, io, report).map(Some),
        Command::Game(a) => cmd_game(a, cli.seed, io, report).map(Some),
        Command::Oracle(a) => cmd_oracle(a, io, report).map(Some),
        Command::Fmt(a) => cmd_fmt(a, io, report),
    }
}

fn cmd_gen(a: &GenArgs, io: &mut Io<'_>, report: &mut Report) -> Result<Option<i32>, CliError> {
    let family = match &a.family {
        GenFamily::Php { pigeons, holes } => Family::Php { pigeons: *pigeons, holes: *holes },
        GenFamily::Ordering { n } => Family::Ordering { n: *n },
        GenFamily::Dlo { n } => Family::Dlo { n: *n },
        GenFamily::Fphp { graph } => match parse_graph(&io.read(graph)?)? {
            GraphInput::Bipartite(g) => Family::Fphp(g),
            GraphInput::Plain(_) => return Err(CliError("fphp needs a bipartite graph (p bigraph)".into())),
        },
        GenFamily::Gop { graph } => match parse_graph(&io.read(graph)?)? {
            GraphInput::Plain(g) => Family::Gop(g),
            GraphInput::Bipartite(_) => return Err(CliError("gop needs a plain graph (p graph)".into())),
        },
    };
    let cnf = generate(&family)?;
    let text = write_xlcnf(&cnf);
    match &a.output {
        Some(path) if path != Path::new("-") => {
            io.write(Some(path), &text)?;
            report.set("instance", fingerprint(&cnf));
            report.set("nvars", cnf.nvars());
            report.set("clauses", cnf.len());
            report.set("r", cnf.r());
            report.set("labels", cnf.label_set().join(","));
            report.set("output", path.display());
            Ok(Some(0))
        }
        _ => {
            io.write(None, &text)?;
            Ok(None)
        }
    }
}

fn cmd_verify(a: &VerifyArgs, io: &mut Io<'_>, report: &mut Report) -> Result<i32, CliError> {
    let cnf = io.formula(&a.cnf.formula)?;
    report.set("instance", fingerprint(&cnf));
    if let Some(path) = &a.proof {
        let proof = parse_xlp(&io.read(path)?, cnf.nvars()).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
        let rep = verify_tree_proof(&proof, &cnf);
        report.set("kind", "tree");
        report.set("ok", rep.ok);
        report.set("size", rep.size);
        report.set("width", rep.width);
        if let Some(e) = &rep.error {
            report.set("diagnostic", e);
        }
        if rep.ok {
            if let Some(out) = &a.to_space {
                io.write(Some(out), &write_xls(&crate::proofcheck::tree_to_space_script(&proof)))?;
            }
        }
        return Ok(if rep.ok { 0 } else { 1 });
    }
    let path = a.script.as_ref().expect("clap requires -p or -s");
    let script = parse_xls(&io.read(path)?, cnf.nvars()).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let rep = verify_space_script(&script, &cnf);
    report.set("kind", "space");
    report.set("ok", rep.ok && rep.refuted);
    report.set("space", rep.space);
    report.set("refuted", rep.refuted);
    match &rep.error {
        Some(e) => report.set("diagnostic", e),
        None if !rep.refuted => report.set("diagnostic", "script never derives the empty clause"),
        None => {}
    }
    if rep.ok {
        if let Some(out) = &a.desugar {
            let d = desugar_space_script(&script, &cnf)?;
            let drep = verify_space_script(&d, &cnf);
            report.set("desugared_space", drep.space);
            io.write(Some(out), &write_xls(&d))?;
        }
    }
    Ok(if rep.ok && rep.refuted { 0 } else { 1 })
}

fn cmd_width(a: &WidthArgs, io: &mut Io<'_>, report: &mut Report) -> Result<i32, CliError> {
    let cnf = io.formula(&a.cnf.formula)?;
    report.set("instance", fingerprint(&cnf));
    report.set("r", cnf.r());
    let limits = WidthLimits { max_vars: a.max_vars, ..WidthLimits::default() };
    let limits = WidthLimits { max_k: limits.max_k.max(a.kmax), ..limits };
    match exact_width(&cnf, a.kmax, &limits).map_err(extend_failure)? {
        Some(w) => {
            report.set("width", w);
            Ok(0)
        }
        None => {
            report.set("width", format!(">{}", a.kmax));
            Ok(1)
        }
    }
}

fn cmd_extend(a: &ExtendArgs, pool: &rayon::ThreadPool, io: &mut Io<'_>, report: &mut Report) -> Result<i32, CliError> {
    let cnf = io.formula(&a.cnf.formula)?;
    let f = subset(&cnf, &a.subset)?;
    let opts = ExtendOptions { max_systems: a.max_systems, node_budget: budget(a.budget, DEFAULT_NODE_BUDGET)? };
    report.set("instance", fingerprint(&cnf));
    report.set("m", a.m);
    report.set("f_size", f.len());
    report.set("budget", opts.node_budget);
    let v = pool.install(|| check_extensibility(&cnf, &f, a.m, &opts)).map_err(extend_failure)?;
    report.set("holds", v.holds);
    report.set("systems_checked", v.systems_checked);
    if let Some(cx) = &v.counterexample {
        report.set("counterexample_system", show_system(&cx.system));
        report.set("counterexample_clause", cx.clause + 1);
    }
    Ok(if v.holds { 0 } else { 1 })
}

fn cmd_strategy(a: &StrategyArgs, io: &mut Io<'_>, report: &mut Report) -> Result<i32, CliError> {
    let cnf = io.formula(&a.cnf.formula)?;
    report.set("instance", fingerprint(&cnf));
    report.set("k", a.k);
    match a.action {
        StrategyAction::Check => {
            let path = a.family_file.as_ref().ok_or_else(|| CliError("strategy check needs -H <family.xws>".into()))?;
            let h = parse_xws(&io.read(path)?, cnf.nvars()).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            report.set("members", h.len());
            let v = check_winning_strategy(&h, &cnf, a.k).map_err(extend_failure)?;
            report.set("holds", v.holds);
            if let Some(violation) = &v.violation {
                report.set("property", violation.property());
                report.set("diagnostic", violation);
            }
            Ok(if v.holds { 0 } else { 1 })
        }
        StrategyAction::Build => {
            let limits = WidthLimits { max_vars: a.max_vars, max_k: WidthLimits::default().max_k.max(a.k) };
            match build_canonical_strategy(&cnf, a.k, &limits).map_err(extend_failure)? {
                Some(h) => {
                    report.set("exists", true);
                    report.set("members", h.len());
                    if let Some(out) = &a.family_file {
                        io.write(Some(out), &write_xws(&h))?;
                    }
                    Ok(0)
                }
                None => {
                    report.set("exists", false);
                    Ok(1)
                }
            }
        }
    }
}

fn cmd_game(a: &GameArgs, seed: u64, io: &mut Io<'_>, report: &mut Report) -> Result<i32, CliError> {
    let cnf = io.formula(&a.cnf.formula)?;
    let f = subset(&cnf, &a.subset)?;
    let opts = GameOptions { max_rounds: a.max_rounds, node_budget: budget(a.budget, DEFAULT_NODE_BUDGET)? };
    report.set("instance", fingerprint(&cnf));
    report.set("prover", format!("{:?}", a.prover).to_lowercase());
    report.set("seed", seed);
    report.set("f_size", f.len());
    let script = match (&a.prover, &a.script) {
        (ProverKind::Scripted, Some(p)) => Some(io.read(p)?),
        (ProverKind::Scripted, None) => return Err(CliError("the scripted prover needs --script".into())),
        _ => None,
    };
    let tree = match (&a.prover, &a.tree) {
        (ProverKind::Tree, Some(p)) => {
            Some(parse_split_tree(&io.read(p)?, cnf.nvars(), cnf.len()).map_err(|e| CliError(format!("{}: {e}", p.display())))?)
        }
        (ProverKind::Tree, None) => return Err(CliError("the tree prover needs --tree".into())),
        _ => None,
    };
    let games = if matches!(a.prover, ProverKind::Random) { a.games.max(1) } else { 1 };
    let mut min_coins = usize::MAX;
    let mut max_coins = 0;
    let mut unfinished = 0u64;
    let mut last = None;
    for g in 0..games {
        let outcome = {
            let mut prover: Box<dyn Prover + '_> = match a.prover {
                ProverKind::Random => Box::new(RandomProver::new(seed.wrapping_add(g))),
                ProverKind::Sweep => Box::new(SweepProver::new(&cnf, &f).with_budget(opts.node_budget)),
                ProverKind::Scripted => Box::new(ScriptedProver::new(script.as_deref().unwrap_or_default())),
                ProverKind::Tree => Box::new(TreeProver::new(tree.clone().expect("parsed above"))),
                ProverKind::Interactive => Box::new(InteractiveProver::new(&mut *io.stdin, &mut *io.stdout)),
            };
            run_game(&cnf, &f, prover.as_mut(), &opts).map_err(|e| match e {
                GameError::Extend(e) => extend_failure(e),
                other => CliError(other.to_string()),
            })?
        };
        min_coins = min_coins.min(outcome.coins);
        max_coins = max_coins.max(outcome.coins);
        if !matches!(outcome.status, FinalStatus::Falsified(_)) {
            unfinished += 1;
        }
        last = Some(outcome);
    }
    let last = last.expect("at least one game");
    report.set("games", games);
    if games == 1 {
        report.set("coins", last.coins);
        report.set("rounds", last.transcript.len());
        report.set("status", last.status);
    } else {
        report.set("coins_min", min_coins);
        report.set("coins_max", max_coins);
        report.set("unfinished", unfinished);
    }
    if let Some(out) = &a.transcript {
        io.write(Some(out), &last.script())?;
    }
    Ok(match a.min_coins {
        Some(m) if min_coins < m => 1,
        _ => 0,
    })
}

fn cmd_oracle(a: &OracleArgs, io: &mut Io<'_>, report: &mut Report) -> Result<i32, CliError> {
    let cnf = io.formula(&a.cnf.formula)?;
    report.set("instance", fingerprint(&cnf));
    match a.action {
        OracleAction::TreeSize => {
            let opts =
                OracleOptions { budget: budget(a.budget, OracleOptions::default().budget)?, max_vars: a.max_vars, memo: true };
            report.set("budget", opts.budget);
            match min_split_tree(&cnf, &opts) {
                Ok(r) => {
                    report.set("size", r.size);
                    report.set("depth", r.tree.depth());
                    report.set("explored", r.explored);
                    let text = write_split_tree(&r.tree);
                    match &a.output {
                        Some(out) => io.write(Some(out), &format!("{text}\n"))?,
                        None => report.set("tree", text),
                    }
                    Ok(0)
                }
                Err(OracleError::BudgetExceeded { upper_bound, .. }) => {
                    report.set("status", "budget_exceeded");
                    report.set("upper_bound", upper_bound);
                    Ok(2)
                }
                Err(OracleError::Satisfiable { assignment }) => {
                    report.set("status", "satisfiable");
                    report.set("assignment", assignment.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>());
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        OracleAction::ToProof => {
            let path = a.tree.as_ref().ok_or_else(|| CliError("oracle to-proof needs -t <tree>".into()))?;
            let tree = parse_split_tree(&io.read(path)?, cnf.nvars(), cnf.len())
                .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            let proof = match split_tree_to_proof(&tree, &cnf) {
                Ok(p) => p,
                Err(e @ OracleError::InvalidTree { .. }) => {
                    report.set("ok", false);
                    report.set("diagnostic", e);
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            };
            let rep = verify_tree_proof(&proof, &cnf);
            report.set("tree_size", tree.size());
            report.set("proof_size", proof.size());
            report.set("width", rep.width);
            report.set("ok", rep.ok);
            if let Some(e) = &rep.error {
                report.set("diagnostic", e);
            }
            if let Some(out) = &a.output {
                io.write(Some(out), &write_xlp(&proof))?;
            }
            Ok(if rep.ok { 0 } else { 1 })
        }
    }
}

fn detect_kind(text: &str) -> Option<FileKind> {
    let line = text.lines().map(str::trim).find(|l| !l.is_empty() && *l != "c" && !l.starts_with("c "))?;
    if line.starts_with('(') {
        return Some(FileKind::Tree);
    }
    let mut t = line.split_whitespace();
    if t.next() != Some("p") {
        return None;
    }
    match t.next()? {
        "xlcnf" => Some(FileKind::Xlcnf),
        "xlp" => Some(FileKind::Xlp),
        "xls" => Some(FileKind::Xls),
        "xws" => Some(FileKind::Xws),
        "graph" | "bigraph" => Some(FileKind::Graph),
        _ => None,
    }
}

fn cmd_fmt(a: &FmtArgs, io: &mut Io<'_>, report: &mut Report) -> Result<Option<i32>, CliError> {
    let text = io.read(&a.input)?;
    let kind = match a.kind {
        FileKind::Auto => detect_kind(&text).ok_or_else(|| CliError("cannot tell the file format; pass --kind".into()))?,
        k => k,
    };
    let at = |e: &dyn Display| CliError(format!("{}: {e}", a.input.display()));
    let cnf = match &a.formula {
        Some(p) => Some(io.formula(p)?),
        None => None,
    };
    let nvars = || {
        a.nvars.or(cnf.as_ref().map(LinCnf::nvars)).ok_or_else(|| CliError("this format needs --nvars or -f <formula>".into()))
    };
    let out = match kind {
        FileKind::Xlcnf => write_xlcnf(&parse_xlcnf(&text).map_err(|e| at(&e))?),
        FileKind::Graph => write_graph(&parse_graph(&text).map_err(|e| at(&e))?),
        FileKind::Xlp => write_xlp(&parse_xlp(&text, nvars()?).map_err(|e| at(&e))?),
        FileKind::Xls => write_xls(&parse_xls(&text, nvars()?).map_err(|e| at(&e))?),
        FileKind::Xws => write_xws(&parse_xws(&text, nvars()?).map_err(|e| at(&e))?),
        FileKind::Tree => {
            let nclauses = cnf.as_ref().map_or(usize::MAX, LinCnf::len);
            format!("{}\n", write_split_tree(&parse_split_tree(&text, nvars()?, nclauses).map_err(|e| at(&e))?))
        }
        FileKind::Auto => unreachable!("resolved above"),
    };
    match &a.output {
        Some(p) if p != Path::new("-") => {
            io.write(Some(p), &out)?;
            report.set("kind", format!("{kind:?}").to_lowercase());
            report.set("output", p.display());
            Ok(Some(0))
        }
        _ => {
            io.write(None, &out)?;
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut stdin = input.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("reslin").chain(args.iter().copied());
        let code = run(argv, &mut stdin, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_writes_xlcnf_to_stdout() {
        let (code, out, _) = call(&["gen", "php", "--pigeons", "3", "--holes", "2"], "");
        assert_eq!(code, 0);
        assert!(out.contains("p xlcnf 6 9\n"));
    }

    #[test]
    fn gen_fmt_round_trip() {
        let (_, text, _) = call(&["gen", "dlo", "--n", "4"], "");
        let (code, again, _) = call(&["fmt"], &text);
        assert_eq!(code, 0);
        assert_eq!(again, text);
    }

    #[test]
    fn extend_from_stdin() {
        let (_, text, _) = call(&["gen", "php", "--pigeons", "3", "--holes", "2"], "");
        let (code, out, _) = call(&["extend", "-f", "-", "--family", "hole", "--m", "1"], &text);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("holds=true\n"));
        assert!(out.starts_with("command=extend -f - --family hole --m 1\n"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["extend", "--m", "1"], "").0, 2);
        assert_eq!(call(&["frobnicate"], "").0, 2);
        let (code, _, err) = call(&["width", "-f", "-"], "p xlcnf 2 1\n1=1 3=0\n");
        assert_eq!(code, 2);
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn explicit_budget_beats_default() {
        assert_eq!(budget(Some(5), 7).unwrap(), 5);
    }
}
