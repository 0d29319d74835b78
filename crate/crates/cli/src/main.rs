//! `blossom`: expand model series, run verification suites, list trees and maps.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or config error.

mod config;
mod expand;
mod listing;
mod verify;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use blossom_core::trees::RootKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use expand::{Class, Format, GradingChoice, Model, Rendered, RunConfig};
use listing::{parse_degrees, TreeQuery};

#[derive(Parser)]
#[command(name = "blossom", version, about = "Exact series for bipartite planar maps, hard particles and Ising")]
#[command(args_override_self = true)]
struct Cli {
    /// Worker threads (overrides BLOSSOM_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a model series up to the given order.
    Expand(ExpandArgs),
    /// Run verification suites and golden-file checks.
    Verify(VerifyArgs),
    /// Enumerate blossom trees.
    Trees(TreesArgs),
    /// Enumerate bipartite maps with legs.
    Maps(MapsArgs),
}

#[derive(Args)]
#[command(args_override_self = true)]
struct ExpandArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, value_enum)]
    class: Class,
    /// Vertex degree for `m-regular`.
    #[arg(long)]
    m: Option<usize>,
    /// Number of edges or vertices, per the grading.
    #[arg(long)]
    order: u32,
    /// Defaults to edges for `bipartite`, vertices otherwise.
    #[arg(long, value_enum)]
    grading: Option<GradingChoice>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
#[command(args_override_self = true)]
struct VerifyArgs {
    /// Suite name; repeatable. All suites when neither this nor --golden is given.
    #[arg(long)]
    suite: Vec<String>,
    /// Size passed to each suite (edges, vertices or order, per suite).
    #[arg(long)]
    max_size: Option<usize>,
    /// Directory of golden `*.txt` files to recompute and diff.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Directory to write the enumerated 1-leg maps into, as dart tables.
    #[arg(long)]
    dump_maps: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Action {
    List,
    Dump,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Root {
    Leaf,
    Bud,
}

#[derive(Args)]
#[command(args_override_self = true)]
struct TreesArgs {
    #[arg(value_enum, default_value = "dump")]
    action: Action,
    /// White degrees, e.g. `1-4` or `1,2,4`.
    #[arg(long, default_value = "1-4")]
    white: String,
    #[arg(long, default_value = "1-4")]
    black: String,
    /// Grade bound: a degree-k vertex weighs k.
    #[arg(long)]
    grade: u32,
    #[arg(long, value_enum, default_value = "leaf")]
    root: Root,
    /// Tree charge (the root half-edge is not counted).
    #[arg(long, allow_negative_numbers = true)]
    charge: Option<i32>,
    /// Keep leaf-rooted trees whose root leaf is single.
    #[arg(long)]
    balanced: bool,
}

#[derive(Args)]
#[command(args_override_self = true)]
struct MapsArgs {
    #[arg(value_enum, default_value = "dump")]
    action: Action,
    #[arg(long, default_value_t = 1)]
    legs: usize,
    #[arg(long)]
    max_edges: usize,
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn threads(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("BLOSSOM_THREADS") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| Failure::Usage(format!("BLOSSOM_THREADS: bad value {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn expand(a: ExpandArgs, out: &mut impl Write) -> Result<(), Failure> {
    let cfg = RunConfig::new(a.model, a.class, a.m, a.order, a.grading).map_err(Failure::Usage)?;
    let series = cfg.compute().map_err(|e| Failure::Usage(e.to_string()))?;
    write!(out, "{}", Rendered { cfg: &cfg, series: &series, format: a.format })?;
    Ok(())
}

fn verify(a: VerifyArgs, out: &mut impl Write) -> Result<(), Failure> {
    let suites = if a.suite.is_empty() && a.golden.is_some() { Vec::new() } else { verify::suites(&a.suite).map_err(Failure::Usage)? };
    let golden = a.golden.as_deref().map(verify::golden_files).transpose().map_err(Failure::Usage)?;
    if let Some(dir) = &a.dump_maps {
        verify::dump_leg_maps(dir, a.max_size.unwrap_or(blossom_core::suites::Suite::BijectionClosure.default_size()))
            .map_err(Failure::Usage)?;
    }
    let mut ok = true;
    for s in suites {
        ok &= verify::report(out, s.name(), &verify::run(s, a.max_size))?;
    }
    for f in golden.unwrap_or_default() {
        ok &= verify::report(out, "golden", &[verify::check_golden(&f)])?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn trees(a: TreesArgs, out: &mut impl Write) -> Result<(), Failure> {
    let q = TreeQuery {
        white: parse_degrees(&a.white).map_err(Failure::Usage)?,
        black: parse_degrees(&a.black).map_err(Failure::Usage)?,
        grade: a.grade,
        root: match a.root {
            Root::Leaf => RootKind::Leaf,
            Root::Bud => RootKind::Bud,
        },
        charge: a.charge,
        balanced: a.balanced,
    };
    listing::trees(out, &q, a.action == Action::Dump).map_err(Failure::Usage)
}

fn maps(a: MapsArgs, out: &mut impl Write) -> Result<(), Failure> {
    listing::maps(out, a.legs, a.max_edges, a.action == Action::Dump).map_err(Failure::Usage)
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = threads(cli.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let r = match cli.cmd {
        Cmd::Expand(a) => expand(a, &mut out),
        Cmd::Verify(a) => verify(a, &mut out),
        Cmd::Trees(a) => trees(a, &mut out),
        Cmd::Maps(a) => maps(a, &mut out),
    };
    out.flush()?;
    r
}

fn main() -> ExitCode {
    let args = match config::expand_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
