//! Command-line front end. The `slpkit` binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 success (and, for `verify`, agreement), 1 a verified disagreement, 2 usage,
//! parse, or precondition errors.

mod bench;
mod fmt;
mod input;
mod solve;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::hardness::registry::DEFAULT_MAX_DECOMPRESS;

pub use bench::run_suite;
pub use fmt::{canonical, detect};
pub use solve::{solve, Answer, ALGORITHMS};

#[derive(Debug, Parser)]
#[command(name = "slpkit", version, about = "Algorithms on grammar-compressed strings")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Largest total string length any decompressing route may materialize.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DECOMPRESS)]
    pub max_decompress: u64,
    /// Allow generated instances too large for target-side checking.
    #[arg(long, global = true)]
    pub uncertified: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate instances from a source file or random sources into bundle directories.
    Gen(GenArgs),
    /// Run one algorithm on input files and print `accept`, `reject`, or an integer.
    Solve(SolveArgs),
    /// Generate and check instances (or check existing bundles), streaming a CSV report.
    Verify(VerifyArgs),
    /// Time compressed algorithms against decompress-and-solve over a suite file.
    Bench(BenchArgs),
    /// Parse a file in any supported format and print it back in canonical form.
    Fmt(FmtArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Clique size for graph sources.
    #[arg(long)]
    pub k: Option<usize>,
    /// Tuple split for the k-OV reductions.
    #[arg(long)]
    pub k1: Option<usize>,
    #[arg(long)]
    pub k2: Option<usize>,
    /// Number of random sources to draw instead of reading files.
    #[arg(long)]
    pub random: Option<usize>,
    /// Scale of random sources.
    #[arg(long, default_value_t = 2)]
    pub size: usize,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Registered reduction name.
    pub reduction: String,
    /// Source file (omit with --random).
    pub source: Option<PathBuf>,
    #[command(flatten)]
    pub src: SourceArgs,
    /// Output directory; several instances go to numbered subdirectories.
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub algorithm: String,
    pub inputs: Vec<PathBuf>,
    /// Also print a JSON line with sizes and timing to stderr.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Reduction to apply to source inputs; omit to treat inputs as bundle directories.
    #[arg(long)]
    pub reduction: Option<String>,
    /// Source files or bundle directories.
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub src: SourceArgs,
    /// Include wall-clock timing columns (makes the report nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub suite: PathBuf,
}

#[derive(Debug, Args)]
pub struct FmtArgs {
    pub file: PathBuf,
    /// Format to parse as; detected from the contents when omitted.
    #[arg(long)]
    pub kind: Option<String>,
}

pub(crate) fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), msg: e.to_string() })
}

pub(crate) fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| Error::invalid(e.to_string()))
}

/// Parse `args` (including the program name) and run; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let res = match &cli.cmd {
        Command::Gen(a) => verify::gen(&cli.global, a, out).map(|_| 0),
        Command::Solve(a) => solve::cmd(&cli.global, a, out, err).map(|_| 0),
        Command::Verify(a) => verify::cmd(&cli.global, a, out),
        Command::Bench(a) => bench::cmd(&cli.global, a, out).map(|_| 0),
        Command::Fmt(a) => fmt::cmd(a, out).map(|_| 0),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
