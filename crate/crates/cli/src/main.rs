//! `lcps`: build an index over a corpus, query it, cross-check it against
//! the brute-force oracle and benchmark it. Human-readable output goes to
//! stderr, machine-readable output to stdout.

mod bench;
mod check;
mod query;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lcps::{Corpus, Index, Property};

#[global_allocator]
static ALLOC: lcps::alloc::HugePages = lcps::alloc::HugePages;

#[derive(Parser)]
#[command(name = "lcps", version, about = "Longest common property-preserved substring queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index over a corpus directory or manifest and write it to disk.
    Build {
        /// Directory of documents (one per file) or manifest of paths.
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Query an index with a string read from a file or streamed from stdin.
    Query(query::QueryArgs),
    /// Differential test of the index against the brute-force oracle.
    Check(check::CheckArgs),
    /// Time index construction and queries on generated corpora.
    Bench(bench::BenchArgs),
}

/// A failure with the exit code it maps to.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn build(corpus: &Path, out: &Path) -> Result<(), Failure> {
    let corpus = Corpus::load(corpus).map_err(|e| Failure::new(1, e.to_string()))?;
    let index = Index::build(corpus);
    index
        .save(out)
        .map_err(|e| Failure::new(1, format!("{}: {e}", out.display())))?;
    let s = index.stats();
    eprintln!(
        "n={} k={} sigma={} nodes={} squares={} palindromes={} build_ms={:.1}",
        s.n, s.k, s.sigma, s.nodes, s.augment.distinct_squares, s.augment.distinct_palindromes, s.build_ms
    );
    Ok(())
}

pub fn parse_property(s: &str) -> Result<Property, String> {
    s.parse::<Property>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build { corpus, out } => build(corpus, out),
        Command::Query(args) => query::run(args),
        Command::Check(args) => check::run(args),
        Command::Bench(args) => bench::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
