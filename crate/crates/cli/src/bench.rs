use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lcps::query::query_symbols;
use lcps::{Corpus, Index, Property};

use crate::Failure;

#[derive(Clone, Copy, ValueEnum)]
pub enum Generator {
    Random,
    Fibonacci,
    ThueMorse,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    generator: Generator,
    /// Corpus sizes; one row each.
    #[arg(long, num_args = 1.., required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 10_000)]
    y_len: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Alphabet size of the random generator.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=26))]
    sigma: u8,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Timed repetitions per query; the median is reported.
    #[arg(long, default_value_t = 3)]
    repeats: usize,
}

pub const HEADER: &str =
    "generator,n,build_ms,sqf_ms,sqr_ms,per_ms,pal_ms,lyn_ms,y_len,sqf_len,sqr_len,per_len,pal_len,lyn_len";

fn fibonacci(len: usize) -> Vec<u8> {
    let (mut a, mut b) = (b"a".to_vec(), b"ab".to_vec());
    while b.len() < len {
        let next = [&b[..], &a[..]].concat();
        a = b;
        b = next;
    }
    b.truncate(len);
    b
}

fn thue_morse(len: usize) -> Vec<u8> {
    (0..len).map(|i: usize| b'a' + (i.count_ones() % 2) as u8).collect()
}

/// A corpus word of length `n` and a query of length `y_len`. For the
/// deterministic words the query is the factor right after the corpus.
fn generate(g: Generator, n: usize, y_len: usize, sigma: u8, rng: &mut StdRng) -> (Vec<u8>, Vec<u8>) {
    let mut random = |len: usize| -> Vec<u8> { (0..len).map(|_| b'a' + rng.random_range(0..sigma)).collect() };
    match g {
        Generator::Random => (random(n), random(y_len)),
        Generator::Fibonacci | Generator::ThueMorse => {
            let word = match g {
                Generator::Fibonacci => fibonacci(n + y_len),
                _ => thue_morse(n + y_len),
            };
            (word[..n].to_vec(), word[n..].to_vec())
        }
    }
}

fn name(g: Generator) -> &'static str {
    match g {
        Generator::Random => "random",
        Generator::Fibonacci => "fibonacci",
        Generator::ThueMorse => "thue-morse",
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn row(args: &BenchArgs, n: usize, rng: &mut StdRng) -> Result<String, Failure> {
    let (doc, y) = generate(args.generator, n, args.y_len, args.sigma, rng);
    let corpus = Corpus::from_strs(&[doc]).map_err(|e| Failure::new(1, e.to_string()))?;
    let started = Instant::now();
    let index = Index::build(corpus);
    let build_ms = started.elapsed().as_secs_f64() * 1e3;
    let s = index.stats();
    if s.augment.distinct_squares > 2 * s.n || s.augment.distinct_palindromes > s.n {
        return Err(Failure::new(
            1,
            format!(
                "bound violated at n={n}: {} squares, {} palindromes",
                s.augment.distinct_squares, s.augment.distinct_palindromes
            ),
        ));
    }
    let enc = index.encode(&y);
    let mut times = Vec::new();
    let mut lens = Vec::new();
    for p in Property::ALL {
        let mut length = 0;
        let t = median(
            (0..args.repeats.max(1))
                .map(|_| {
                    let started = Instant::now();
                    length = query_symbols(&index, &enc, 1, p).expect("k'=1 is valid").length;
                    started.elapsed().as_secs_f64() * 1e3
                })
                .collect(),
        );
        times.push(format!("{t:.3}"));
        lens.push(length.to_string());
    }
    eprintln!("{} n={n}: build {build_ms:.1} ms", name(args.generator));
    Ok(format!(
        "{},{n},{build_ms:.3},{},{},{}",
        name(args.generator),
        times.join(","),
        y.len(),
        lens.join(",")
    ))
}

pub fn run(args: &BenchArgs) -> Result<(), Failure> {
    if args.n.contains(&0) {
        return Err(Failure::new(1, "--n values must be positive"));
    }
    let mut out: Box<dyn Write> = match &args.csv {
        Some(path) => Box::new(File::create(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let io_err = |e: io::Error| Failure::new(1, e.to_string());
    writeln!(out, "{HEADER}").map_err(io_err)?;
    let mut rng = StdRng::seed_from_u64(args.seed);
    for &n in &args.n {
        let line = row(args, n, &mut rng)?;
        writeln!(out, "{line}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}
