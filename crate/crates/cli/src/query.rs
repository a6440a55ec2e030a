use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, Read};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;

use lcps::query::self_query_offline;
use lcps::{FormatError, Index, Property, QueryResult, QuerySession};

use crate::{parse_property, Failure};

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
pub struct QueryArgs {
    #[arg(long)]
    index: PathBuf,
    /// sqf, sqr, per, pal or lyn.
    #[arg(long, value_parser = parse_property)]
    property: Property,
    /// Minimum number of documents the answer must occur in.
    #[arg(long)]
    k: usize,
    /// File holding the query string (raw bytes).
    #[arg(long, conflicts_with = "stdin")]
    y: Option<PathBuf>,
    /// Stream the query string from stdin one byte at a time.
    #[arg(long)]
    stdin: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Query the corpus against itself (x_1 # ... # x_k); ignores --y.
    #[arg(long)]
    offline: bool,
}

/// One output record; positions are 1-based.
#[derive(Debug, Serialize)]
pub struct Record {
    pub property: Property,
    pub length: usize,
    pub start: usize,
    pub substring: String,
    pub witness_doc: Option<usize>,
    pub witness_pos: Option<usize>,
    pub docs_matched: usize,
}

/// Printable ASCII stays as is; everything else, and the backslash, becomes
/// `\xNN`.
pub fn escape(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len());
    for &b in bytes {
        if (0x20..0x7f).contains(&b) && b != b'\\' {
            out.push(b as char);
        } else {
            let _ = write!(out, "\\x{b:02x}");
        }
    }
    out
}

pub fn record(index: &Index, r: &QueryResult) -> Record {
    match r.witness {
        None => Record {
            property: r.property,
            length: 0,
            start: 0,
            substring: String::new(),
            witness_doc: None,
            witness_pos: None,
            docs_matched: 0,
        },
        Some(w) => Record {
            property: r.property,
            length: r.length,
            start: r.start + 1,
            substring: escape(&index.corpus().doc(w.doc).content[w.start..w.start + w.len]),
            witness_doc: Some(w.doc + 1),
            witness_pos: Some(w.start + 1),
            docs_matched: r.docs_matched,
        },
    }
}

fn format_record(r: &Record, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(r).expect("records serialize"),
        Format::Tsv => {
            let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
            format!(
                "property\tlength\tstart\tsubstring\twitness_doc\twitness_pos\tdocs_matched\n{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.property,
                r.length,
                r.start,
                r.substring,
                opt(r.witness_doc),
                opt(r.witness_pos),
                r.docs_matched
            )
        }
    }
}

fn load(path: &Path) -> Result<Index, Failure> {
    Index::load(path).map_err(|e| {
        let code = match e {
            FormatError::Io { .. } => 1,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    })
}

fn feed(session: &mut QuerySession, source: impl Read) -> io::Result<()> {
    for b in BufReader::new(source).bytes() {
        session.push_byte(b?);
    }
    Ok(())
}

pub fn run(args: &QueryArgs) -> Result<(), Failure> {
    let index = load(&args.index)?;
    let threshold = |e: lcps::InvalidThreshold| Failure::new(2, e.to_string());
    let result = if args.offline {
        self_query_offline(&index, args.k, &[args.property])
            .map_err(threshold)?
            .0[0]
    } else {
        let mut session = QuerySession::new(&index, args.k, &[args.property]).map_err(threshold)?;
        let read = match (&args.y, args.stdin) {
            (Some(path), _) => {
                let file = File::open(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))?;
                feed(&mut session, file)
            }
            (None, true) => feed(&mut session, io::stdin().lock()),
            (None, false) => return Err(Failure::new(1, "one of --y, --stdin or --offline is required")),
        };
        read.map_err(|e| Failure::new(1, format!("reading the query: {e}")))?;
        session.finish()[0]
    };
    println!("{}", format_record(&record(&index, &result), args.format));
    Ok(())
}
