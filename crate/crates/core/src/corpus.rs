//! Document ingestion, the internal integer alphabet and the
//! sentinel-separated concatenation every index structure is built over.
//!
//! All positions in this crate are 0-based. Document `d` occupies
//! `doc_start(d)..doc_end(d)` in the [`GlobalText`] and is followed by its own
//! sentinel symbol `sigma + d` at `doc_end(d)`.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

/// An internal symbol. Alphabet symbols are `0..sigma`, sentinels `sigma..sigma + k`.
pub type Symbol = u32;

const UNMAPPED: Symbol = Symbol::MAX;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus has no documents")]
    EmptyCorpus,
    #[error("empty document: {0}")]
    EmptyDocument(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: usize,
    pub name: String,
    pub content: Vec<u8>,
}

impl Document {
    pub fn len(&self) -> usize {
        self.content.len()
    }

    pub fn is_empty(&self) -> bool {
        self.content.is_empty()
    }
}

/// An immutable, validated set of documents together with the byte alphabet.
#[derive(Debug, Clone)]
pub struct Corpus {
    docs: Vec<Document>,
    to_symbol: [Symbol; 256],
    to_byte: Vec<u8>,
    n: usize,
}

impl Corpus {
    /// Validates `sources` and assigns internal symbols.
    ///
    /// Symbols are assigned in ascending byte order, so the integer order of
    /// internal symbols is the byte order; lexicographic notions (Lyndon
    /// words) therefore mean the same thing on bytes and on symbols.
    pub fn ingest<I, S>(sources: I) -> Result<Corpus, CorpusError>
    where
        I: IntoIterator<Item = (S, Vec<u8>)>,
        S: Into<String>,
    {
        let mut docs = Vec::new();
        for (id, (name, content)) in sources.into_iter().enumerate() {
            let name = name.into();
            if content.is_empty() {
                return Err(CorpusError::EmptyDocument(name));
            }
            docs.push(Document { id, name, content });
        }
        if docs.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }

        let mut present = [false; 256];
        for doc in &docs {
            for &b in &doc.content {
                present[b as usize] = true;
            }
        }
        let mut to_symbol = [UNMAPPED; 256];
        let mut to_byte = Vec::new();
        for b in 0..256usize {
            if present[b] {
                to_symbol[b] = to_byte.len() as Symbol;
                to_byte.push(b as u8);
            }
        }
        let n = docs.iter().map(Document::len).sum();
        Ok(Corpus {
            docs,
            to_symbol,
            to_byte,
            n,
        })
    }

    /// Convenience constructor naming documents `source 1`, `source 2`, ...
    pub fn from_strs<T: AsRef<[u8]>>(docs: &[T]) -> Result<Corpus, CorpusError> {
        Corpus::ingest(
            docs.iter()
                .enumerate()
                .map(|(i, d)| (format!("source {}", i + 1), d.as_ref().to_vec())),
        )
    }

    /// Reads a corpus from a directory (files in lexicographic filename
    /// order) or from a manifest listing one path per line.
    pub fn load(path: &Path) -> Result<Corpus, CorpusError> {
        Corpus::ingest(load_sources(path)?)
    }

    pub fn docs(&self) -> &[Document] {
        &self.docs
    }

    pub fn doc(&self, id: usize) -> &Document {
        &self.docs[id]
    }

    /// Number of documents.
    pub fn k(&self) -> usize {
        self.docs.len()
    }

    /// Total length of all documents.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Alphabet size.
    pub fn sigma(&self) -> usize {
        self.to_byte.len()
    }

    /// Internal symbol of `b`, or `None` when `b` never occurs in the corpus.
    pub fn map_symbol(&self, b: u8) -> Option<Symbol> {
        match self.to_symbol[b as usize] {
            UNMAPPED => None,
            s => Some(s),
        }
    }

    /// Byte for an alphabet symbol. Panics on sentinels.
    pub fn byte_of(&self, s: Symbol) -> u8 {
        self.to_byte[s as usize]
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.to_byte
    }

    /// Maps a byte string to symbols, `None` marking bytes outside the alphabet.
    pub fn encode(&self, bytes: &[u8]) -> Vec<Option<Symbol>> {
        bytes.iter().map(|&b| self.map_symbol(b)).collect()
    }

    pub fn concatenate(&self) -> GlobalText {
        let sigma = self.sigma() as Symbol;
        let total = self.n + self.k();
        let mut symbols = Vec::with_capacity(total);
        let mut doc_of = Vec::with_capacity(total);
        let mut doc_start = Vec::with_capacity(self.k());
        for doc in &self.docs {
            doc_start.push(symbols.len());
            symbols.extend(doc.content.iter().map(|&b| self.to_symbol[b as usize]));
            symbols.push(sigma + doc.id as Symbol);
            doc_of.extend(std::iter::repeat_n(doc.id as u32, doc.len() + 1));
        }
        GlobalText {
            symbols,
            doc_of,
            doc_start,
            sigma,
        }
    }
}

/// Lists `(name, bytes)` sources from a directory or manifest file.
pub fn load_sources(path: &Path) -> Result<Vec<(String, Vec<u8>)>, CorpusError> {
    let io_err = |p: &Path| {
        let p = p.to_path_buf();
        move |source| CorpusError::Io { path: p, source }
    };
    let meta = fs::metadata(path).map_err(io_err(path))?;
    let paths: Vec<PathBuf> = if meta.is_dir() {
        let mut files = Vec::new();
        for entry in fs::read_dir(path).map_err(io_err(path))? {
            let entry = entry.map_err(io_err(path))?;
            if entry.file_type().map_err(io_err(path))?.is_file() {
                files.push(entry.path());
            }
        }
        files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
        files
    } else {
        let manifest = fs::read_to_string(path).map_err(io_err(path))?;
        let base = path.parent().unwrap_or(Path::new("."));
        manifest
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| base.join(l))
            .collect()
    };
    paths
        .into_iter()
        .map(|p| {
            let bytes = fs::read(&p).map_err(io_err(&p))?;
            Ok((p.display().to_string(), bytes))
        })
        .collect()
}

/// `x_0 $_0 x_1 $_1 ... x_{k-1} $_{k-1}` over internal symbols.
#[derive(Debug, Clone)]
pub struct GlobalText {
    symbols: Vec<Symbol>,
    doc_of: Vec<u32>,
    doc_start: Vec<usize>,
    sigma: Symbol,
}

impl GlobalText {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    #[inline]
    pub fn at(&self, p: usize) -> Symbol {
        self.symbols[p]
    }

    pub fn sigma(&self) -> Symbol {
        self.sigma
    }

    pub fn k(&self) -> usize {
        self.doc_start.len()
    }

    /// Document containing `p` (a sentinel belongs to the document it ends).
    #[inline]
    pub fn doc_of(&self, p: usize) -> usize {
        self.doc_of[p] as usize
    }

    #[inline]
    pub fn local_of(&self, p: usize) -> usize {
        p - self.doc_start[self.doc_of(p)]
    }

    pub fn doc_start(&self, d: usize) -> usize {
        self.doc_start[d]
    }

    /// Position of document `d`'s sentinel.
    pub fn doc_end(&self, d: usize) -> usize {
        match self.doc_start.get(d + 1) {
            Some(&next) => next - 1,
            None => self.symbols.len() - 1,
        }
    }

    pub fn doc_len(&self, d: usize) -> usize {
        self.doc_end(d) - self.doc_start[d]
    }

    pub fn doc_symbols(&self, d: usize) -> &[Symbol] {
        &self.symbols[self.doc_start[d]..self.doc_end(d)]
    }

    #[inline]
    pub fn is_sentinel(&self, p: usize) -> bool {
        self.symbols[p] >= self.sigma
    }

    pub fn sentinel(&self, d: usize) -> Symbol {
        self.sigma + d as Symbol
    }

    /// Number of symbols from `p` up to and including its document's sentinel.
    #[inline]
    pub fn suffix_len(&self, p: usize) -> usize {
        self.doc_end(self.doc_of(p)) - p + 1
    }

    /// Global position of local offset `b` in document `d`.
    pub fn global(&self, d: usize, b: usize) -> usize {
        self.doc_start[d] + b
    }

    /// True when `[p, p + len)` lies inside one document without its sentinel.
    pub fn in_one_doc(&self, p: usize, len: usize) -> bool {
        p < self.len() && !self.is_sentinel(p) && p + len <= self.doc_end(self.doc_of(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ingest_counts() {
        let c = Corpus::from_strs(&["ab", "ba", "aa"]).unwrap();
        assert_eq!((c.k(), c.n(), c.sigma()), (3, 6, 2));
        let c = Corpus::from_strs(&["abaab"]).unwrap();
        assert_eq!((c.k(), c.n(), c.sigma()), (1, 5, 2));
    }

    #[test]
    fn ingest_rejects_empty() {
        match Corpus::from_strs(&["x", ""]) {
            Err(CorpusError::EmptyDocument(name)) => assert_eq!(name, "source 2"),
            other => panic!("unexpected {other:?}"),
        }
        let none: [&str; 0] = [];
        assert!(matches!(Corpus::from_strs(&none), Err(CorpusError::EmptyCorpus)));
    }

    #[test]
    fn map_symbol_basic() {
        let c = Corpus::from_strs(&["ab"]).unwrap();
        assert_eq!(c.map_symbol(b'a'), Some(0));
        assert_eq!(c.map_symbol(b'b'), Some(1));
        assert_eq!(c.map_symbol(b'z'), None);
        // symbol order follows byte order regardless of first occurrence
        let c = Corpus::from_strs(&["ba"]).unwrap();
        assert_eq!(c.map_symbol(b'a'), Some(0));
    }

    #[test]
    fn concatenate_layout() {
        let c = Corpus::from_strs(&["ab", "ba"]).unwrap();
        let t = c.concatenate();
        assert_eq!(t.symbols(), &[0, 1, 2, 1, 0, 3]);
        assert_eq!(t.doc_start(0), 0);
        assert_eq!(t.doc_start(1), 3);
        assert_eq!(t.doc_of(4), 1);
        assert_eq!(t.local_of(4), 1);
        assert!(t.is_sentinel(2) && t.is_sentinel(5));
        let t = Corpus::from_strs(&["aa"]).unwrap().concatenate();
        assert_eq!(t.symbols(), &[0, 0, 1]);
    }

    #[test]
    fn round_trip_positions() {
        let c = Corpus::from_strs(&["abc", "q", "zzzz"]).unwrap();
        let t = c.concatenate();
        for p in 0..t.len() {
            if t.is_sentinel(p) {
                assert!(t.at(p) >= t.sigma());
                continue;
            }
            assert_eq!(t.doc_start(t.doc_of(p)) + t.local_of(p), p);
            assert!(t.at(p) < t.sigma());
        }
    }

    #[test]
    fn load_from_dir_and_manifest() {
        let dir = std::env::temp_dir().join(format!("lcps-corpus-{}", std::process::id()));
        let docs = dir.join("docs");
        fs::create_dir_all(&docs).unwrap();
        fs::write(docs.join("b.txt"), "ba").unwrap();
        fs::write(docs.join("a.txt"), "ab").unwrap();
        let c = Corpus::load(&docs).unwrap();
        assert_eq!(c.doc(0).content, b"ab");
        assert_eq!(c.doc(1).content, b"ba");

        let manifest = dir.join("list.txt");
        fs::write(&manifest, "docs/b.txt\n\ndocs/a.txt\n").unwrap();
        let c = Corpus::load(&manifest).unwrap();
        assert_eq!(c.doc(0).content, b"ba");

        let err = Corpus::load(&dir.join("missing")).unwrap_err();
        assert!(err.to_string().contains("missing"));
        fs::remove_dir_all(&dir).unwrap();
    }
}
