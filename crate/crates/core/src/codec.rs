//! Binary index file: magic `LCPS`, a version byte, a little-endian payload
//! and the CRC-32 of the payload. Counts are u64, array elements u32.
//! Derived structures (text, leaf table, level ancestors) are rebuilt on load.

use std::fs;
use std::io;
use std::path::Path;

use crate::corpus::{Corpus, CorpusError};
use crate::gst::{LevelAncestors, Node, NodeId, SuffixTree, NIL};
use crate::index::{BuildStats, Index};
use crate::props::{
    AugmentStats, PalindromeAnnotations, PeriodicAnnotations, PropertyIndex, SquareAnnotations,
    SquareFreeTables,
};

pub const MAGIC: &[u8; 4] = b"LCPS";
pub const VERSION: u8 = 1;
/// Every property has its annotations stored.
const ALL_ANNOTATIONS: u64 = 0b1_1111;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read index file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("not an index file (bad magic)")]
    BadMagic,
    #[error("unsupported index format version {0} (expected {VERSION})")]
    UnsupportedVersion(u8),
    #[error("index file is truncated")]
    Truncated,
    #[error("checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    Checksum { stored: u32, computed: u32 },
    #[error("inconsistent index file: {0}")]
    Inconsistent(String),
}

struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn u64(&mut self, x: u64) {
        self.buf.extend_from_slice(&x.to_le_bytes());
    }

    fn count(&mut self, x: usize) {
        self.u64(x as u64);
    }

    fn bytes(&mut self, b: &[u8]) {
        self.count(b.len());
        self.buf.extend_from_slice(b);
    }

    fn u32s(&mut self, xs: impl ExactSizeIterator<Item = u32>) {
        self.count(xs.len());
        for x in xs {
            self.buf.extend_from_slice(&x.to_le_bytes());
        }
    }
}

struct Reader<'a> {
    buf: &'a [u8],
}

fn inconsistent(msg: impl Into<String>) -> FormatError {
    FormatError::Inconsistent(msg.into())
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], FormatError> {
        if self.buf.len() < n {
            return Err(FormatError::Truncated);
        }
        let (head, rest) = self.buf.split_at(n);
        self.buf = rest;
        Ok(head)
    }

    fn u64(&mut self) -> Result<u64, FormatError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn count(&mut self) -> Result<usize, FormatError> {
        let x = self.u64()?;
        // every counted item takes at least one byte
        if x > self.buf.len() as u64 * 8 + 8 {
            return Err(FormatError::Truncated);
        }
        Ok(x as usize)
    }

    fn bytes(&mut self) -> Result<&'a [u8], FormatError> {
        let n = self.count()?;
        self.take(n)
    }

    fn u32s(&mut self) -> Result<Vec<u32>, FormatError> {
        let n = self.count()?;
        let raw = self.take(n.checked_mul(4).ok_or(FormatError::Truncated)?)?;
        Ok(raw
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }

    fn u32s_of_len(&mut self, len: usize, what: &str) -> Result<Vec<u32>, FormatError> {
        let v = self.u32s()?;
        if v.len() != len {
            return Err(inconsistent(format!("{what}: {} entries, expected {len}", v.len())));
        }
        Ok(v)
    }
}

fn stats_fields(s: &BuildStats) -> [u64; 11] {
    let a = &s.augment;
    [
        s.runs as u64,
        s.original_nodes as u64,
        a.distinct_squares as u64,
        a.primitive_squares as u64,
        a.distinct_palindromes as u64,
        a.periodic_endpoints as u64,
        a.max_squares_per_edge as u64,
        a.max_palindromes_per_edge as u64,
        a.max_periodic_per_edge as u64,
        a.max_inserted_per_edge as u64,
        a.periodic_conflicts as u64,
    ]
}

impl Index {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer { buf: Vec::new() };
        let corpus = &self.corpus;
        w.count(corpus.sigma());
        w.count(corpus.k());
        w.count(corpus.n());
        for d in corpus.docs() {
            w.count(d.len());
        }
        w.u64(ALL_ANNOTATIONS);
        w.bytes(corpus.alphabet());
        for d in corpus.docs() {
            w.bytes(d.name.as_bytes());
            w.buf.extend_from_slice(&d.content);
        }

        let (nodes, children, root, original, _) = self.tree.parts();
        w.count(nodes.len());
        w.count(original as usize);
        w.u64(root as u64);
        w.u32s(nodes.iter().map(|n| n.parent));
        w.u32s(nodes.iter().map(|n| n.depth));
        w.u32s(nodes.iter().map(|n| n.occ));
        w.u32s(nodes.iter().map(|n| n.suffix_link));
        w.u32s(nodes.iter().map(|n| n.doc_count));
        w.u32s(nodes.iter().map(|n| n.child_range().0));
        w.u32s(nodes.iter().map(|n| n.child_range().1));
        w.u32s(children.iter().map(|c| c.0));
        w.u32s(children.iter().map(|c| c.1));

        let p = &self.props;
        w.u32s(p.square.is_square.iter().map(|&b| b as u32));
        w.u32s(p.square.nearest_square.iter().copied());
        w.u32s(p.palindrome.is_palindrome.iter().map(|&b| b as u32));
        w.u32s(p.palindrome.nearest_palindrome.iter().copied());
        w.u32s(p.periodic.ext_period.iter().copied());
        w.u32s(p.periodic.nearest_periodic.iter().copied());
        w.u32s(p.squarefree.sq_end().iter().copied());
        w.u32s(p.squarefree.h().iter().copied());
        for x in stats_fields(&self.stats) {
            w.u64(x);
        }

        let payload = w.buf;
        let mut out = Vec::with_capacity(payload.len() + 9);
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&payload);
        out.extend_from_slice(&crc32fast::hash(&payload).to_le_bytes());
        out
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        fs::write(path, self.to_bytes())
    }

    pub fn load(path: &Path) -> Result<Index, FormatError> {
        let bytes = fs::read(path).map_err(|source| FormatError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Index::from_bytes(&bytes)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Index, FormatError> {
        if bytes.len() < 4 || &bytes[..4] != MAGIC {
            return Err(FormatError::BadMagic);
        }
        let version = *bytes.get(4).ok_or(FormatError::Truncated)?;
        if version != VERSION {
            return Err(FormatError::UnsupportedVersion(version));
        }
        if bytes.len() < 9 {
            return Err(FormatError::Truncated);
        }
        let (payload, crc) = bytes[5..].split_at(bytes.len() - 9);
        let stored = u32::from_le_bytes(crc.try_into().unwrap());
        let computed = crc32fast::hash(payload);
        if stored != computed {
            return Err(FormatError::Checksum { stored, computed });
        }
        decode(payload)
    }
}

fn decode(payload: &[u8]) -> Result<Index, FormatError> {
    let mut r = Reader { buf: payload };
    let sigma = r.count()?;
    let k = r.count()?;
    let n = r.count()?;
    let lens = (0..k).map(|_| r.count()).collect::<Result<Vec<_>, _>>()?;
    if lens.iter().sum::<usize>() != n {
        return Err(inconsistent("document lengths do not sum to n"));
    }
    if r.u64()? != ALL_ANNOTATIONS {
        return Err(inconsistent("missing property annotations"));
    }
    let alphabet = r.bytes()?.to_vec();
    let mut sources = Vec::with_capacity(k);
    for &len in &lens {
        let name = String::from_utf8_lossy(r.bytes()?).into_owned();
        sources.push((name, r.take(len)?.to_vec()));
    }
    let corpus = Corpus::ingest(sources).map_err(|e: CorpusError| inconsistent(e.to_string()))?;
    if corpus.sigma() != sigma || corpus.alphabet() != &alphabet[..] {
        return Err(inconsistent("alphabet does not match the documents"));
    }
    let text = corpus.concatenate();
    let total = text.len();

    let count = r.count()?;
    let original = r.count()?;
    let root = r.u64()?;
    if original > count || root >= original as u64 {
        return Err(inconsistent("node counts"));
    }
    let parent = r.u32s_of_len(count, "parent")?;
    let depth = r.u32s_of_len(count, "depth")?;
    let occ = r.u32s_of_len(count, "occ")?;
    let link = r.u32s_of_len(count, "suffix links")?;
    let doc_count = r.u32s_of_len(count, "document counts")?;
    let child_start = r.u32s_of_len(count, "child offsets")?;
    let child_len = r.u32s_of_len(count, "child counts")?;
    let keys = r.u32s()?;
    let ids = r.u32s_of_len(keys.len(), "children")?;

    let id_ok = |v: u32| (v as usize) < count;
    let mut nodes = Vec::with_capacity(count);
    let mut leaf_of_suffix = vec![NIL; total];
    for v in 0..count {
        let (s, l) = (child_start[v] as usize, child_len[v] as usize);
        let bad = (parent[v] != NIL && !id_ok(parent[v]))
            || (link[v] != NIL && !id_ok(link[v]))
            || s + l > ids.len()
            || occ[v] as usize + depth[v] as usize > total
            || ids[s..s + l].iter().any(|&c| !id_ok(c) || parent[c as usize] != v as u32);
        if bad {
            return Err(inconsistent(format!("node {v}")));
        }
        if l == 0 {
            if occ[v] as usize >= total || leaf_of_suffix[occ[v] as usize] != NIL {
                return Err(inconsistent(format!("leaf {v}")));
            }
            leaf_of_suffix[occ[v] as usize] = v as NodeId;
        }
        nodes.push(Node::raw(
            parent[v],
            depth[v],
            occ[v],
            link[v],
            doc_count[v],
            child_start[v],
            child_len[v],
        ));
    }
    if leaf_of_suffix.contains(&NIL) {
        return Err(inconsistent("missing leaves"));
    }
    let children = keys.into_iter().zip(ids).collect();
    let tree = SuffixTree::from_parts(nodes, children, root as NodeId, original as u32, leaf_of_suffix);

    let nodes_ok = |v: &[u32]| v.iter().all(|&x| id_ok(x));
    let is_square: Vec<bool> = r.u32s_of_len(count, "square flags")?.iter().map(|&b| b != 0).collect();
    let nearest_square = r.u32s_of_len(count, "square pointers")?;
    let is_palindrome: Vec<bool> =
        r.u32s_of_len(count, "palindrome flags")?.iter().map(|&b| b != 0).collect();
    let nearest_palindrome = r.u32s_of_len(count, "palindrome pointers")?;
    let ext_period = r.u32s_of_len(count, "periods")?;
    let nearest_periodic = r.u32s_of_len(count, "periodic pointers")?;
    if !nodes_ok(&nearest_square) || !nodes_ok(&nearest_palindrome) || !nodes_ok(&nearest_periodic)
    {
        return Err(inconsistent("annotation pointers"));
    }
    let sq_end = r.u32s_of_len(total, "square ends")?;
    let h = r.u32s_of_len(total, "square-free table")?;
    let mut f = [0u64; 11];
    for x in &mut f {
        *x = r.u64()?;
    }
    if !r.buf.is_empty() {
        return Err(inconsistent("trailing bytes"));
    }

    let props = PropertyIndex {
        square: SquareAnnotations {
            is_square,
            nearest_square,
        },
        periodic: PeriodicAnnotations {
            ext_period,
            nearest_periodic,
        },
        palindrome: PalindromeAnnotations {
            is_palindrome,
            nearest_palindrome,
        },
        squarefree: SquareFreeTables::from_parts(sq_end, h),
    };
    let stats = BuildStats {
        n,
        k,
        sigma,
        runs: f[0] as usize,
        original_nodes: f[1] as usize,
        nodes: count,
        augment: AugmentStats {
            distinct_squares: f[2] as usize,
            primitive_squares: f[3] as usize,
            distinct_palindromes: f[4] as usize,
            periodic_endpoints: f[5] as usize,
            max_squares_per_edge: f[6] as usize,
            max_palindromes_per_edge: f[7] as usize,
            max_periodic_per_edge: f[8] as usize,
            max_inserted_per_edge: f[9] as usize,
            periodic_conflicts: f[10] as usize,
        },
        build_ms: 0.0,
    };
    let ancestors = LevelAncestors::new(&tree, false);
    Ok(Index {
        corpus,
        text,
        tree,
        props,
        ancestors,
        stats,
    })
}
