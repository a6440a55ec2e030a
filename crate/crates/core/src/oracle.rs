//! Brute-force reference answers computed straight from the definitions.
//! Nothing here touches suffix arrays, runs or the tree.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::suffix::Property;

pub const DEFAULT_TABLE_BOUND: usize = 64;

fn is_square(s: &[u8]) -> bool {
    let h = s.len() / 2;
    !s.is_empty() && s.len().is_multiple_of(2) && s[..h] == s[h..]
}

fn has_period(s: &[u8], p: usize) -> bool {
    (p..s.len()).all(|i| s[i] == s[i - p])
}

fn is_periodic(s: &[u8]) -> bool {
    !s.is_empty() && (1..=s.len() / 2).any(|p| has_period(s, p))
}

fn is_palindrome(s: &[u8]) -> bool {
    !s.is_empty() && (0..s.len() / 2).all(|i| s[i] == s[s.len() - 1 - i])
}

fn is_lyndon(s: &[u8]) -> bool {
    !s.is_empty() && (1..s.len()).all(|i| s < &s[i..])
}

fn is_square_free(s: &[u8]) -> bool {
    if s.is_empty() {
        return false;
    }
    for i in 0..s.len() {
        for j in i + 1..=s.len() {
            if is_square(&s[i..j]) {
                return false;
            }
        }
    }
    true
}

/// Definition-level property check; the empty string satisfies nothing.
pub fn satisfies(property: Property, s: &[u8]) -> bool {
    match property {
        Property::SquareFree => is_square_free(s),
        Property::Square => is_square(s),
        Property::Periodic => is_periodic(s),
        Property::Palindrome => is_palindrome(s),
        Property::Lyndon => is_lyndon(s),
    }
}

fn contains(doc: &[u8], w: &[u8]) -> bool {
    w.is_empty() || doc.windows(w.len()).any(|x| x == w)
}

/// Number of documents containing `w`.
pub fn doc_frequency<D: AsRef<[u8]>>(docs: &[D], w: &[u8]) -> usize {
    docs.iter().filter(|d| contains(d.as_ref(), w)).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// 0-based start in `y`.
    pub start: usize,
    pub substring: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub length: usize,
    /// Every start in `y` of a longest answer, ascending, with its bytes.
    pub witnesses: Vec<(usize, Vec<u8>)>,
}

/// Longest substring of `y` satisfying `property` and occurring in at least
/// `k_prime` documents, by enumeration longest-first.
pub fn oracle_query<D: AsRef<[u8]>>(
    docs: &[D],
    y: &[u8],
    k_prime: usize,
    property: Property,
) -> OracleReport {
    for len in (1..=y.len()).rev() {
        let witnesses: Vec<(usize, Vec<u8>)> = (0..=y.len() - len)
            .filter(|&i| {
                let w = &y[i..i + len];
                satisfies(property, w) && doc_frequency(docs, w) >= k_prime
            })
            .map(|i| (i, y[i..i + len].to_vec()))
            .collect();
        if !witnesses.is_empty() {
            return OracleReport {
                length: len,
                witnesses,
            };
        }
    }
    OracleReport {
        length: 0,
        witnesses: Vec::new(),
    }
}

/// Distinct substrings of `s` satisfying `property`.
pub fn oracle_distinct(property: Property, s: &[u8]) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    for i in 0..s.len() {
        for j in i + 1..=s.len() {
            if satisfies(property, &s[i..j]) {
                out.insert(s[i..j].to_vec());
            }
        }
    }
    out
}

/// k'-matching statistics by direct membership counting.
pub fn oracle_ms<D: AsRef<[u8]>>(docs: &[D], y: &[u8], k_prime: usize) -> Vec<usize> {
    (0..y.len())
        .map(|i| {
            (1..=y.len() - i)
                .take_while(|&l| doc_frequency(docs, &y[i..i + l]) >= k_prime)
                .last()
                .unwrap_or(0)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("string of length {len} exceeds the oracle bound {bound}")]
pub struct BoundExceeded {
    pub len: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleTables {
    /// Runs as `(start, end_exclusive, period)`, sorted.
    pub runs: Vec<(usize, usize, usize)>,
    /// Shortest square ending at each position.
    pub sq_end: Vec<Option<usize>>,
    /// `min_suffix[l][r - l]`: start of the minimal suffix of `s[l..=r]`.
    pub min_suffix: Vec<Vec<usize>>,
    /// Lyndon factorization as `(start, len)`.
    pub lyndon: Vec<(usize, usize)>,
}

fn smallest_period(s: &[u8]) -> usize {
    (1..=s.len()).find(|&p| has_period(s, p)).unwrap_or(0)
}

/// Runs, square ends, minimal suffixes and Lyndon factorization of `s`.
pub fn oracle_tables(s: &[u8], bound: usize) -> Result<OracleTables, BoundExceeded> {
    let n = s.len();
    if n > bound {
        return Err(BoundExceeded { len: n, bound });
    }
    let mut runs = Vec::new();
    for i in 0..n {
        for j in i + 1..=n {
            let p = smallest_period(&s[i..j]);
            if 2 * p > j - i {
                continue;
            }
            let left = i > 0 && s[i - 1] == s[i - 1 + p];
            let right = j < n && s[j] == s[j - p];
            if !left && !right {
                runs.push((i, j, p));
            }
        }
    }
    let sq_end = (0..n)
        .map(|j| (1..=j + 1).find(|&l| is_square(&s[j + 1 - l..=j])))
        .collect();
    let min_suffix = (0..n)
        .map(|l| {
            (l..n)
                .map(|r| (l..=r).min_by(|&a, &b| s[a..=r].cmp(&s[b..=r])).unwrap())
                .collect()
        })
        .collect();
    // the factorization takes the longest Lyndon prefix at every step
    let mut lyndon = Vec::new();
    let mut i = 0;
    while i < n {
        let len = (1..=n - i).rev().find(|&l| is_lyndon(&s[i..i + l])).unwrap();
        lyndon.push((i, len));
        i += len;
    }
    Ok(OracleTables {
        runs,
        sq_end,
        min_suffix,
        lyndon,
    })
}

/// One line of a golden file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRecord {
    pub corpus: Vec<String>,
    pub y: String,
    pub k: usize,
    pub property: Property,
    pub length: usize,
    pub witnesses: Vec<Witness>,
}

impl GoldenRecord {
    pub fn compute(corpus: &[&str], y: &str, k: usize, property: Property) -> GoldenRecord {
        let report = oracle_query(corpus, y.as_bytes(), k, property);
        GoldenRecord {
            corpus: corpus.iter().map(|s| s.to_string()).collect(),
            y: y.to_string(),
            k,
            property,
            length: report.length,
            witnesses: report
                .witnesses
                .into_iter()
                .map(|(start, w)| Witness {
                    start,
                    substring: String::from_utf8_lossy(&w).into_owned(),
                })
                .collect(),
        }
    }
}
