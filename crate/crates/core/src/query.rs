//! Longest common property-preserved substring queries.

use serde::Serialize;

use crate::corpus::Symbol;
use crate::gst::Occurrence;
use crate::index::{Index, InvalidThreshold};
use crate::ms::{offline_matching_statistics, CursorStats, Emission, MsCursor};
use crate::props::lyndon_candidate;
use crate::suffix::Property;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QueryResult {
    pub property: Property,
    /// Answer length; 0 when no substring qualifies.
    pub length: usize,
    /// 0-based start in `y` of the leftmost longest answer.
    pub start: usize,
    /// An occurrence of the answer in the corpus.
    pub witness: Option<Occurrence>,
    /// Documents containing the answer, recounted from the tree.
    pub docs_matched: usize,
}

#[derive(Debug, Clone, Copy, Default)]
struct Best {
    len: usize,
    start: usize,
    /// Global text position of a witness occurrence.
    pos: usize,
}

impl Best {
    fn offer(&mut self, len: usize, start: usize, pos: usize) {
        if len > self.len || (len == self.len && len > 0 && start < self.start) {
            *self = Best { len, start, pos };
        }
    }
}

const MAX_PROPERTIES: usize = Property::ALL.len();

/// Candidate resolution shared by the online and offline paths.
#[derive(Debug)]
struct Resolver {
    properties: [Property; MAX_PROPERTIES],
    count: usize,
    best: [Best; MAX_PROPERTIES],
    prev_end: usize,
    scratch: Vec<usize>,
}

impl Clone for Resolver {
    /// The scratch buffer holds no state between emissions, so a fork
    /// starts with an empty one.
    fn clone(&self) -> Resolver {
        Resolver {
            scratch: Vec::new(),
            ..*self
        }
    }
}

impl Resolver {
    fn new(properties: &[Property]) -> Resolver {
        assert!(
            !properties.is_empty() && properties.len() <= MAX_PROPERTIES,
            "between one and {MAX_PROPERTIES} properties per query"
        );
        let mut list = [Property::SquareFree; MAX_PROPERTIES];
        list[..properties.len()].copy_from_slice(properties);
        Resolver {
            properties: list,
            count: properties.len(),
            best: [Best::default(); MAX_PROPERTIES],
            prev_end: 0,
            scratch: Vec::new(),
        }
    }

    fn resolve(&mut self, index: &Index, e: Emission) {
        let tree = index.tree();
        let props = index.props();
        let g = tree.occ(e.locus.node) as usize;
        let count = self.count;
        for (p, best) in self.properties[..count].iter().zip(&mut self.best) {
            if e.len == 0 {
                break;
            }
            match p {
                Property::SquareFree => {
                    best.offer(props.candidate_squarefree(g, e.len), e.start, g);
                }
                Property::Square => {
                    best.offer(props.candidate_square(tree, e.locus) as usize, e.start, g);
                }
                Property::Periodic => {
                    best.offer(props.candidate_periodic(tree, e.locus) as usize, e.start, g);
                }
                Property::Palindrome => {
                    best.offer(props.candidate_palindrome(tree, e.locus) as usize, e.start, g);
                }
                Property::Lyndon => {
                    let first_end = self.prev_end.max(e.start);
                    if let Some((len, start)) = lyndon_candidate(
                        index.text(),
                        &mut self.scratch,
                        g,
                        e.start,
                        e.len,
                        first_end,
                    ) {
                        best.offer(len, start, g + (start - e.start));
                    }
                }
            }
        }
        self.prev_end = e.end();
    }

    fn results(&self, index: &Index) -> Vec<QueryResult> {
        self.properties[..self.count]
            .iter()
            .zip(&self.best)
            .map(|(&property, b)| {
                if b.len == 0 {
                    return QueryResult {
                        property,
                        length: 0,
                        start: 0,
                        witness: None,
                        docs_matched: 0,
                    };
                }
                let text = index.text();
                QueryResult {
                    property,
                    length: b.len,
                    start: b.start,
                    witness: Some(Occurrence {
                        doc: text.doc_of(b.pos),
                        start: text.local_of(b.pos),
                        len: b.len,
                    }),
                    docs_matched: index.docs_containing(b.pos, b.len),
                }
            })
            .collect()
    }
}

/// A streaming query answering several properties at once. Cloning forks
/// the query at the current position.
#[derive(Debug, Clone)]
pub struct QuerySession<'a> {
    index: &'a Index,
    cursor: MsCursor<'a>,
    resolver: Resolver,
}

impl<'a> QuerySession<'a> {
    pub fn new(
        index: &'a Index,
        k_prime: usize,
        properties: &[Property],
    ) -> Result<QuerySession<'a>, InvalidThreshold> {
        Ok(QuerySession {
            index,
            cursor: MsCursor::new(index, k_prime)?,
            resolver: Resolver::new(properties),
        })
    }

    pub fn push(&mut self, symbol: Option<Symbol>) {
        let QuerySession {
            index,
            cursor,
            resolver,
        } = self;
        cursor.feed(symbol, |e| resolver.resolve(index, e));
    }

    pub fn push_byte(&mut self, b: u8) {
        self.push(self.index.corpus().map_symbol(b));
    }

    pub fn stats(&self) -> CursorStats {
        self.cursor.stats()
    }

    /// Results in the order the properties were given.
    pub fn finish(self) -> Vec<QueryResult> {
        let QuerySession {
            index,
            mut cursor,
            mut resolver,
        } = self;
        cursor.finish(|e| resolver.resolve(index, e));
        resolver.results(index)
    }
}

pub fn query_symbols(
    index: &Index,
    y: &[Option<Symbol>],
    k_prime: usize,
    property: Property,
) -> Result<QueryResult, InvalidThreshold> {
    let mut session = QuerySession::new(index, k_prime, &[property])?;
    for &s in y {
        session.push(s);
    }
    Ok(session.finish()[0])
}

pub fn query(
    index: &Index,
    y: &[u8],
    k_prime: usize,
    property: Property,
) -> Result<QueryResult, InvalidThreshold> {
    query_symbols(index, &index.encode(y), k_prime, property)
}

/// The query `y = x_1 # ... # x_k` over the corpus itself, using
/// level-ancestor steps instead of child searches.
pub fn self_query_offline(
    index: &Index,
    k_prime: usize,
    properties: &[Property],
) -> Result<(Vec<QueryResult>, CursorStats), InvalidThreshold> {
    let mut resolver = Resolver::new(properties);
    let stats = offline_matching_statistics(index, k_prime, |e| resolver.resolve(index, e))?;
    Ok((resolver.results(index), stats))
}

/// Symbols of `x_1 # ... # x_k`, each `#` a `None` that matches nothing.
pub fn offline_query_symbols(index: &Index) -> Vec<Option<Symbol>> {
    let text = index.text();
    let mut y = Vec::with_capacity(text.len());
    for d in 0..text.k() {
        if d > 0 {
            y.push(None);
        }
        y.extend(text.doc_symbols(d).iter().map(|&s| Some(s)));
    }
    y
}
