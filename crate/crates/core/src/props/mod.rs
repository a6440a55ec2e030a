//! Property augmentation of the suffix tree and the per-locus candidate
//! resolvers used at query time.
//!
//! Squares and palindromes get explicit, flagged loci. Every primitively
//! rooted square is extended towards the leaves while its period persists;
//! nodes on such an extension carry the period, and where the periodicity
//! ends inside an edge a node is inserted so each maximal extension ends at
//! an explicit node. A locus strictly inside an edge is periodic exactly
//! when both edge endpoints carry the same period.

mod eertree;
mod squarefree;

pub use eertree::distinct_palindromes;
pub use squarefree::{SquareFreeTables, INF};

use crate::corpus::GlobalText;
use crate::gst::{LevelAncestors, Locus, NodeId, SuffixTree, NIL};
use crate::suffix::{minimal_suffix_scan, Run, SuffixArray};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareAnnotations {
    pub(crate) is_square: Vec<bool>,
    pub(crate) nearest_square: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicAnnotations {
    /// Period of the extension a node lies on, 0 when none.
    pub(crate) ext_period: Vec<u32>,
    pub(crate) nearest_periodic: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PalindromeAnnotations {
    pub(crate) is_palindrome: Vec<bool>,
    pub(crate) nearest_palindrome: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyIndex {
    pub square: SquareAnnotations,
    pub periodic: PeriodicAnnotations,
    pub palindrome: PalindromeAnnotations,
    pub squarefree: SquareFreeTables,
}

/// Counts gathered while augmenting the tree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct AugmentStats {
    pub distinct_squares: usize,
    pub primitive_squares: usize,
    pub distinct_palindromes: usize,
    pub periodic_endpoints: usize,
    /// Square loci strictly inside one original edge, maximized over edges.
    pub max_squares_per_edge: usize,
    pub max_palindromes_per_edge: usize,
    pub max_periodic_per_edge: usize,
    /// All inserted nodes on one original edge, maximized over edges.
    pub max_inserted_per_edge: usize,
    /// Extension steps that met a node already claimed by another period.
    pub periodic_conflicts: usize,
}

impl SquareAnnotations {
    pub fn is_square(&self, v: NodeId) -> bool {
        self.is_square[v as usize]
    }

    pub fn nearest(&self, v: NodeId) -> NodeId {
        self.nearest_square[v as usize]
    }
}

impl PalindromeAnnotations {
    pub fn is_palindrome(&self, v: NodeId) -> bool {
        self.is_palindrome[v as usize]
    }

    pub fn nearest(&self, v: NodeId) -> NodeId {
        self.nearest_palindrome[v as usize]
    }
}

impl PeriodicAnnotations {
    pub fn ext_period(&self, v: NodeId) -> Option<u32> {
        let p = self.ext_period[v as usize];
        (p != 0).then_some(p)
    }

    pub fn nearest(&self, v: NodeId) -> NodeId {
        self.nearest_periodic[v as usize]
    }
}

/// Ancestor-or-self nearest to each node satisfying `mark`; the root when
/// none does. Ids index `tree`.
fn nearest_marked(tree: &SuffixTree, mark: impl Fn(NodeId) -> bool) -> Vec<NodeId> {
    let mut out = vec![NIL; tree.len()];
    for v in tree.preorder() {
        let p = tree.parent(v);
        out[v as usize] = if mark(v) || p == NIL {
            v
        } else {
            out[p as usize]
        };
    }
    out
}

impl PropertyIndex {
    /// Augments `tree` in place. `sa` is the suffix array bundle of `text`
    /// and `runs` its runs.
    pub fn build(
        tree: &mut SuffixTree,
        text: &GlobalText,
        sa: &SuffixArray,
        runs: &[Run],
    ) -> (PropertyIndex, AugmentStats) {
        let original = LevelAncestors::new(tree, true);
        let mut stats = AugmentStats::default();
        let insert = |tree: &mut SuffixTree, pos: usize, len: usize| {
            tree.insert_locus(text, &original, pos, len)
                .expect("square or palindrome lies inside a document")
        };

        // squares: inside a run of period p, the square of length 2mp at
        // start j equals the one at j + p, so p starts per length suffice
        let mut square_nodes = Vec::new();
        let mut primitive: Vec<(NodeId, u32)> = Vec::new();
        for run in runs {
            let p = run.period;
            let mut m = 1;
            while 2 * m * p <= run.len() {
                let len = 2 * m * p;
                for j in run.start..=(run.start + p - 1).min(run.end - len) {
                    let v = insert(tree, j, len);
                    square_nodes.push(v);
                    if m == 1 {
                        primitive.push((v, p as u32));
                    }
                }
                m += 1;
            }
        }

        let mut palindrome_nodes = Vec::new();
        for d in 0..text.k() {
            let base = text.doc_start(d);
            for (s, len) in distinct_palindromes(text.doc_symbols(d)) {
                palindrome_nodes.push(insert(tree, base + s, len));
            }
        }

        // periodic extensions, shortest squares first
        primitive.sort_unstable_by_key(|&(v, p)| (p, v));
        primitive.dedup();
        stats.primitive_squares = primitive.len();
        let mut ext = vec![0u32; tree.len()];
        let mut endpoints = Vec::new();
        let mut stack = Vec::new();
        for &(sq, p) in &primitive {
            if ext[sq as usize] != 0 {
                stats.periodic_conflicts += 1;
                continue;
            }
            ext[sq as usize] = p;
            stack.push(sq);
            while let Some(u) = stack.pop() {
                let du = tree.depth(u);
                for i in 0..tree.children(u).len() {
                    let c = tree.children(u)[i].1;
                    let g = tree.occ(c) as usize;
                    let reach = (p as usize + sa.lce(g, g + p as usize)).min(tree.depth(c) as usize)
                        as u32;
                    if reach == tree.depth(c) {
                        if ext[c as usize] != 0 {
                            stats.periodic_conflicts += 1;
                            continue;
                        }
                        ext[c as usize] = p;
                        stack.push(c);
                    } else if reach > du {
                        let m = tree.split_edge(text, c, reach);
                        ext.resize(tree.len(), 0);
                        ext[m as usize] = p;
                        endpoints.push(m);
                    }
                }
            }
        }
        ext.resize(tree.len(), 0);
        stats.periodic_endpoints = endpoints.len();

        let total = tree.len();
        let mut is_square = vec![false; total];
        for &v in &square_nodes {
            is_square[v as usize] = true;
        }
        let mut is_palindrome = vec![false; total];
        for &v in &palindrome_nodes {
            is_palindrome[v as usize] = true;
        }
        stats.distinct_squares = is_square.iter().filter(|&&b| b).count();
        stats.distinct_palindromes = is_palindrome.iter().filter(|&&b| b).count();

        // inserted loci per original edge
        let mut is_endpoint = vec![false; total];
        for &v in &endpoints {
            is_endpoint[v as usize] = true;
        }
        let mut per_edge = vec![[0usize; 4]; tree.original_count()];
        for v in tree.original_count()..total {
            let v = v as NodeId;
            let e = &mut per_edge[tree.original_below(v) as usize];
            e[0] += is_square[v as usize] as usize;
            e[1] += is_palindrome[v as usize] as usize;
            e[2] += is_endpoint[v as usize] as usize;
            e[3] += 1;
        }
        for e in &per_edge {
            stats.max_squares_per_edge = stats.max_squares_per_edge.max(e[0]);
            stats.max_palindromes_per_edge = stats.max_palindromes_per_edge.max(e[1]);
            stats.max_periodic_per_edge = stats.max_periodic_per_edge.max(e[2]);
            stats.max_inserted_per_edge = stats.max_inserted_per_edge.max(e[3]);
        }

        let nearest_square = nearest_marked(tree, |v| is_square[v as usize]);
        let nearest_palindrome = nearest_marked(tree, |v| is_palindrome[v as usize]);
        let nearest_periodic = nearest_marked(tree, |v| ext[v as usize] != 0);
        let squarefree = SquareFreeTables::build(text, runs);
        (
            PropertyIndex {
                square: SquareAnnotations {
                    is_square,
                    nearest_square,
                },
                periodic: PeriodicAnnotations {
                    ext_period: ext,
                    nearest_periodic,
                },
                palindrome: PalindromeAnnotations {
                    is_palindrome,
                    nearest_palindrome,
                },
                squarefree,
            },
            stats,
        )
    }

    /// Length of the longest square prefix of the locus string.
    pub fn candidate_square(&self, tree: &SuffixTree, locus: Locus) -> u32 {
        tree.depth(self.square.nearest(explicit_base(tree, locus)))
    }

    /// Length of the longest palindromic prefix of the locus string.
    pub fn candidate_palindrome(&self, tree: &SuffixTree, locus: Locus) -> u32 {
        tree.depth(self.palindrome.nearest(explicit_base(tree, locus)))
    }

    /// Length of the longest periodic prefix of the locus string.
    pub fn candidate_periodic(&self, tree: &SuffixTree, locus: Locus) -> u32 {
        let v = locus.node;
        if locus.depth == tree.depth(v) {
            return tree.depth(self.periodic.nearest(v));
        }
        let p = tree.parent(v);
        let ext = &self.periodic.ext_period;
        if ext[p as usize] != 0 && ext[p as usize] == ext[v as usize] {
            locus.depth
        } else {
            tree.depth(self.periodic.nearest(p))
        }
    }

    /// Length of the longest square-free prefix of `T[pos .. pos + len]`.
    pub fn candidate_squarefree(&self, pos: usize, len: usize) -> usize {
        self.squarefree.candidate(pos, len)
    }
}

/// Deepest explicit node at or above the locus.
#[inline]
fn explicit_base(tree: &SuffixTree, locus: Locus) -> NodeId {
    if locus.depth == tree.depth(locus.node) {
        locus.node
    } else {
        tree.parent(locus.node)
    }
}

/// Best Lyndon substring among those ending in a window of new end
/// positions: `T[g .. g + len]` spells `y[i .. i + len]`, and only ends at
/// `y` positions `first_end ..= i + len - 1` are examined. Returns
/// `(length, start in y)` of the longest, leftmost on ties.
pub fn lyndon_candidate(
    text: &GlobalText,
    scratch: &mut Vec<usize>,
    g: usize,
    i: usize,
    len: usize,
    first_end: usize,
) -> Option<(usize, usize)> {
    if len == 0 || first_end >= i + len {
        return None;
    }
    let mut best: Option<(usize, usize)> = None;
    let skip = first_end.saturating_sub(i);
    minimal_suffix_scan(text, g, g + len - 1, scratch, |r, ms| {
        if r - g < skip {
            return;
        }
        let cand = (r - ms + 1, i + (ms - g));
        if best.is_none_or(|(bl, bs)| cand.0 > bl || (cand.0 == bl && cand.1 < bs)) {
            best = Some(cand);
        }
    })
    .expect("matched string lies inside one document");
    best
}

#[cfg(test)]
mod tests;
