//! k'-matching statistics of a query against the document-count filtered
//! suffix tree, computed in one streaming pass with constant state.

use crate::corpus::{GlobalText, Symbol};
use crate::gst::{LevelAncestors, Locus, NodeId, SuffixTree};
use crate::index::{Index, InvalidThreshold};

/// The statistic for query position `start`: `y[start .. start + len]` is
/// the longest prefix of `y[start..]` occurring in at least k' documents,
/// spelled by `locus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Emission {
    pub start: usize,
    pub len: usize,
    pub locus: Locus,
}

impl Emission {
    /// Exclusive end of the matched string in `y`.
    pub fn end(&self) -> usize {
        self.start + self.len
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CursorStats {
    /// Binary searches among children.
    pub child_searches: u64,
    /// Most inserted (unlinked) nodes climbed before a suffix link.
    pub max_unlinked_climb: u32,
}

/// Position in the tree plus the query offsets it stands for. `node` is the
/// child-side node of the locus; the root when nothing is matched.
#[derive(Debug, Clone)]
pub struct MsCursor<'a> {
    tree: &'a SuffixTree,
    text: &'a GlobalText,
    k_prime: u32,
    node: NodeId,
    len: u32,
    start: usize,
    stats: CursorStats,
}

impl<'a> MsCursor<'a> {
    pub fn new(index: &'a Index, k_prime: usize) -> Result<MsCursor<'a>, InvalidThreshold> {
        let k_prime = index.check_threshold(k_prime)?;
        Ok(MsCursor {
            tree: index.tree(),
            text: index.text(),
            k_prime,
            node: index.tree().root(),
            len: 0,
            start: 0,
            stats: CursorStats::default(),
        })
    }

    pub fn stats(&self) -> CursorStats {
        self.stats
    }

    /// Locus of the string currently matched, `y[start .. start + len]`.
    pub fn locus(&self) -> Locus {
        Locus {
            node: self.node,
            depth: self.len,
        }
    }

    /// Number of symbols consumed so far.
    pub fn position(&self) -> usize {
        self.start + self.len as usize
    }

    fn emission(&self) -> Emission {
        Emission {
            start: self.start,
            len: self.len as usize,
            locus: self.locus(),
        }
    }

    fn try_extend(&mut self, c: Symbol) -> bool {
        let tree = self.tree;
        if self.len == tree.depth(self.node) {
            self.stats.child_searches += 1;
            match tree.child(self.node, c) {
                Some(w) if tree.doc_count(w) >= self.k_prime => {
                    self.node = w;
                    self.len += 1;
                    true
                }
                _ => false,
            }
        } else if self.text.at((tree.occ(self.node) + self.len) as usize) == c {
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Consumes one query symbol, emitting the statistic of every position
    /// whose match cannot be extended by it. `None` never matches.
    pub fn feed(&mut self, symbol: Option<Symbol>, mut emit: impl FnMut(Emission)) {
        loop {
            if let Some(c) = symbol {
                if self.try_extend(c) {
                    return;
                }
            }
            emit(self.emission());
            if self.len == 0 {
                self.start += 1;
                return;
            }
            self.shift();
        }
    }

    /// Emits the statistics of all positions still pending at the end of `y`.
    pub fn finish(&mut self, mut emit: impl FnMut(Emission)) {
        while self.len > 0 {
            emit(self.emission());
            self.shift();
        }
    }

    /// Drops the first matched symbol: suffix link from the nearest linked
    /// ancestor, then skip/count back down to one symbol less.
    fn shift(&mut self) {
        let tree = self.tree;
        let g = tree.occ(self.node) as usize;
        let target = self.len - 1;
        self.start += 1;
        self.len = target;
        if target == 0 {
            self.node = tree.root();
            return;
        }
        let (cur, depth, climbed) = link_base(tree, self.node, target + 1);
        self.stats.max_unlinked_climb = self.stats.max_unlinked_climb.max(climbed);
        let (mut cur, mut depth) = (cur, depth);
        while depth < target {
            let c = self.text.at(g + 1 + depth as usize);
            self.stats.child_searches += 1;
            let w = tree.child(cur, c).expect("suffix of a matched string is present");
            if tree.depth(w) >= target {
                cur = w;
                break;
            }
            cur = w;
            depth = tree.depth(w);
        }
        self.node = cur;
    }
}

/// For the locus `(node, len)` with `len >= 1`: the suffix-link target of
/// its nearest linked explicit ancestor, that target's depth, and how many
/// unlinked nodes were climbed past.
#[inline]
fn link_base(tree: &SuffixTree, node: NodeId, len: u32) -> (NodeId, u32, u32) {
    let root = tree.root();
    let mut base = if len == tree.depth(node) {
        node
    } else {
        tree.parent(node)
    };
    let mut climbed = 0;
    loop {
        if base == root {
            return (root, 0, climbed);
        }
        if let Some(l) = tree.suffix_link(base) {
            return (l, tree.depth(base) - 1, climbed);
        }
        base = tree.parent(base);
        climbed += 1;
    }
}

/// All statistics of `y` in position order.
pub fn matching_statistics(
    index: &Index,
    y: &[Option<Symbol>],
    k_prime: usize,
) -> Result<Vec<Emission>, InvalidThreshold> {
    let mut cursor = MsCursor::new(index, k_prime)?;
    let mut out = Vec::with_capacity(y.len());
    for &s in y {
        cursor.feed(s, |e| out.push(e));
    }
    cursor.finish(|e| out.push(e));
    Ok(out)
}

/// Statistics of `y = x_1 # x_2 # ... # x_k` (`#` matching nothing), where
/// every branch choice follows the leaf of the current corpus suffix with a
/// level-ancestor query instead of a child search.
pub fn offline_matching_statistics(
    index: &Index,
    k_prime: usize,
    mut emit: impl FnMut(Emission),
) -> Result<CursorStats, InvalidThreshold> {
    let k_prime = index.check_threshold(k_prime)?;
    let tree = index.tree();
    let text = index.text();
    let la = index.ancestors();
    let root = tree.root();
    let mut stats = CursorStats::default();
    let mut offset = 0;
    for d in 0..text.k() {
        let base = text.doc_start(d);
        let n_d = text.doc_len(d);
        let (mut node, mut len) = (root, 0u32);
        for i in 0..n_d {
            let leaf = tree.leaf_of_suffix(base + i);
            let cap = (n_d - i) as u32;
            extend_toward(tree, la, leaf, cap, k_prime, &mut node, &mut len);
            emit(Emission {
                start: offset + i,
                len: len as usize,
                locus: Locus { node, depth: len },
            });
            if len == 0 {
                continue;
            }
            let (mut cur, mut depth, climbed) = link_base(tree, node, len);
            stats.max_unlinked_climb = stats.max_unlinked_climb.max(climbed);
            let target = len - 1;
            let next_leaf = tree.leaf_of_suffix(base + i + 1);
            while depth < target {
                let w = la.level_ancestor(next_leaf, la.node_depth(cur) + 1);
                cur = w;
                if tree.depth(w) >= target {
                    break;
                }
                depth = tree.depth(w);
            }
            node = cur;
            len = target;
        }
        offset += n_d;
        if d + 1 < text.k() {
            emit(Emission {
                start: offset,
                len: 0,
                locus: Locus {
                    node: root,
                    depth: 0,
                },
            });
            offset += 1;
        }
    }
    Ok(stats)
}

/// Extends the locus `(node, len)` on the path to `leaf` as far as the
/// document-count filter allows, stopping `cap` symbols below the root.
fn extend_toward(
    tree: &SuffixTree,
    la: &LevelAncestors,
    leaf: NodeId,
    cap: u32,
    k_prime: u32,
    node: &mut NodeId,
    len: &mut u32,
) {
    loop {
        if *len < tree.depth(*node) {
            // inside an edge already admitted by the filter
            let reach = tree.depth(*node).min(cap);
            *len = reach;
            if reach < tree.depth(*node) {
                return;
            }
            continue;
        }
        if *len == cap {
            return;
        }
        let w = la.level_ancestor(leaf, la.node_depth(*node) + 1);
        if tree.doc_count(w) < k_prime {
            return;
        }
        *node = w;
        *len += 1;
    }
}
