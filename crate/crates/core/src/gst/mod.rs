//! Generalized suffix tree of the corpus, built from the suffix array and
//! LCP array, with suffix links, color set sizes and locus insertion.

mod ancestors;

pub use ancestors::LevelAncestors;

use std::ops::Range;

use crate::corpus::{GlobalText, Symbol};
use crate::suffix::SuffixArray;

pub type NodeId = u32;
pub const NIL: NodeId = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Node {
    pub parent: NodeId,
    /// Length of `str(v)` in symbols.
    pub depth: u32,
    /// Global position with `T[occ .. occ + depth] == str(v)`.
    pub occ: u32,
    pub suffix_link: NodeId,
    /// Number of documents containing `str(v)`.
    pub doc_count: u32,
    child_start: u32,
    child_len: u32,
}

/// A point in the tree: explicit when `depth == tree.depth(node)`,
/// otherwise on the edge entering `node`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Locus {
    pub node: NodeId,
    pub depth: u32,
}

/// A document-local occurrence: `x_doc[start .. start + len]`, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Occurrence {
    pub doc: usize,
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("invalid occurrence: {len} symbols at global position {pos}")]
pub struct InvalidOccurrence {
    pub pos: usize,
    pub len: usize,
}

#[derive(Debug, Clone)]
pub struct SuffixTree {
    nodes: Vec<Node>,
    /// Children of all nodes, each node's slice sorted by first symbol.
    children: Vec<(Symbol, NodeId)>,
    root: NodeId,
    original: u32,
    leaf_of_suffix: Vec<NodeId>,
}

/// Lowest common ancestors of leaves given by suffix-array ranks: the LCA of
/// ranks `a < b` owns the minimum LCP boundary in `(a, b]`.
pub struct RankLca<'a> {
    sa: &'a SuffixArray,
    /// Deepest node whose interval contains both ranks `r - 1` and `r`.
    owner: Vec<NodeId>,
    leaf_of_rank: Vec<NodeId>,
}

impl RankLca<'_> {
    pub fn lca(&self, a: usize, b: usize) -> NodeId {
        if a == b {
            return self.leaf_of_rank[a];
        }
        let (a, b) = (a.min(b), a.max(b));
        self.owner[self.sa.lcp_argmin(a + 1, b)]
    }
}

impl SuffixTree {
    /// Builds the pruned tree, its suffix links and document counts.
    pub fn build(text: &GlobalText, sa: &SuffixArray) -> SuffixTree {
        let (mut tree, lca, intervals) = Self::construct(text, sa);
        tree.link(text, sa, &lca, &intervals);
        tree.compute_doc_counts(text, &lca);
        tree
    }

    /// Returns the tree without links or counts, the LCA helper and the
    /// suffix-array interval of every node.
    #[allow(clippy::type_complexity)]
    fn construct<'a>(
        text: &GlobalText,
        bundle: &'a SuffixArray,
    ) -> (SuffixTree, RankLca<'a>, Vec<(u32, u32)>) {
        struct Open {
            depth: u32,
            lb: usize,
            first: usize,
            slot: usize,
        }

        let n = text.len();
        let t = text.symbols();
        let sa = bundle.sa();
        let lcp = bundle.lcp();
        let mut nodes: Vec<Node> = Vec::with_capacity(2 * n);
        let mut children = Vec::with_capacity(2 * n);
        let mut leaf_of_suffix = vec![NIL; n];
        let mut leaf_of_rank = vec![NIL; n];
        // boundary -> open interval slot -> node id once finalized
        let mut owner_slot = vec![0u32; n];
        let mut slot_node: Vec<NodeId> = vec![NIL];
        let mut pending: Vec<NodeId> = Vec::new();
        let mut intervals: Vec<(u32, u32)> = Vec::with_capacity(2 * n);
        let mut stack = vec![Open {
            depth: 0,
            lb: 0,
            first: 0,
            slot: 0,
        }];

        let mut finalize = |open: Open,
                            rb: usize,
                            nodes: &mut Vec<Node>,
                            pending: &mut Vec<NodeId>,
                            slot_node: &mut Vec<NodeId>,
                            intervals: &mut Vec<(u32, u32)>|
         -> NodeId {
            let id = nodes.len() as NodeId;
            let occ = sa[open.lb];
            let child_start = children.len() as u32;
            for c in pending.drain(open.first..) {
                nodes[c as usize].parent = id;
                let key = t[(nodes[c as usize].occ + open.depth) as usize];
                children.push((key, c));
            }
            let child_len = children.len() as u32 - child_start;
            debug_assert!(children[child_start as usize..]
                .windows(2)
                .all(|w| w[0].0 < w[1].0));
            intervals.push((open.lb as u32, rb as u32));
            nodes.push(Node {
                parent: NIL,
                depth: open.depth,
                occ,
                suffix_link: NIL,
                doc_count: 0,
                child_start,
                child_len,
            });
            slot_node[open.slot] = id;
            id
        };

        for r in 0..n {
            let p = sa[r] as usize;
            let leaf = nodes.len() as NodeId;
            nodes.push(Node {
                parent: NIL,
                depth: text.suffix_len(p) as u32,
                occ: p as u32,
                suffix_link: NIL,
                doc_count: 0,
                child_start: 0,
                child_len: 0,
            });
            leaf_of_suffix[p] = leaf;
            leaf_of_rank[r] = leaf;
            intervals.push((r as u32, r as u32));
            let mut last = leaf;
            let mut last_lb = r;
            let l = if r + 1 < n { lcp[r + 1] } else { 0 };
            while stack.last().expect("root stays open").depth > l {
                let open = stack.pop().unwrap();
                pending.push(last);
                last_lb = open.lb;
                last = finalize(
                    open,
                    r,
                    &mut nodes,
                    &mut pending,
                    &mut slot_node,
                    &mut intervals,
                );
            }
            if stack.last().unwrap().depth < l {
                stack.push(Open {
                    depth: l,
                    lb: last_lb,
                    first: pending.len(),
                    slot: slot_node.len(),
                });
                slot_node.push(NIL);
            }
            pending.push(last);
            if r + 1 < n {
                owner_slot[r + 1] = stack.last().unwrap().slot as u32;
            }
        }
        let root_open = stack.pop().unwrap();
        debug_assert!(stack.is_empty());
        let root = finalize(
            root_open,
            n - 1,
            &mut nodes,
            &mut pending,
            &mut slot_node,
            &mut intervals,
        );

        let owner = owner_slot.iter().map(|&s| slot_node[s as usize]).collect();
        let original = nodes.len() as u32;
        let tree = SuffixTree {
            nodes,
            children,
            root,
            original,
            leaf_of_suffix,
        };
        (
            tree,
            RankLca {
                sa: bundle,
                owner,
                leaf_of_rank,
            },
            intervals,
        )
    }

    fn link(
        &mut self,
        text: &GlobalText,
        bundle: &SuffixArray,
        lca: &RankLca,
        intervals: &[(u32, u32)],
    ) {
        let sa = bundle.sa();
        let rank = bundle.rank();
        let n = text.len();
        for v in 0..self.nodes.len() {
            let node = self.nodes[v];
            let v = v as NodeId;
            if v == self.root {
                continue;
            }
            let target = if node.child_len == 0 {
                let p = node.occ as usize;
                if text.is_sentinel(p) {
                    self.root
                } else {
                    self.leaf_of_suffix[p + 1]
                }
            } else if node.depth == 1 {
                self.root
            } else {
                // the leftmost and rightmost leaves below v differ in their
                // next symbol, so their shifted suffixes have LCA str(v)[1..]
                let (lb, rb) = intervals[v as usize];
                let a = sa[lb as usize] as usize + 1;
                let b = sa[rb as usize] as usize + 1;
                debug_assert!(a < n && b < n);
                lca.lca(rank[a] as usize, rank[b] as usize)
            };
            debug_assert!(
                self.nodes[target as usize].depth + 1 == node.depth || node.child_len == 0
            );
            self.nodes[v as usize].suffix_link = target;
        }
    }

    /// Color set sizes: every leaf counts its document once, and each pair
    /// of same-document leaves adjacent in suffix-array order cancels one
    /// count at their LCA. A subtree sum then yields distinct documents.
    fn compute_doc_counts(&mut self, text: &GlobalText, lca: &RankLca) {
        let n = text.len();
        let mut count = vec![0i64; self.nodes.len()];
        let mut last_rank = vec![usize::MAX; text.k()];
        for r in 0..n {
            let leaf = lca.leaf_of_rank[r];
            count[leaf as usize] += 1;
            let d = text.doc_of(self.nodes[leaf as usize].occ as usize);
            if last_rank[d] != usize::MAX {
                count[lca.lca(last_rank[d], r) as usize] -= 1;
            }
            last_rank[d] = r;
        }
        // children have smaller ids than parents
        for v in 0..self.nodes.len() {
            let p = self.nodes[v].parent;
            if p != NIL {
                count[p as usize] += count[v];
            }
            self.nodes[v].doc_count = count[v] as u32;
        }
    }

    #[inline]
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes with ids below this count come from the suffix array; the rest
    /// were made explicit by `insert_locus`.
    pub fn original_count(&self) -> usize {
        self.original as usize
    }

    #[inline]
    pub fn is_original(&self, v: NodeId) -> bool {
        v < self.original
    }

    #[inline]
    pub fn node(&self, v: NodeId) -> &Node {
        &self.nodes[v as usize]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    #[inline]
    pub fn depth(&self, v: NodeId) -> u32 {
        self.nodes[v as usize].depth
    }

    #[inline]
    pub fn parent(&self, v: NodeId) -> NodeId {
        self.nodes[v as usize].parent
    }

    #[inline]
    pub fn occ(&self, v: NodeId) -> u32 {
        self.nodes[v as usize].occ
    }

    #[inline]
    pub fn doc_count(&self, v: NodeId) -> u32 {
        self.nodes[v as usize].doc_count
    }

    #[inline]
    pub fn suffix_link(&self, v: NodeId) -> Option<NodeId> {
        let l = self.nodes[v as usize].suffix_link;
        (l != NIL).then_some(l)
    }

    #[inline]
    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.nodes[v as usize].child_len == 0
    }

    #[inline]
    pub fn children(&self, v: NodeId) -> &[(Symbol, NodeId)] {
        let n = &self.nodes[v as usize];
        &self.children[n.child_start as usize..(n.child_start + n.child_len) as usize]
    }

    /// Child of the explicit node `v` whose edge starts with `symbol`.
    #[inline]
    pub fn child(&self, v: NodeId, symbol: Symbol) -> Option<NodeId> {
        let kids = self.children(v);
        kids.binary_search_by_key(&symbol, |&(key, _)| key)
            .ok()
            .map(|i| kids[i].1)
    }

    /// Global text range labeling the edge into `v`.
    pub fn edge(&self, v: NodeId) -> Range<usize> {
        let node = &self.nodes[v as usize];
        let above = if node.parent == NIL {
            node.depth
        } else {
            self.depth(node.parent)
        };
        (node.occ + above) as usize..(node.occ + node.depth) as usize
    }

    /// `str(v)`; for leaves this ends with the document's sentinel.
    pub fn label<'t>(&self, text: &'t GlobalText, v: NodeId) -> &'t [Symbol] {
        let node = &self.nodes[v as usize];
        &text.symbols()[node.occ as usize..(node.occ + node.depth) as usize]
    }

    #[inline]
    pub fn leaf_of_suffix(&self, p: usize) -> NodeId {
        self.leaf_of_suffix[p]
    }

    pub fn explicit(&self, v: NodeId) -> Locus {
        Locus {
            node: v,
            depth: self.depth(v),
        }
    }

    /// Witness occurrence of the locus string; the root maps to `(0, 0, 0)`.
    pub fn occurrence_at(&self, text: &GlobalText, locus: Locus) -> Occurrence {
        if locus.depth == 0 {
            return Occurrence {
                doc: 0,
                start: 0,
                len: 0,
            };
        }
        let p = self.occ(locus.node) as usize;
        Occurrence {
            doc: text.doc_of(p),
            start: text.local_of(p),
            len: locus.depth as usize,
        }
    }

    /// Makes the locus of `T[pos .. pos + len]` explicit and returns its node.
    /// `original` must be the level-ancestor structure of the original
    /// topology; new nodes have no suffix link. Idempotent.
    pub fn insert_locus(
        &mut self,
        text: &GlobalText,
        original: &LevelAncestors,
        pos: usize,
        len: usize,
    ) -> Result<NodeId, InvalidOccurrence> {
        if pos >= text.len() || text.is_sentinel(pos) || !text.in_one_doc(pos, len) {
            return Err(InvalidOccurrence { pos, len });
        }
        if len == 0 {
            return Ok(self.root);
        }
        let len32 = len as u32;
        let leaf = self.leaf_of_suffix[pos];
        let mut v = original.weighted_ancestor(self, leaf, len32);
        // inserted nodes lie between v and its original parent
        loop {
            let p = self.parent(v);
            if p == NIL || self.is_original(p) || self.depth(p) < len32 {
                break;
            }
            v = p;
        }
        if self.depth(v) == len32 {
            return Ok(v);
        }
        Ok(self.split_edge(text, v, len32))
    }

    /// Splits the edge into `v` at string depth `depth` and returns the new
    /// node, which inherits occurrence and document count from `v`.
    pub fn split_edge(&mut self, text: &GlobalText, v: NodeId, depth: u32) -> NodeId {
        let below = self.nodes[v as usize];
        let p = below.parent;
        debug_assert!(self.depth(p) < depth && depth < below.depth);
        let id = self.nodes.len() as NodeId;
        let key_below = text.at((below.occ + depth) as usize);
        let key_above = text.at((below.occ + self.depth(p)) as usize);
        self.nodes.push(Node {
            parent: p,
            depth,
            occ: below.occ,
            suffix_link: NIL,
            doc_count: below.doc_count,
            child_start: self.children.len() as u32,
            child_len: 1,
        });
        self.children.push((key_below, v));
        self.nodes[v as usize].parent = id;
        let pn = self.nodes[p as usize];
        let slice =
            &mut self.children[pn.child_start as usize..(pn.child_start + pn.child_len) as usize];
        let i = slice
            .binary_search_by_key(&key_above, |&(key, _)| key)
            .expect("edge present in parent");
        debug_assert_eq!(slice[i].1, v);
        slice[i].1 = id;
        id
    }

    /// Nodes in preorder, children visited in symbol order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.children(v).iter().rev().map(|&(_, c)| c));
        }
        order
    }

    /// The original node at the bottom of the inserted chain containing `v`.
    pub fn original_below(&self, v: NodeId) -> NodeId {
        let mut v = v;
        while !self.is_original(v) {
            v = self.children(v)[0].1;
        }
        v
    }

    pub(crate) fn from_parts(
        nodes: Vec<Node>,
        children: Vec<(Symbol, NodeId)>,
        root: NodeId,
        original: u32,
        leaf_of_suffix: Vec<NodeId>,
    ) -> SuffixTree {
        SuffixTree {
            nodes,
            children,
            root,
            original,
            leaf_of_suffix,
        }
    }

    pub(crate) fn parts(&self) -> (&[Node], &[(Symbol, NodeId)], NodeId, u32, &[NodeId]) {
        (
            &self.nodes,
            &self.children,
            self.root,
            self.original,
            &self.leaf_of_suffix,
        )
    }
}

impl Node {
    pub(crate) fn raw(
        parent: NodeId,
        depth: u32,
        occ: u32,
        suffix_link: NodeId,
        doc_count: u32,
        child_start: u32,
        child_len: u32,
    ) -> Node {
        Node {
            parent,
            depth,
            occ,
            suffix_link,
            doc_count,
            child_start,
            child_len,
        }
    }

    pub(crate) fn child_range(&self) -> (u32, u32) {
        (self.child_start, self.child_len)
    }
}
