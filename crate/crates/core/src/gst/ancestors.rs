//! Level-ancestor queries by jump pointers and ladders.
//!
//! The tree is split into longest paths; each path is stored as a ladder
//! extended upwards by its own length. The bottom leaf of every ladder keeps
//! jump pointers to its `2^j`-th ancestors. One jump followed by one ladder
//! lookup lands on any ancestor, so a query is O(1).

use super::{NodeId, SuffixTree, NIL};

/// Parent steps tried before the binary search in `weighted_ancestor`.
const SHORT_CLIMB: usize = 4;

#[derive(Debug, Clone)]
pub struct LevelAncestors {
    /// Number of edges from the root; `u32::MAX` for nodes not covered.
    node_depth: Vec<u32>,
    ladder_of: Vec<u32>,
    ladders: Vec<NodeId>,
    ladder_start: Vec<u32>,
    /// Node depth of each ladder's first (highest) entry.
    ladder_top: Vec<u32>,
    jumps: Vec<NodeId>,
    jump_start: Vec<u32>,
    original_only: bool,
}

impl LevelAncestors {
    /// Preprocesses the nodes reachable from the root of `tree`, or only the
    /// original (pre-insertion) topology when `original_only` is set.
    pub fn new(tree: &SuffixTree, original_only: bool) -> LevelAncestors {
        let total = if original_only {
            tree.original_count()
        } else {
            tree.len()
        };
        let root = tree.root();

        // Children under the requested topology. For the original topology
        // every inserted chain is skipped down to the original node below it.
        let kids = |v: NodeId, out: &mut Vec<NodeId>| {
            out.clear();
            for &(_, c) in tree.children(v) {
                let mut c = c;
                if original_only {
                    while !tree.is_original(c) {
                        c = tree.children(c)[0].1;
                    }
                }
                out.push(c);
            }
        };

        // preorder and depths
        let mut node_depth = vec![u32::MAX; total];
        let mut parent = vec![NIL; total];
        let mut order = Vec::with_capacity(total);
        let mut stack = vec![root];
        let mut buf = Vec::new();
        node_depth[root as usize] = 0;
        while let Some(v) = stack.pop() {
            order.push(v);
            kids(v, &mut buf);
            for &c in buf.iter().rev() {
                node_depth[c as usize] = node_depth[v as usize] + 1;
                parent[c as usize] = v;
                stack.push(c);
            }
        }

        // heights and the deepest child of every node
        let mut height = vec![0u32; total];
        let mut heavy = vec![NIL; total];
        for &v in order.iter().rev() {
            let p = parent[v as usize];
            if p != NIL && (heavy[p as usize] == NIL || height[v as usize] + 1 > height[p as usize])
            {
                height[p as usize] = height[v as usize] + 1;
                heavy[p as usize] = v;
            }
        }

        let mut ladder_of = vec![u32::MAX; total];
        let mut ladders = Vec::with_capacity(2 * order.len());
        let mut ladder_start = Vec::new();
        let mut ladder_top = Vec::new();
        let mut path = Vec::new();
        let mut above = Vec::new();
        for &top in &order {
            let p = parent[top as usize];
            if p != NIL && heavy[p as usize] == top {
                continue;
            }
            path.clear();
            let mut v = top;
            while v != NIL {
                path.push(v);
                v = heavy[v as usize];
            }
            above.clear();
            let mut u = p;
            while u != NIL && above.len() < path.len() {
                above.push(u);
                u = parent[u as usize];
            }
            let id = ladder_start.len() as u32;
            ladder_start.push(ladders.len() as u32);
            ladder_top.push(node_depth[top as usize] - above.len() as u32);
            ladders.extend(above.iter().rev());
            ladders.extend(&path);
            for &x in &path {
                ladder_of[x as usize] = id;
            }
        }
        ladder_start.push(ladders.len() as u32);

        // jump pointers from each ladder's bottom leaf, via the root path
        let ladder_count = ladder_top.len();
        let mut jump_start = vec![0u32; ladder_count + 1];
        let mut jumps = Vec::new();
        let mut root_path: Vec<NodeId> = Vec::new();
        let mut dfs = vec![(root, false)];
        let mut per_ladder: Vec<(u32, Vec<NodeId>)> = Vec::with_capacity(ladder_count);
        while let Some((v, leaving)) = dfs.pop() {
            if leaving {
                root_path.pop();
                continue;
            }
            root_path.push(v);
            dfs.push((v, true));
            kids(v, &mut buf);
            if buf.is_empty() {
                let d = root_path.len() - 1;
                let mut js = Vec::new();
                let mut step = 1;
                while step <= d {
                    js.push(root_path[d - step]);
                    step *= 2;
                }
                per_ladder.push((ladder_of[v as usize], js));
            }
            for &c in buf.iter().rev() {
                dfs.push((c, false));
            }
        }
        per_ladder.sort_unstable_by_key(|(l, _)| *l);
        for (l, js) in per_ladder {
            jump_start[l as usize] = jumps.len() as u32;
            jumps.extend(js);
        }
        jump_start[ladder_count] = jumps.len() as u32;

        LevelAncestors {
            node_depth,
            ladder_of,
            ladders,
            ladder_start,
            ladder_top,
            jumps,
            jump_start,
            original_only,
        }
    }

    /// Number of edges between the root and `v`.
    #[inline]
    pub fn node_depth(&self, v: NodeId) -> u32 {
        self.node_depth[v as usize]
    }

    #[inline]
    fn ladder_lookup(&self, ladder: usize, d: u32) -> Option<NodeId> {
        let top = self.ladder_top[ladder];
        if d < top {
            return None;
        }
        let at = self.ladder_start[ladder] + (d - top);
        debug_assert!(at < self.ladder_start[ladder + 1]);
        Some(self.ladders[at as usize])
    }

    /// Ancestor of `v` at node depth `d` (`d <= node_depth(v)`).
    pub fn level_ancestor(&self, v: NodeId, d: u32) -> NodeId {
        let dv = self.node_depth(v);
        assert!(d <= dv, "level {d} below node at level {dv}");
        if d == dv {
            return v;
        }
        let ladder = self.ladder_of[v as usize] as usize;
        if let Some(u) = self.ladder_lookup(ladder, d) {
            return u;
        }
        // jump from the ladder's bottom leaf, then one more ladder lookup
        let bottom = self.ladders[self.ladder_start[ladder + 1] as usize - 1];
        let delta = self.node_depth(bottom) - d;
        let j = 31 - delta.leading_zeros();
        let w = self.jumps[(self.jump_start[ladder] + j) as usize];
        self.ladder_lookup(self.ladder_of[w as usize] as usize, d)
            .expect("ladder covers the jump target")
    }

    /// Shallowest ancestor-or-self `u` of `v` with `tree.depth(u) >= depth`,
    /// i.e. the child-side node of the locus at that string depth.
    pub fn weighted_ancestor(&self, tree: &SuffixTree, v: NodeId, depth: u32) -> NodeId {
        debug_assert!(tree.depth(v) >= depth);
        // most answers sit a few nodes up; try those before searching
        let mut u = v;
        for _ in 0..SHORT_CLIMB {
            let mut parent = tree.parent(u);
            while self.original_only && parent != NIL && !tree.is_original(parent) {
                parent = tree.parent(parent);
            }
            if parent == NIL || tree.depth(parent) < depth {
                return u;
            }
            u = parent;
        }
        let (mut lo, mut hi) = (0u32, self.node_depth(u));
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if tree.depth(self.level_ancestor(u, mid)) >= depth {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        self.level_ancestor(u, lo)
    }
}
