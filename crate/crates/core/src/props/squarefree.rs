//! Position tables for longest square-free prefixes.

use crate::corpus::GlobalText;
use crate::suffix::Run;

pub const INF: u32 = u32::MAX;

/// Both tables are indexed by global position; sentinel entries are `INF`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeTables {
    /// Length of the shortest square ending at each position.
    pub(crate) sq_end: Vec<u32>,
    /// Smallest `j` in the same document whose shortest square ending at `j`
    /// starts at or after the position.
    pub(crate) h: Vec<u32>,
}

impl SquareFreeTables {
    pub fn build(text: &GlobalText, runs: &[Run]) -> SquareFreeTables {
        let n = text.len();
        let mut sq_end = vec![INF; n];

        // paint end positions in ascending period order; `next` skips
        // positions already painted by a shorter square
        let mut by_period: Vec<&Run> = runs.iter().collect();
        by_period.sort_by_key(|r| r.period);
        let mut next: Vec<u32> = (0..=n as u32).collect();
        fn find(next: &mut [u32], mut j: usize) -> usize {
            let mut root = j;
            while next[root] as usize != root {
                root = next[root] as usize;
            }
            while next[j] as usize != root {
                let up = next[j] as usize;
                next[j] = root as u32;
                j = up;
            }
            root
        }
        for run in by_period {
            let lo = run.start + 2 * run.period - 1;
            let mut j = find(&mut next, lo);
            while j < run.end {
                sq_end[j] = 2 * run.period as u32;
                next[j] = j as u32 + 1;
                j = find(&mut next, j + 1);
            }
        }

        // h[b] = min { j : j - sq_end[j] + 1 >= b }, swept right to left
        let mut h = vec![INF; n];
        let mut first_at: Vec<u32> = vec![INF; n];
        for (j, &len) in sq_end.iter().enumerate() {
            if len != INF {
                let s = j + 1 - len as usize;
                first_at[s] = first_at[s].min(j as u32);
            }
        }
        for d in 0..text.k() {
            let mut best = INF;
            for b in (text.doc_start(d)..text.doc_end(d)).rev() {
                best = best.min(first_at[b]);
                h[b] = best;
            }
        }
        SquareFreeTables { sq_end, h }
    }

    pub fn sq_end(&self) -> &[u32] {
        &self.sq_end
    }

    pub fn h(&self) -> &[u32] {
        &self.h
    }

    /// Longest square-free prefix of `T[pos .. pos + len]`.
    pub fn candidate(&self, pos: usize, len: usize) -> usize {
        if len == 0 {
            return 0;
        }
        let h = self.h[pos];
        if h != INF && (h as usize) < pos + len {
            h as usize - pos
        } else {
            len
        }
    }

    pub(crate) fn from_parts(sq_end: Vec<u32>, h: Vec<u32>) -> SquareFreeTables {
        SquareFreeTables { sq_end, h }
    }
}
