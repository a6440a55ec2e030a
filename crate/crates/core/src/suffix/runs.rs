//! Runs (maximal repetitions) through Lyndon roots.
//!
//! For a run with period `p` ending before position `e`, choose the symbol
//! order under which `T[e]` is smaller than `T[e - p]`. Under that order each
//! Lyndon root of the run is the longest Lyndon word starting at its
//! position, i.e. it ends at the next lexicographically smaller suffix. So
//! scanning the next-smaller-suffix array for both orders and extending each
//! candidate root with forward and backward LCE finds every run; we keep a
//! candidate only for the order matching its right end and only for the
//! leftmost root, so each run is reported once.

use std::cmp::Ordering;

use super::array::SuffixArray;
use crate::corpus::GlobalText;

/// A maximal periodic substring `[start, end)` with smallest period `period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Run {
    pub start: usize,
    pub end: usize,
    pub period: usize,
}

impl Run {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Order {
    Natural,
    Inverted,
}

/// All runs of every document of `text`, sorted by `(start, end, period)`.
/// `fwd` must be the suffix array bundle of `text`.
pub fn compute_runs(text: &GlobalText, fwd: &SuffixArray) -> Vec<Run> {
    let t = text.symbols();
    let n = t.len();
    let upper = text.sigma() + text.k() as u32;
    let reversed: Vec<u32> = t.iter().rev().copied().collect();
    let bwd = SuffixArray::new(&reversed, upper);
    // common suffix length of t[..=a] and t[..=b]
    let lcs = |a: usize, b: usize| bwd.lce(n - 1 - a, n - 1 - b);

    let mut runs = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut next_smaller = vec![0usize; n];
    for order in [Order::Natural, Order::Inverted] {
        let less = |i: usize, j: usize| -> bool {
            match order {
                Order::Natural => fwd.rank()[i] < fwd.rank()[j],
                Order::Inverted => {
                    let l = fwd.lce(i, j);
                    t[i + l] > t[j + l]
                }
            }
        };
        stack.clear();
        for i in (0..n).rev() {
            while let Some(&top) = stack.last() {
                if less(top, i) {
                    break;
                }
                stack.pop();
            }
            next_smaller[i] = stack.last().copied().unwrap_or(n);
            stack.push(i);
        }

        for i in 0..n {
            let j = next_smaller[i];
            if j >= n || text.is_sentinel(i) {
                continue;
            }
            let p = j - i;
            let end = j + fwd.lce(i, j);
            let back = if i > 0 { lcs(i - 1, j - 1) } else { 0 };
            if back >= p {
                continue; // not the leftmost root
            }
            let start = i - back;
            if end - start < 2 * p {
                continue;
            }
            let ends_smaller = match t[end].cmp(&t[end - p]) {
                Ordering::Less => order == Order::Natural,
                Ordering::Greater => order == Order::Inverted,
                Ordering::Equal => unreachable!("run is right-maximal"),
            };
            if ends_smaller {
                runs.push(Run {
                    start,
                    end,
                    period: p,
                });
            }
        }
    }
    runs.sort_unstable();
    runs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;
    use std::collections::BTreeSet;

    fn runs_of(docs: &[&[u8]]) -> (GlobalText, Vec<Run>) {
        let c = Corpus::from_strs(docs).unwrap();
        let t = c.concatenate();
        let sa = SuffixArray::new(t.symbols(), t.sigma() + t.k() as u32);
        let runs = compute_runs(&t, &sa);
        (t, runs)
    }

    fn has_period(s: &[u8], p: usize) -> bool {
        (0..s.len() - p).all(|i| s[i] == s[i + p])
    }

    fn smallest(s: &[u8]) -> usize {
        (1..=s.len()).find(|&p| has_period(s, p)).unwrap()
    }

    /// Every (start, end, period) triple checked against the definition.
    fn brute_runs(s: &[u8]) -> BTreeSet<(usize, usize, usize)> {
        let n = s.len();
        let mut out = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..=n {
                let w = &s[i..j];
                let p = smallest(w);
                if 2 * p > w.len() {
                    continue;
                }
                let left = i > 0 && s[i - 1] == s[i - 1 + p];
                let right = j < n && s[j] == s[j - p];
                if !left && !right {
                    out.insert((i, j, p));
                }
            }
        }
        out
    }

    fn as_set(runs: &[Run]) -> BTreeSet<(usize, usize, usize)> {
        runs.iter().map(|r| (r.start, r.end, r.period)).collect()
    }

    #[test]
    fn examples() {
        let (_, r) = runs_of(&[b"aabaabaa"]);
        assert_eq!(
            as_set(&r),
            [(0, 2, 1), (3, 5, 1), (6, 8, 1), (0, 8, 3)].into_iter().collect()
        );
        assert!(runs_of(&[b"abc"]).1.is_empty());
        assert_eq!(as_set(&runs_of(&[b"aaaa"]).1), [(0, 4, 1)].into_iter().collect());
    }

    #[test]
    fn exhaustive_binary() {
        for len in 1..=14 {
            for bits in 0u32..(1 << len) {
                let s: Vec<u8> = (0..len).map(|i| b'a' + ((bits >> i) & 1) as u8).collect();
                let (_, r) = runs_of(&[&s]);
                assert_eq!(r.len(), as_set(&r).len(), "duplicate runs in {s:?}");
                assert_eq!(as_set(&r), brute_runs(&s), "{:?}", String::from_utf8_lossy(&s));
                assert!(r.len() < s.len());
            }
        }
    }

    #[test]
    fn runs_stay_inside_documents() {
        let docs: [&[u8]; 3] = [b"abab", b"abaa", b"bbab"];
        let (t, r) = runs_of(&docs);
        let mut expect = BTreeSet::new();
        for (d, doc) in docs.iter().enumerate() {
            let base = t.doc_start(d);
            for (i, j, p) in brute_runs(doc) {
                expect.insert((base + i, base + j, p));
            }
        }
        assert_eq!(as_set(&r), expect);
    }
}
