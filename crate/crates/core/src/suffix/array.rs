use super::rmq::RangeMin;
use super::sais;

/// Suffix array, inverse suffix array and LCP array with range-minimum
/// support, which together answer longest-common-extension queries.
#[derive(Debug, Clone)]
pub struct SuffixArray {
    sa: Vec<u32>,
    rank: Vec<u32>,
    lcp: RangeMin,
}

impl SuffixArray {
    /// Builds the bundle over `text`; all symbols must be `<= upper`.
    pub fn new(text: &[u32], upper: u32) -> SuffixArray {
        assert!(!text.is_empty(), "suffix array of empty text");
        let sa = sais::suffix_array(text, upper);
        let mut rank = vec![0u32; sa.len()];
        for (r, &p) in sa.iter().enumerate() {
            rank[p as usize] = r as u32;
        }
        let lcp = kasai(text, &sa, &rank);
        SuffixArray {
            sa,
            rank,
            lcp: RangeMin::new(lcp),
        }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    pub fn rank(&self) -> &[u32] {
        &self.rank
    }

    /// `lcp[r]` is the common prefix length of suffixes `sa[r - 1]` and
    /// `sa[r]`; `lcp[0] = 0`.
    pub fn lcp(&self) -> &[u32] {
        self.lcp.values()
    }

    /// Rank boundary in `lo..=hi` carrying the minimum LCP value.
    pub fn lcp_argmin(&self, lo: usize, hi: usize) -> usize {
        self.lcp.argmin(lo, hi)
    }

    /// Length of the longest common prefix of the suffixes at `i` and `j`.
    pub fn lce(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.sa.len() - i;
        }
        let (a, b) = (self.rank[i] as usize, self.rank[j] as usize);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.lcp.min(lo + 1, hi) as usize
    }
}

fn kasai(text: &[u32], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_lcp(a: &[u32], b: &[u32]) -> usize {
        a.iter().zip(b).take_while(|(x, y)| x == y).count()
    }

    #[test]
    fn abaab_bundle() {
        // "abaab$", sentinel sorting last
        let b = SuffixArray::new(&[0, 1, 0, 0, 1, 2], 2);
        assert_eq!(b.sa(), &[2, 0, 3, 1, 4, 5]);
        assert_eq!(&b.lcp()[1..], &[1, 2, 0, 1, 0]);
        assert_eq!(b.lce(0, 3), 2);
        assert_eq!(b.lce(1, 4), 1);
        assert_eq!(b.lce(2, 2), 4);
    }

    #[test]
    fn exhaustive_binary_lcp() {
        for len in 1..=12 {
            for bits in 0u32..(1 << len) {
                let s: Vec<u32> = (0..len).map(|i| (bits >> i) & 1).collect();
                let b = SuffixArray::new(&s, 1);
                for r in 1..len {
                    let (x, y) = (b.sa()[r - 1] as usize, b.sa()[r] as usize);
                    assert!(s[x..] < s[y..]);
                    assert_eq!(b.lcp()[r] as usize, naive_lcp(&s[x..], &s[y..]));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn lce_matches_scan(s in proptest::collection::vec(0u32..3, 2..500), pairs in proptest::collection::vec((any::<u16>(), any::<u16>()), 50)) {
            let b = SuffixArray::new(&s, 2);
            for (x, y) in pairs {
                let (i, j) = (x as usize % s.len(), y as usize % s.len());
                prop_assert_eq!(b.lce(i, j), naive_lcp(&s[i..], &s[j..]));
            }
        }
    }
}
