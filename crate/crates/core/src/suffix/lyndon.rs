//! Lyndon factorization and minimal suffixes of every prefix, both driven by
//! Duval's algorithm.

use crate::corpus::GlobalText;

/// Lyndon factorization of `s` as `(start, len)` pairs, left to right.
pub fn lyndon_factorize<T: Ord>(s: &[T]) -> Vec<(usize, usize)> {
    let n = s.len();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            factors.push((i, j - k));
            i += j - k;
        }
    }
    factors
}

/// Start of the minimal suffix of `s[..=r]` for every `r`, written to `out`.
///
/// The minimal suffix of a prefix is the last factor of its Lyndon
/// factorization. While Duval's scan sits in a state `u^t u'` (`u` Lyndon,
/// `u'` a proper prefix of `u`), that last factor is the last factor of the
/// earlier prefix ending `u'`, shifted by a whole number of periods; every
/// answer is therefore O(1) from one already computed.
pub fn minimal_suffixes_into<T: Ord>(s: &[T], out: &mut Vec<usize>) {
    let n = s.len();
    out.clear();
    out.resize(n, 0);
    let mut done = 0;
    let mut i = 0;
    while i < n {
        if i >= done {
            out[i] = i;
            done = i + 1;
        }
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
            if j > done {
                let p = j - k;
                let rem = (j - i) % p;
                out[j - 1] = if rem == 0 {
                    j - p
                } else {
                    out[i + rem - 1] + (j - i - rem)
                };
                done = j;
            }
        }
        while i <= k {
            i += j - k;
        }
    }
}

pub fn minimal_suffixes<T: Ord>(s: &[T]) -> Vec<usize> {
    let mut out = Vec::new();
    minimal_suffixes_into(s, &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("range {start}..={end} crosses a document boundary")]
pub struct RangeCrossesBoundary {
    pub start: usize,
    pub end: usize,
}

/// For every `r` in `l..=r_max` reports the start of the minimal suffix of
/// `text[l..=r]`, which is also its longest Lyndon suffix. One left-to-right
/// pass; `scratch` is caller-owned and reused.
pub fn minimal_suffix_scan(
    text: &GlobalText,
    l: usize,
    r_max: usize,
    scratch: &mut Vec<usize>,
    mut emit: impl FnMut(usize, usize),
) -> Result<(), RangeCrossesBoundary> {
    if l > r_max || r_max >= text.len() || !text.in_one_doc(l, r_max - l + 1) {
        return Err(RangeCrossesBoundary {
            start: l,
            end: r_max,
        });
    }
    minimal_suffixes_into(&text.symbols()[l..=r_max], scratch);
    for (off, &ms) in scratch.iter().enumerate() {
        emit(l + off, l + ms);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;
    use crate::suffix::predicates::is_lyndon;

    fn brute_min_suffix(s: &[u8]) -> usize {
        (0..s.len()).min_by(|&a, &b| s[a..].cmp(&s[b..])).unwrap()
    }

    fn text(s: &[u8]) -> Vec<(usize, usize)> {
        lyndon_factorize(s)
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(text(b"banana"), vec![(0, 1), (1, 2), (3, 2), (5, 1)]);
        assert_eq!(text(b"aaa"), vec![(0, 1), (1, 1), (2, 1)]);
        assert_eq!(text(b"aab"), vec![(0, 3)]);
    }

    #[test]
    fn minimal_suffix_examples() {
        assert_eq!(minimal_suffixes(b"abaab"), vec![0, 0, 2, 3, 2]);
        assert_eq!(minimal_suffixes(b"aaa"), vec![0, 1, 2]);
        assert_eq!(minimal_suffixes(b"z"), vec![0]);
    }

    #[test]
    fn factorization_exhaustive() {
        for len in 1..=12 {
            for bits in 0u32..(1 << len) {
                let s: Vec<u8> = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
                let f = lyndon_factorize(&s);
                let mut pos = 0;
                for w in f.windows(2) {
                    let (a, b) = (&s[w[0].0..w[0].0 + w[0].1], &s[w[1].0..w[1].0 + w[1].1]);
                    assert!(a >= b);
                }
                for &(st, l) in &f {
                    assert_eq!(st, pos);
                    assert!(is_lyndon(&s[st..st + l]));
                    pos += l;
                }
                assert_eq!(pos, s.len());
            }
        }
    }

    #[test]
    fn minimal_suffixes_exhaustive_ternary() {
        for len in 1..=8u32 {
            for code in 0..3u32.pow(len) {
                let s: Vec<u8> = (0..len).map(|i| ((code / 3u32.pow(i)) % 3) as u8).collect();
                let ms = minimal_suffixes(&s);
                for r in 0..s.len() {
                    assert_eq!(ms[r], brute_min_suffix(&s[..=r]), "{s:?} r={r}");
                }
            }
        }
    }

    #[test]
    fn scan_respects_boundaries() {
        let c = Corpus::from_strs(&["abaab", "ba"]).unwrap();
        let t = c.concatenate();
        let mut scratch = Vec::new();
        let mut got = Vec::new();
        minimal_suffix_scan(&t, 0, 4, &mut scratch, |r, p| got.push((r, p))).unwrap();
        assert_eq!(got, vec![(0, 0), (1, 0), (2, 2), (3, 3), (4, 2)]);
        got.clear();
        minimal_suffix_scan(&t, 3, 3, &mut scratch, |r, p| got.push((r, p))).unwrap();
        assert_eq!(got, vec![(3, 3)]);
        assert!(minimal_suffix_scan(&t, 3, 6, &mut scratch, |_, _| {}).is_err());
        assert!(minimal_suffix_scan(&t, 5, 5, &mut scratch, |_, _| {}).is_err());
    }
}
