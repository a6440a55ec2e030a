//! Palindromic tree: every distinct palindrome of a string, one new
//! palindrome at most per appended symbol.

use std::collections::HashMap;
use std::hash::Hash;

/// Every distinct non-empty palindrome of `s` as `(start, len)` of its first
/// occurrence, in order of first occurrence end.
pub fn distinct_palindromes<T: Copy + Eq + Hash>(s: &[T]) -> Vec<(usize, usize)> {
    // node 0 is the imaginary root of length -1, node 1 the empty string
    let mut len: Vec<isize> = vec![-1, 0];
    let mut link: Vec<usize> = vec![0, 0];
    let mut edges: HashMap<(usize, T), usize> = HashMap::new();
    let mut out = Vec::new();
    let mut last = 1;
    let extends = |v: usize, i: usize, len: &[isize]| {
        let j = i as isize - 1 - len[v];
        j >= 0 && s[j as usize] == s[i]
    };
    for (i, &c) in s.iter().enumerate() {
        let mut cur = last;
        while !extends(cur, i, &len) {
            cur = link[cur];
        }
        if let Some(&v) = edges.get(&(cur, c)) {
            last = v;
            continue;
        }
        let l = len[cur] + 2;
        let suffix = if l == 1 {
            1
        } else {
            let mut w = link[cur];
            while !extends(w, i, &len) {
                w = link[w];
            }
            edges[&(w, c)]
        };
        let v = len.len();
        len.push(l);
        link.push(suffix);
        edges.insert((cur, c), v);
        out.push((i + 1 - l as usize, l as usize));
        last = v;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute(s: &[u8]) -> BTreeSet<Vec<u8>> {
        let mut out = BTreeSet::new();
        for i in 0..s.len() {
            for j in i + 1..=s.len() {
                let w = &s[i..j];
                if w.iter().eq(w.iter().rev()) {
                    out.insert(w.to_vec());
                }
            }
        }
        out
    }

    #[test]
    fn examples() {
        let got = |s: &[u8]| -> BTreeSet<Vec<u8>> {
            distinct_palindromes(s)
                .into_iter()
                .map(|(a, l)| s[a..a + l].to_vec())
                .collect()
        };
        assert_eq!(got(b"ababa").len(), 5);
        assert_eq!(got(b"aaa"), brute(b"aaa"));
        assert_eq!(got(b"ab").len(), 2);
    }

    #[test]
    fn exhaustive_ternary() {
        for len in 1..=8u32 {
            for code in 0..3u32.pow(len) {
                let s: Vec<u8> = (0..len).map(|i| ((code / 3u32.pow(i)) % 3) as u8).collect();
                let pals = distinct_palindromes(&s);
                let set: BTreeSet<Vec<u8>> =
                    pals.iter().map(|&(a, l)| s[a..a + l].to_vec()).collect();
                assert_eq!(set.len(), pals.len());
                assert_eq!(set, brute(&s), "{s:?}");
            }
        }
    }
}
