//! Suffix array construction by induced sorting.

const NONE: u32 = u32::MAX;
const NAIVE_BELOW: usize = 16;

/// Suffix array of `s`, whose symbols must all be `<= upper`.
pub fn suffix_array(s: &[u32], upper: u32) -> Vec<u32> {
    assert!(s.len() < NONE as usize, "text too long for 32-bit positions");
    sa_is(s, upper as usize)
}

fn sa_naive(s: &[u32]) -> Vec<u32> {
    let mut sa: Vec<u32> = (0..s.len() as u32).collect();
    sa.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
    sa
}

fn sa_is(s: &[u32], upper: usize) -> Vec<u32> {
    let n = s.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        _ if n < NAIVE_BELOW => return sa_naive(s),
        _ => {}
    }

    // ls[i]: suffix i is S-type
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] {
            ls[i + 1]
        } else {
            s[i] < s[i + 1]
        };
    }
    let mut sum_l = vec![0usize; upper + 2];
    let mut sum_s = vec![0usize; upper + 2];
    for i in 0..n {
        if !ls[i] {
            sum_s[s[i] as usize] += 1;
        } else {
            sum_l[s[i] as usize + 1] += 1;
        }
    }
    for i in 0..=upper {
        sum_s[i] += sum_l[i];
        if i < upper {
            sum_l[i + 1] += sum_s[i];
        }
    }

    let mut sa = vec![NONE; n];
    let mut buf = vec![0usize; upper + 2];
    let mut induce = |sa: &mut [u32], lms: &[u32]| {
        sa.fill(NONE);
        buf.copy_from_slice(&sum_s);
        for &d in lms {
            let d = d as usize;
            if d == n {
                continue;
            }
            let c = s[d] as usize;
            sa[buf[c]] = d as u32;
            buf[c] += 1;
        }
        buf.copy_from_slice(&sum_l);
        let c = s[n - 1] as usize;
        sa[buf[c]] = (n - 1) as u32;
        buf[c] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != NONE && v >= 1 && !ls[v as usize - 1] {
                let c = s[v as usize - 1] as usize;
                sa[buf[c]] = v - 1;
                buf[c] += 1;
            }
        }
        buf.copy_from_slice(&sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != NONE && v >= 1 && ls[v as usize - 1] {
                let c = s[v as usize - 1] as usize + 1;
                buf[c] -= 1;
                sa[buf[c]] = v - 1;
            }
        }
    };

    let mut lms_map = vec![NONE; n + 1];
    let mut lms = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len() as u32;
            lms.push(i as u32);
        }
    }
    let m = lms.len();

    induce(&mut sa, &lms);

    if m > 0 {
        let mut sorted_lms: Vec<u32> = sa
            .iter()
            .copied()
            .filter(|&v| v != NONE && lms_map[v as usize] != NONE)
            .collect();
        let mut rec_s = vec![0u32; m];
        let mut rec_upper = 0u32;
        rec_s[lms_map[sorted_lms[0] as usize] as usize] = 0;
        for i in 1..m {
            let mut l = sorted_lms[i - 1] as usize;
            let mut r = sorted_lms[i] as usize;
            let next = |x: usize| {
                let id = lms_map[x] as usize + 1;
                if id < m {
                    lms[id] as usize
                } else {
                    n
                }
            };
            let end_l = next(l);
            let end_r = next(r);
            let mut same = true;
            if end_l - l != end_r - r {
                same = false;
            } else {
                while l < end_l {
                    if s[l] != s[r] {
                        break;
                    }
                    l += 1;
                    r += 1;
                }
                if l == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec_s[lms_map[sorted_lms[i] as usize] as usize] = rec_upper;
        }

        let rec_sa = sa_is(&rec_s, rec_upper as usize);
        for (slot, &r) in sorted_lms.iter_mut().zip(&rec_sa) {
            *slot = lms[r as usize];
        }
        induce(&mut sa, &sorted_lms);
    }
    sa
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        // "abaab$" with $ largest
        assert_eq!(suffix_array(&[0, 1, 0, 0, 1, 2], 2), vec![2, 0, 3, 1, 4, 5]);
        assert_eq!(suffix_array(&[0, 0, 1], 1), vec![0, 1, 2]);
    }

    #[test]
    fn exhaustive_binary() {
        for len in 1..=12 {
            for bits in 0u32..(1 << len) {
                let s: Vec<u32> = (0..len).map(|i| (bits >> i) & 1).collect();
                assert_eq!(suffix_array(&s, 1), sa_naive(&s), "{s:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn matches_naive(s in proptest::collection::vec(0u32..5, 0..300)) {
            prop_assert_eq!(suffix_array(&s, 4), sa_naive(&s));
        }

        #[test]
        fn matches_naive_repetitive(unit in proptest::collection::vec(0u32..3, 1..5), reps in 1usize..60) {
            let s: Vec<u32> = unit.iter().copied().cycle().take(unit.len() * reps).collect();
            prop_assert_eq!(suffix_array(&s, 2), sa_naive(&s));
        }
    }
}
