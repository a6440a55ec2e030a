//! Constant-time range-minimum queries in linear space.
//!
//! Every position stores a 64-bit mask of the monotone minimum stack over
//! the preceding 64 positions, which answers any window of width <= 64 with
//! one bit scan. Longer ranges combine two such windows with a sparse table
//! over per-block minima.

const BLOCK: usize = 64;

#[derive(Debug, Clone)]
pub struct RangeMin {
    values: Vec<u32>,
    masks: Vec<u64>,
    // sparse[level][b]: argmin over blocks b .. b + 2^level
    sparse: Vec<Vec<u32>>,
}

impl RangeMin {
    pub fn new(values: Vec<u32>) -> RangeMin {
        let n = values.len();
        let mut masks = vec![0u64; n];
        let mut cur = 0u64;
        for i in 0..n {
            cur <<= 1;
            while cur != 0 {
                let d = cur.trailing_zeros() as usize;
                if values[i - d] >= values[i] {
                    cur &= cur - 1;
                } else {
                    break;
                }
            }
            cur |= 1;
            masks[i] = cur;
        }

        let blocks = n.div_ceil(BLOCK);
        let mut rm = RangeMin {
            values,
            masks,
            sparse: Vec::new(),
        };
        let base: Vec<u32> = (0..blocks)
            .map(|b| {
                let lo = b * BLOCK;
                let hi = (lo + BLOCK).min(n) - 1;
                rm.small(hi, hi - lo + 1) as u32
            })
            .collect();
        let mut sparse = vec![base];
        let mut width = 1;
        while 2 * width <= blocks {
            let prev = sparse.last().unwrap();
            let next: Vec<u32> = (0..=blocks - 2 * width)
                .map(|b| rm.pick(prev[b] as usize, prev[b + width] as usize) as u32)
                .collect();
            sparse.push(next);
            width *= 2;
        }
        rm.sparse = sparse;
        rm
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    fn pick(&self, a: usize, b: usize) -> usize {
        if self.values[b] < self.values[a] {
            b
        } else {
            a
        }
    }

    /// Argmin of the `size` positions ending at `r`.
    #[inline]
    fn small(&self, r: usize, size: usize) -> usize {
        let m = if size >= BLOCK {
            self.masks[r]
        } else {
            self.masks[r] & ((1u64 << size) - 1)
        };
        r - (63 - m.leading_zeros() as usize)
    }

    /// Position of a minimum in `lo..=hi`.
    pub fn argmin(&self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi && hi < self.values.len());
        if hi - lo < BLOCK {
            return self.small(hi, hi - lo + 1);
        }
        let mut best = self.pick(self.small(lo + BLOCK - 1, BLOCK), self.small(hi, BLOCK));
        let x = lo / BLOCK + 1;
        let y = hi / BLOCK;
        if x < y {
            let level = (usize::BITS - 1 - (y - x).leading_zeros()) as usize;
            let row = &self.sparse[level];
            best = self.pick(best, row[x] as usize);
            best = self.pick(best, row[y - (1 << level)] as usize);
        }
        best
    }

    pub fn min(&self, lo: usize, hi: usize) -> u32 {
        self.values[self.argmin(lo, hi)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn agrees_with_scan(values in proptest::collection::vec(0u32..20, 1..400), seed in any::<u64>()) {
            let rm = RangeMin::new(values.clone());
            let n = values.len();
            let mut x = seed;
            for _ in 0..200 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (x >> 33) as usize % n;
                let b = (x >> 13) as usize % n;
                let (lo, hi) = (a.min(b), a.max(b));
                let expect = *values[lo..=hi].iter().min().unwrap();
                let at = rm.argmin(lo, hi);
                prop_assert!(lo <= at && at <= hi);
                prop_assert_eq!(values[at], expect);
            }
        }
    }

    #[test]
    fn all_ranges_small() {
        let values: Vec<u32> = (0..300u32).map(|i| (i * 37 + 11) % 23).collect();
        let rm = RangeMin::new(values.clone());
        for lo in 0..values.len() {
            let mut m = u32::MAX;
            for hi in lo..values.len() {
                m = m.min(values[hi]);
                assert_eq!(rm.min(lo, hi), m);
            }
        }
    }
}
