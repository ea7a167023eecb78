use crate::bits::{select_in_word, BitSeq, Space, SpaceUsage};

const SB_BITS: usize = 512;
const SELECT_SAMPLE: usize = 512;

/// Plain bitmap with a two-level rank directory and sampled select.
///
/// The directory holds, per 512-bit superblock, the cumulative count of ones
/// and the seven in-superblock counts before each of its words (9 bits each,
/// packed into one word). Select samples record the superblock holding every
/// 512th one (resp. zero); the remaining search is a bounded binary search
/// plus an in-word scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSelect {
    bits: BitSeq,
    dir: Vec<u64>,
    ones: usize,
    sample1: Vec<u32>,
    sample0: Vec<u32>,
}

impl RankSelect {
    pub fn new(bits: BitSeq) -> Self {
        let words = bits.words();
        let nsb = bits.len().div_ceil(SB_BITS);
        let mut dir = Vec::with_capacity(2 * nsb + 2);
        let mut total = 0usize;
        for sb in 0..nsb {
            dir.push(total as u64);
            let mut packed = 0u64;
            let mut inner = 0u64;
            for w in 0..8 {
                let wi = sb * 8 + w;
                if w > 0 {
                    packed |= inner << (9 * (w - 1));
                }
                if wi < words.len() {
                    inner += words[wi].count_ones() as u64;
                }
            }
            dir.push(packed);
            total += inner as usize;
        }
        dir.push(total as u64);
        dir.push(0);

        let mut rs = RankSelect { bits, dir, ones: total, sample1: Vec::new(), sample0: Vec::new() };
        let zeros = rs.bits.len() - total;
        let mut sb = 0;
        for k in (0..total).step_by(SELECT_SAMPLE) {
            while rs.dir[2 * (sb + 1)] as usize <= k {
                sb += 1;
            }
            rs.sample1.push(sb as u32);
        }
        sb = 0;
        for k in (0..zeros).step_by(SELECT_SAMPLE) {
            while rs.zeros_before_sb(sb + 1) <= k {
                sb += 1;
            }
            rs.sample0.push(sb as u32);
        }
        rs
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.ones
    }

    #[inline]
    pub fn count_zeros(&self) -> usize {
        self.bits.len() - self.ones
    }

    #[inline]
    pub fn bits(&self) -> &BitSeq {
        &self.bits
    }

    pub fn into_bits(self) -> BitSeq {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    #[inline]
    fn sub(&self, sb: usize, w: usize) -> usize {
        if w == 0 {
            0
        } else {
            ((self.dir[2 * sb + 1] >> (9 * (w - 1))) & 0x1ff) as usize
        }
    }

    #[inline]
    fn zeros_before_sb(&self, sb: usize) -> usize {
        let pos = (sb * SB_BITS).min(self.bits.len());
        pos - self.dir[2 * sb] as usize
    }

    /// Number of ones in `[0, i)`, for `i <= len`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.bits.len(), "rank position {i} beyond length {}", self.bits.len());
        let sb = i / SB_BITS;
        let w = (i / 64) % 8;
        let mut r = self.dir[2 * sb] as usize + self.sub(sb, w);
        let off = i % 64;
        if off != 0 {
            r += (self.bits.words()[i / 64] & ((1u64 << off) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Position of the `k`-th one (0-based). Panics if `k >= count_ones()`.
    pub fn select1(&self, k: usize) -> usize {
        assert!(k < self.ones, "select1({k}) with only {} ones", self.ones);
        let s = k / SELECT_SAMPLE;
        let mut lo = self.sample1[s] as usize;
        let mut hi = match self.sample1.get(s + 1) {
            Some(&x) => x as usize,
            None => self.dir.len() / 2 - 2,
        };
        // largest superblock with ones-before <= k
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if self.dir[2 * mid] as usize <= k {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let sb = lo;
        let rem = k - self.dir[2 * sb] as usize;
        let mut w = 7;
        while self.sub(sb, w) > rem {
            w -= 1;
        }
        let wi = sb * 8 + w;
        wi * 64 + select_in_word(self.bits.words()[wi], (rem - self.sub(sb, w)) as u32) as usize
    }

    /// Position of the `k`-th zero (0-based). Panics if `k >= count_zeros()`.
    pub fn select0(&self, k: usize) -> usize {
        assert!(k < self.count_zeros(), "select0({k}) with only {} zeros", self.count_zeros());
        let s = k / SELECT_SAMPLE;
        let mut lo = self.sample0[s] as usize;
        let mut hi = match self.sample0.get(s + 1) {
            Some(&x) => x as usize,
            None => self.dir.len() / 2 - 2,
        };
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if self.zeros_before_sb(mid) <= k {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let sb = lo;
        let rem = k - self.zeros_before_sb(sb);
        let mut w = 7;
        while w * 64 - self.sub(sb, w) > rem {
            w -= 1;
        }
        let wi = sb * 8 + w;
        let inv = !self.bits.words()[wi];
        wi * 64 + select_in_word(inv, (rem - (w * 64 - self.sub(sb, w))) as u32) as usize
    }

    /// Index overhead in bits (directory plus select samples).
    pub fn index_bits(&self) -> u64 {
        (self.dir.len() * 64 + (self.sample1.len() + self.sample0.len()) * 32) as u64
    }
}

impl SpaceUsage for RankSelect {
    fn space(&self) -> Space {
        Space { payload: self.bits.len() as u64, index: self.index_bits() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check(bits: &BitSeq) {
        let rs = RankSelect::new(bits.clone());
        let mut ones = 0;
        let mut zeros = 0;
        for i in 0..bits.len() {
            assert_eq!(rs.rank1(i), ones, "rank1({i})");
            if bits.get(i) {
                assert_eq!(rs.select1(ones), i);
                ones += 1;
            } else {
                assert_eq!(rs.select0(zeros), i);
                zeros += 1;
            }
        }
        assert_eq!(rs.rank1(bits.len()), ones);
        assert_eq!(rs.count_ones(), ones);
    }

    #[test]
    fn dense_sparse_and_edge_lengths() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for &len in &[0usize, 1, 63, 64, 65, 511, 512, 513, 4096, 5000] {
            for &p in &[0.0, 0.01, 0.5, 0.99, 1.0] {
                let bits = BitSeq::from_bools((0..len).map(|_| rng.random_bool(p)));
                check(&bits);
            }
        }
    }

    #[test]
    fn long_runs_cross_many_superblocks() {
        let mut bits = BitSeq::zeros(20_000);
        bits.set(3, true);
        bits.set(19_999, true);
        check(&bits);
    }
}
