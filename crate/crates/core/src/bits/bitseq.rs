use crate::bits::{Space, SpaceUsage};

/// A fixed-length sequence of bits packed into 64-bit words, LSB first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitSeq {
    words: Vec<u64>,
    len: usize,
}

impl BitSeq {
    pub fn zeros(len: usize) -> Self {
        BitSeq { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitSeq { words: Vec::with_capacity(bits.div_ceil(64)), len: 0 }
    }

    /// Wraps raw words; bits at positions `>= len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(64), 0);
        if len % 64 != 0 {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % 64)) - 1;
        }
        BitSeq { words, len }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut seq = BitSeq::default();
        for b in bits {
            seq.push(b);
        }
        seq
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn push(&mut self, bit: bool) {
        if self.len % 64 == 0 {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / 64] |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    /// Bit at `i`. Panics if `i >= len`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    /// Reads `width <= 64` bits starting at `pos` as an integer (LSB first).
    #[inline]
    pub fn get_bits(&self, pos: usize, width: usize) -> u64 {
        debug_assert!(width <= 64 && pos + width <= self.len);
        if width == 0 {
            return 0;
        }
        let (w, off) = (pos / 64, pos % 64);
        let mut v = self.words[w] >> off;
        if off + width > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        if width < 64 {
            v &= (1u64 << width) - 1;
        }
        v
    }

    #[inline]
    pub fn set_bits(&mut self, pos: usize, width: usize, value: u64) {
        debug_assert!(width <= 64 && pos + width <= self.len);
        if width == 0 {
            return;
        }
        let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        debug_assert!(value & !mask == 0, "value {value} wider than {width} bits");
        let (w, off) = (pos / 64, pos % 64);
        self.words[w] = (self.words[w] & !(mask << off)) | (value << off);
        if off + width > 64 {
            let hi = off + width - 64;
            let hmask = (1u64 << hi) - 1;
            self.words[w + 1] = (self.words[w + 1] & !hmask) | (value >> (64 - off));
        }
    }

    /// Appends the low `width` bits of `value`.
    pub fn push_bits(&mut self, value: u64, width: usize) {
        let pos = self.len;
        self.len += width;
        self.words.resize(self.len.div_ceil(64), 0);
        self.set_bits(pos, width, value);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Positions of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }
}

impl SpaceUsage for BitSeq {
    fn space(&self) -> Space {
        Space::payload(self.len as u64)
    }
}

/// Position of the `k`-th (0-based) set bit of `word`. `k` must be below its popcount.
#[inline]
pub(crate) fn select_in_word(mut word: u64, k: u32) -> u32 {
    debug_assert!(k < word.count_ones());
    for _ in 0..k {
        word &= word - 1;
    }
    word.trailing_zeros()
}
