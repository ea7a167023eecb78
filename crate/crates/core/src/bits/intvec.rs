use crate::bits::{BitSeq, Space, SpaceUsage};

/// Fixed-width packed integer array.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntVec {
    bits: BitSeq,
    width: usize,
    len: usize,
}

impl IntVec {
    pub fn new(width: usize, len: usize) -> Self {
        assert!(width <= 64);
        IntVec { bits: BitSeq::zeros(width * len), width, len }
    }

    pub fn from_slice(width: usize, values: &[usize]) -> Self {
        let mut v = IntVec::new(width, values.len());
        for (i, &x) in values.iter().enumerate() {
            v.set(i, x);
        }
        v
    }

    /// Builds with the narrowest width that holds every value.
    pub fn compact(values: &[usize]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        IntVec::from_slice(bits_for(max), values)
    }

    pub(crate) fn from_raw(bits: BitSeq, width: usize, len: usize) -> Self {
        assert_eq!(bits.len(), width * len);
        IntVec { bits, width, len }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn get(&self, i: usize) -> usize {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.bits.get_bits(i * self.width, self.width) as usize
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.bits.set_bits(i * self.width, self.width, value as u64);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn raw(&self) -> &BitSeq {
        &self.bits
    }
}

impl SpaceUsage for IntVec {
    fn space(&self) -> Space {
        Space::payload((self.width * self.len) as u64)
    }
}

/// Bits needed to write `value` in binary (at least 1).
#[inline]
pub fn bits_for(value: usize) -> usize {
    (usize::BITS - value.leading_zeros()).max(1) as usize
}

/// `ceil(lg x)` for `x >= 1`; the width of an index into `[x]`.
#[inline]
pub fn ceil_log2(x: usize) -> usize {
    assert!(x >= 1);
    if x == 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_helpers() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(4096), 12);
        assert_eq!(ceil_log2(4097), 13);
        assert_eq!(bits_for(0), 1);
        assert_eq!(bits_for(255), 8);
        assert_eq!(bits_for(256), 9);
    }

    #[test]
    fn packed_round_trip() {
        let vals: Vec<usize> = (0..300).map(|i| (i * 7919) % 1000).collect();
        let v = IntVec::from_slice(10, &vals);
        assert_eq!(v.iter().collect::<Vec<_>>(), vals);
        assert_eq!(v.space().payload, 3000);
    }

    #[test]
    fn zero_width_holds_zeros() {
        let v = IntVec::new(0, 5);
        assert_eq!(v.get(4), 0);
        assert_eq!(v.space().payload, 0);
    }
}
