use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::bits::BitSeq;
use crate::error::{Error, Result};

/// Lehmer digits `r(i) = |{j < i : π(j) < π(i)}|`, so `r(i) ∈ [i+1]`.
pub fn lehmer_digits(image: &[usize]) -> Vec<u32> {
    let q = image.len();
    let mut fen = vec![0u32; q + 1];
    let mut digits = Vec::with_capacity(q);
    for &v in image {
        let mut c = 0;
        let mut k = v;
        while k > 0 {
            c += fen[k];
            k &= k - 1;
        }
        digits.push(c);
        let mut k = v + 1;
        while k <= q {
            fen[k] += 1;
            k += k & k.wrapping_neg();
        }
    }
    digits
}

fn factorial(q: usize) -> BigUint {
    (2..=q).fold(BigUint::one(), |acc, j| acc * j)
}

/// `ceil(lg q!)`, the exact width of a code for a permutation of `[q]`.
pub fn code_bits(q: usize) -> usize {
    let f = factorial(q);
    if f.is_one() {
        0
    } else {
        (f - 1u32).bits() as usize
    }
}

#[derive(Clone, Debug)]
enum Node {
    Leaf { lo: usize, hi: usize },
    Split { div: BigUint, left: usize, right: usize },
}

/// Precomputed divisors for decoding a code by recursive halving of the digit
/// range. A node over digits `[lo, hi)` holds `V = Σ r(i)·i!/lo!`; splitting
/// at `mid` gives `V mod D` for the low half and `V div D` for the high half,
/// with `D = (lo+1)(lo+2)…mid`. Ranges whose values fit a word are leaves.
#[derive(Clone, Debug)]
pub struct FactorialLadder {
    q: usize,
    bits: usize,
    nodes: Vec<Node>,
}

impl FactorialLadder {
    pub fn new(q: usize) -> Self {
        let mut ladder = FactorialLadder { q, bits: code_bits(q), nodes: Vec::new() };
        if q > 0 {
            ladder.build(0, q);
        }
        ladder
    }

    fn build(&mut self, lo: usize, hi: usize) -> usize {
        let fits = (lo + 1..=hi)
            .try_fold(1u128, |acc, j| acc.checked_mul(j as u128).filter(|&p| p <= 1u128 << 64))
            .is_some();
        let id = self.nodes.len();
        if fits || hi - lo <= 1 {
            self.nodes.push(Node::Leaf { lo, hi });
            return id;
        }
        let mid = (lo + hi) / 2;
        let div = (lo + 1..=mid).fold(BigUint::one(), |acc, j| acc * j);
        self.nodes.push(Node::Split { div, left: 0, right: 0 });
        let left = self.build(lo, mid);
        let right = self.build(mid, hi);
        if let Node::Split { left: l, right: r, .. } = &mut self.nodes[id] {
            *l = left;
            *r = right;
        }
        id
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Width of every code this ladder decodes.
    pub fn code_bits(&self) -> usize {
        self.bits
    }

    /// Bits spent on the stored divisors.
    pub fn divisor_bits(&self) -> u64 {
        self.nodes
            .iter()
            .map(|n| match n {
                Node::Split { div, .. } => div.bits(),
                Node::Leaf { .. } => 0,
            })
            .sum()
    }

    pub fn decode(&self, value: &BigUint) -> Vec<u32> {
        let mut out = vec![0u32; self.q];
        if self.q > 0 {
            self.decode_node(0, value.clone(), &mut out);
        }
        out
    }

    fn decode_node(&self, id: usize, v: BigUint, out: &mut [u32]) {
        match &self.nodes[id] {
            Node::Leaf { lo, hi } => {
                let v = v.to_u64().expect("leaf value fits a word");
                decode_word(v, *lo, *hi, out);
            }
            Node::Split { div, left, right, .. } => {
                let (high, low) = v.div_rem(div);
                self.decode_node(*left, low, out);
                self.decode_node(*right, high, out);
            }
        }
    }

    /// Digits of a code that fits in one word.
    pub fn decode_u64(&self, v: u64) -> Vec<u32> {
        let mut out = vec![0u32; self.q];
        decode_word(v, 0, self.q, &mut out);
        out
    }
}

fn decode_word(mut v: u64, lo: usize, hi: usize, out: &mut [u32]) {
    for (i, d) in out.iter_mut().enumerate().take(hi).skip(lo) {
        let radix = i as u64 + 1;
        *d = (v % radix) as u32;
        v /= radix;
    }
}

/// A permutation of `[q]` packed as `R = Σ i!·r(i) ∈ [q!]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedRadixCode {
    q: usize,
    value: BigUint,
}

impl MixedRadixCode {
    pub fn encode(image: &[usize]) -> Self {
        Self::from_digits(&lehmer_digits(image))
    }

    pub fn from_digits(digits: &[u32]) -> Self {
        let q = digits.len();
        let mut value = BigUint::zero();
        for i in (0..q).rev() {
            debug_assert!((digits[i] as usize) <= i);
            value = value * (i as u32 + 1) + digits[i];
        }
        MixedRadixCode { q, value }
    }

    pub fn from_value(q: usize, value: BigUint) -> Result<Self> {
        if value >= factorial(q) {
            return Err(Error::CodeRange { q });
        }
        Ok(MixedRadixCode { q, value })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn bits(&self) -> usize {
        code_bits(self.q)
    }

    pub fn digits(&self) -> Vec<u32> {
        FactorialLadder::new(self.q).decode(&self.value)
    }

    pub fn decode(&self, ladder: &FactorialLadder) -> Vec<u32> {
        assert_eq!(ladder.q(), self.q);
        ladder.decode(&self.value)
    }

    /// Appends exactly `width` bits, least significant first.
    pub fn write_bits(&self, out: &mut BitSeq, width: usize) {
        let words = self.value.to_u64_digits();
        let mut left = width;
        let mut i = 0;
        while left > 0 {
            let w = left.min(64);
            out.push_bits(words.get(i).copied().unwrap_or(0), w);
            left -= w;
            i += 1;
        }
    }

    pub fn read_bits(q: usize, bits: &BitSeq, pos: usize, width: usize) -> Self {
        MixedRadixCode { q, value: read_value(bits, pos, width) }
    }
}

pub(crate) fn read_value(bits: &BitSeq, pos: usize, width: usize) -> BigUint {
    let mut digits = Vec::with_capacity(width.div_ceil(32));
    let mut off = 0;
    while off < width {
        let w = (width - off).min(32);
        digits.push(bits.get_bits(pos + off, w) as u32);
        off += w;
    }
    BigUint::new(digits)
}

/// Number of positions `j >= from` with `π(j) <= x`, from digits alone.
fn under(digits: &[u32], x: usize, from: usize) -> usize {
    let mut u = 0usize;
    for j in (from..digits.len()).rev() {
        if u <= x && digits[j] as usize <= x - u {
            u += 1;
        }
    }
    u
}

/// `π(i)`, using `π(i) <= x ⟺ r(i) <= x − Under(x, i+1)`.
pub fn small_forward(digits: &[u32], i: usize) -> usize {
    let q = digits.len();
    assert!(i < q);
    let r = digits[i] as usize;
    let (mut lo, mut hi) = (0, q - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let u = under(digits, mid, i + 1);
        if u <= mid && r <= mid - u {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// `π⁻¹(x)`: scanning down, position `j` holds `x` exactly when
/// `r(j) = x − Under(x, j+1)`.
pub fn small_inverse(digits: &[u32], x: usize) -> usize {
    let q = digits.len();
    assert!(x < q);
    let mut u = 0usize;
    for j in (0..q).rev() {
        let r = digits[j] as usize;
        let d = x - u;
        if r == d {
            return j;
        }
        if r < d {
            u += 1;
        }
    }
    unreachable!("digits do not encode a permutation")
}
