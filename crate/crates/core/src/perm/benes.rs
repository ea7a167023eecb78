use crate::bits::{BitSeq, Space, SpaceUsage};
use crate::error::{Error, Result};
use crate::ops::OpCounts;
use crate::perm::lehmer::{code_bits, read_value, small_forward, small_inverse, FactorialLadder, MixedRadixCode};
use crate::perm::{lg_factorial_ceil, PermBackend, Permutation};

/// Picks `(q, r, n')` with `n' = q·2^r >= n` and `t < q <= 2t`, via the
/// `ℓ` with `t < n/2^ℓ <= 2t` and `q = ⌈n/2^ℓ⌉`. When `n == t` the whole
/// permutation becomes a single central permuter.
pub fn choose_qr(n: usize, t: usize) -> Result<(usize, usize, usize)> {
    if t == 0 || t > n {
        return Err(Error::Param(format!("Benes size knob must satisfy 1 <= t <= n, got t={t}, n={n}")));
    }
    if n == t {
        return Ok((n, 0, n));
    }
    let mut l = 0;
    while (n as u128) > (t as u128) << (l + 1) {
        l += 1;
    }
    let q = n.div_ceil(1 << l);
    Ok((q, l, q << l))
}

/// A permutation laid out on a `(q, r)`-Benes network.
///
/// Switch bits form `2r` columns of `n'/2` bits: for each recursion level the
/// input column, then the output column. Within a column, subnetwork `b` of
/// that level owns the slice starting at `b·size/2`; its children are `2b`
/// (upper) and `2b+1` (lower). The `2^r` central permuters are stored as
/// Lehmer codes of `⌈lg q!⌉` bits each.
#[derive(Clone, Debug)]
pub struct BenesRep {
    n: usize,
    t: usize,
    q: usize,
    r: usize,
    switches: BitSeq,
    centrals: BitSeq,
    code_bits: usize,
    ladder: FactorialLadder,
}

impl BenesRep {
    pub fn build(perm: &Permutation, t: usize) -> Result<Self> {
        let (q, r, padded) = choose_qr(perm.len(), t)?;
        let mut rep = Self::route(&perm.padded(padded), q, r)?;
        rep.n = perm.len();
        rep.t = t;
        Ok(rep)
    }

    /// Sets the switches for a permutation of exactly `q·2^r` elements by
    /// the looping algorithm, one recursion level at a time.
    pub fn route(perm: &Permutation, q: usize, r: usize) -> Result<Self> {
        let p = perm.len();
        if q == 0 || p != q << r {
            return Err(Error::Param(format!("route needs {} elements, got {p}", q << r)));
        }
        let half = p / 2;
        let mut switches = BitSeq::zeros(2 * r * half);
        let mut cur: Vec<usize> = perm.image().to_vec();
        let mut next = vec![0usize; p];
        let mut inv = vec![0usize; p];
        let mut side = vec![u8::MAX; p];
        for level in 0..r {
            let m = p >> level;
            let mh = m / 2;
            for base in (0..p).step_by(m) {
                let b = base / m;
                let sigma = &cur[base..base + m];
                for (i, &o) in sigma.iter().enumerate() {
                    inv[base + o] = i;
                }
                let inv = &inv[base..base + m];
                let side = &mut side[base..base + m];
                side.fill(u8::MAX);
                for start in (0..m).step_by(2) {
                    if side[start] != u8::MAX {
                        continue;
                    }
                    let mut i = start;
                    while side[i] == u8::MAX {
                        side[i] = 0;
                        side[i ^ 1] = 1;
                        i = inv[sigma[i ^ 1] ^ 1];
                    }
                }
                let in_col = 2 * level * half + b * mh;
                let out_col = (2 * level + 1) * half + b * mh;
                for s in 0..mh {
                    switches.set(in_col + s, side[2 * s] == 1);
                    switches.set(out_col + s, side[inv[2 * s]] == 1);
                }
                for i in 0..m {
                    let child = 2 * b + side[i] as usize;
                    next[child * mh + i / 2] = sigma[i] / 2;
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        let code_bits = code_bits(q);
        let mut centrals = BitSeq::with_capacity(code_bits << r);
        for chunk in cur.chunks(q) {
            MixedRadixCode::encode(chunk).write_bits(&mut centrals, code_bits);
        }
        Ok(BenesRep { n: p, t: q, q, r, switches, centrals, code_bits, ladder: FactorialLadder::new(q) })
    }

    pub(crate) fn from_parts(n: usize, t: usize, q: usize, r: usize, switches: BitSeq, centrals: BitSeq) -> Result<Self> {
        let code_bits = code_bits(q);
        let padded = q.checked_shl(r as u32).unwrap_or(0);
        if q == 0 || n > padded || switches.len() != r * padded || centrals.len() != code_bits << r {
            return Err(Error::Format("inconsistent Benes section".into()));
        }
        Ok(BenesRep { n, t, q, r, switches, centrals, code_bits, ladder: FactorialLadder::new(q) })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn padded_len(&self) -> usize {
        self.q << self.r
    }

    pub fn switches(&self) -> &BitSeq {
        &self.switches
    }

    pub fn centrals(&self) -> &BitSeq {
        &self.centrals
    }

    /// Bit `idx` of column `col` (`2·level` input side, `2·level+1` output side).
    pub fn switch(&self, col: usize, idx: usize) -> bool {
        let half = self.padded_len() / 2;
        assert!(col < 2 * self.r && idx < half);
        self.switches.get(col * half + idx)
    }

    #[doc(hidden)]
    pub fn flip_switch(&mut self, col: usize, idx: usize) {
        let half = self.padded_len() / 2;
        let b = self.switches.get(col * half + idx);
        self.switches.set(col * half + idx, !b);
    }

    pub fn central_code(&self, b: usize) -> MixedRadixCode {
        MixedRadixCode::read_bits(self.q, &self.centrals, b * self.code_bits, self.code_bits)
    }

    pub fn outer_bits(&self) -> u64 {
        self.switches.len() as u64
    }

    pub fn central_bits(&self) -> u64 {
        self.centrals.len() as u64
    }

    /// Payload bits beyond `⌈lg n!⌉`.
    pub fn redundancy(&self) -> i64 {
        self.space().payload as i64 - lg_factorial_ceil(self.n) as i64
    }

    fn central_digits(&self, b: usize) -> Vec<u32> {
        let pos = b * self.code_bits;
        if self.code_bits <= 64 {
            self.ladder.decode_u64(self.centrals.get_bits(pos, self.code_bits))
        } else {
            self.ladder.decode(&read_value(&self.centrals, pos, self.code_bits))
        }
    }

    fn trace(&self, start: usize, forward: bool, ops: &mut OpCounts) -> usize {
        let half = self.padded_len() / 2;
        let (first, last) = if forward { (0, 1) } else { (1, 0) };
        let mut b = 0;
        let mut pos = start;
        for level in 0..self.r {
            let mh = (self.padded_len() >> level) / 2;
            let s = pos >> 1;
            let bit = self.switches.get((2 * level + first) * half + b * mh + s) as usize;
            b = 2 * b + ((pos & 1) ^ bit);
            pos = s;
        }
        ops.bit_reads += self.r as u64;
        ops.central += 1;
        let digits = self.central_digits(b);
        pos = if forward { small_forward(&digits, pos) } else { small_inverse(&digits, pos) };
        for level in (0..self.r).rev() {
            let mh = (self.padded_len() >> level) / 2;
            let which = b & 1;
            b >>= 1;
            let bit = self.switches.get((2 * level + last) * half + b * mh + pos) as usize;
            pos = 2 * pos + (which ^ bit);
        }
        ops.bit_reads += self.r as u64;
        pos
    }
}

impl PermBackend for BenesRep {
    fn len(&self) -> usize {
        self.n
    }

    fn forward_counted(&self, i: usize, ops: &mut OpCounts) -> usize {
        assert!(i < self.n, "forward query {i} outside [{}]", self.n);
        ops.forward_calls += 1;
        self.trace(i, true, ops)
    }

    fn inverse_counted(&self, x: usize, ops: &mut OpCounts) -> usize {
        assert!(x < self.n, "inverse query {x} outside [{}]", self.n);
        ops.inverse_calls += 1;
        self.trace(x, false, ops)
    }
}

impl SpaceUsage for BenesRep {
    fn space(&self) -> Space {
        Space { payload: self.outer_bits() + self.central_bits(), index: self.ladder.divisor_bits() }
    }
}
