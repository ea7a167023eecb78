use crate::bits::{Fid, Space, SpaceUsage};
use crate::error::{check_range, Result};
use crate::ops::OpCounts;
use crate::perm::{AnyPerm, BackendKind, PermBackend, Permutation};

/// A sequence over `[sigma]` cut into chunks of length `sigma`.
///
/// Each chunk is a permutation sending a position to its rank in the stable
/// sort of the chunk, plus a bitmap `1^{c_0} 0 1^{c_1} 0 …` of symbol counts.
/// A global bitmap lists, symbol by symbol, the count in every chunk.
#[derive(Clone, Debug)]
pub struct ChunkedSeq {
    pub(crate) len: usize,
    pub(crate) sigma: usize,
    pub(crate) perms: Vec<AnyPerm>,
    pub(crate) counts: Vec<Fid>,
    pub(crate) global: Fid,
}

impl ChunkedSeq {
    pub fn build(seq: &[usize], sigma: usize, backend: BackendKind) -> Result<Self> {
        for &s in seq {
            check_range(s, sigma)?;
        }
        let chunk = sigma.max(1);
        let nchunks = seq.len().div_ceil(chunk);
        let mut perms = Vec::with_capacity(nchunks);
        let mut counts = Vec::with_capacity(nchunks);
        let mut per_symbol = vec![vec![0usize; nchunks]; sigma];
        for (c, part) in seq.chunks(chunk).enumerate() {
            let mut cnt = vec![0usize; sigma + 1];
            for &s in part {
                cnt[s + 1] += 1;
                per_symbol[s][c] += 1;
            }
            for a in 0..sigma {
                cnt[a + 1] += cnt[a];
            }
            let mut rank = vec![0usize; part.len()];
            for (i, &s) in part.iter().enumerate() {
                rank[i] = cnt[s];
                cnt[s] += 1;
            }
            perms.push(AnyPerm::build(&Permutation::from_image(rank)?, backend)?);
            let mut ones = Vec::with_capacity(part.len());
            let mut pos = 0;
            for a in 0..sigma {
                let k = per_symbol[a][c];
                ones.extend(pos..pos + k);
                pos += k + 1;
            }
            counts.push(Fid::from_set(part.len() + sigma, &ones)?);
        }
        let mut ones = Vec::with_capacity(seq.len());
        let mut pos = 0;
        for row in &per_symbol {
            for &k in row {
                ones.extend(pos..pos + k);
                pos += k + 1;
            }
        }
        let global = Fid::from_set(seq.len() + sigma * nchunks, &ones)?;
        Ok(ChunkedSeq { len: seq.len(), sigma, perms, counts, global })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn chunks(&self) -> usize {
        self.perms.len()
    }

    pub fn access(&self, i: usize) -> Result<usize> {
        check_range(i, self.len)?;
        Ok(self.access_counted(i, &mut OpCounts::new()))
    }

    pub(crate) fn access_counted(&self, i: usize, ops: &mut OpCounts) -> usize {
        let chunk = self.sigma.max(1);
        let c = i / chunk;
        let r = self.perms[c].forward_counted(i % chunk, ops);
        ops.dict += 1;
        self.counts[c].nth_one(r) - r
    }

    /// Position of the `k`-th occurrence (1-based) of symbol `a`.
    pub fn select(&self, a: usize, k: usize) -> Option<usize> {
        self.select_counted(a, k, &mut OpCounts::new())
    }

    pub(crate) fn select_counted(&self, a: usize, k: usize, ops: &mut OpCounts) -> Option<usize> {
        let nc = self.perms.len();
        if k == 0 || a >= self.sigma || nc == 0 {
            return None;
        }
        let g = &self.global;
        let zb = a * nc;
        let after_zero = |z: usize| if z == 0 { 0 } else { g.nth_zero(z - 1) + 1 };
        let start = after_zero(zb);
        let end = g.nth_zero(zb + nc - 1);
        ops.dict += 2;
        if k > end + 1 - start - nc {
            return None;
        }
        let y = g.nth_one(start - zb + k - 1);
        let c = g.rank0(y) - zb;
        let j = y - after_zero(zb + c);
        let x = &self.counts[c];
        let before = if a == 0 { 0 } else { x.nth_zero(a - 1) + 1 - a };
        ops.dict += 4;
        let off = self.perms[c].inverse_counted(before + j, ops);
        Some(c * self.sigma + off)
    }
}

impl SpaceUsage for ChunkedSeq {
    fn space(&self) -> Space {
        self.perms.space() + (self.counts.space() + self.global.space()).as_index()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sequence() {
        let s = ChunkedSeq::build(&[1, 0, 0, 1], 2, BackendKind::Naive).unwrap();
        assert_eq!(s.chunks(), 2);
        assert_eq!(s.access(2).unwrap(), 0);
        assert_eq!(s.select(1, 2), Some(3));
        assert_eq!(s.select(1, 1), Some(0));
        assert_eq!(s.select(0, 2), Some(2));
        assert_eq!(s.select(0, 3), None);
        assert_eq!(s.select(1, 0), None);
    }
}
