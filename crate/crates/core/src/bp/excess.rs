use crate::bits::{bits_for, ceil_log2, BitSeq, IntVec, RankSelect, Space, SpaceUsage};
use crate::bp::BpParams;
use crate::error::{Error, Result};

/// A ±1 walk with prefix values `P(j)` for `-1 <= j < len`, `P(-1) = 0`.
pub(crate) trait Walk {
    fn len(&self) -> usize;
    fn up(&self, j: usize) -> bool;
    fn value(&self, j: isize) -> i64;
}

/// The parenthesis excess, read left to right.
pub(crate) struct Forward<'a>(pub &'a RankSelect);

impl Walk for Forward<'_> {
    #[inline]
    fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    fn up(&self, j: usize) -> bool {
        self.0.get(j)
    }

    #[inline]
    fn value(&self, j: isize) -> i64 {
        let p = (j + 1) as usize;
        2 * self.0.rank1(p) as i64 - p as i64
    }
}

/// The excess read right to left with steps negated, so that position `j`
/// here carries the excess of position `len - 2 - j` there.
pub(crate) struct Backward<'a>(pub &'a RankSelect);

impl Walk for Backward<'_> {
    #[inline]
    fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    fn up(&self, j: usize) -> bool {
        !self.0.get(self.0.len() - 1 - j)
    }

    #[inline]
    fn value(&self, j: isize) -> i64 {
        Forward(self.0).value(self.0.len() as isize - 2 - j)
    }
}

const NONE: u32 = u32::MAX;

/// Search index answering "least `j >= from` with `P(j) = k`".
///
/// Blocks of `blk` steps are grouped into superblocks of `sb` steps. Each
/// superblock carries a complete `f`-ary tree over its blocks; every node
/// stores the min..max range of `P` over its span, relative to the value just
/// before the span. Searches that leave a superblock go through one of two
/// tables name the first superblock to the right that reaches `k`: a list of
/// excess ranges for `k` inside the superblock's own range, and a direct
/// table for `k` within `delta` outside it.
#[derive(Clone, Debug)]
pub(crate) struct ExcessIndex {
    n: usize,
    sb: usize,
    blk: usize,
    f: usize,
    delta: usize,
    nsb: usize,
    per_sb: usize,
    counts: Vec<usize>,
    lo: Vec<IntVec>,
    hi: Vec<IntVec>,
    link_off: IntVec,
    link_start: IntVec,
    link_target: IntVec,
    link_dense: Vec<Option<RankSelect>>,
    overflow: IntVec,
}

impl ExcessIndex {
    pub(crate) fn build<W: Walk>(w: &W, p: &BpParams) -> Self {
        let n = w.len();
        let (sb, blk, f, delta) = (p.superblock, p.block, p.arity, p.delta);
        let per_sb = sb / blk;
        let nsb = n.div_ceil(sb).max(1);
        let mut counts = vec![per_sb];
        while *counts.last().unwrap() > 1 {
            let c = counts.last().unwrap().div_ceil(f);
            counts.push(c);
        }

        let mut vals = Vec::with_capacity(n);
        let mut cur = 0i64;
        for j in 0..n {
            cur += if w.up(j) { 1 } else { -1 };
            vals.push(cur as i32);
        }
        let base = |pos: usize| if pos == 0 { 0i64 } else { vals[pos - 1] as i64 };

        // absolute ranges, level by level
        let empty = (i64::MAX, i64::MIN);
        let mut abs: Vec<Vec<(i64, i64)>> = Vec::with_capacity(counts.len());
        let mut leaves = vec![empty; nsb * per_sb];
        for (gb, slot) in leaves.iter_mut().enumerate() {
            let start = gb * blk;
            if start < n {
                let end = (start + blk).min(n);
                let s = &vals[start..end];
                *slot = (*s.iter().min().unwrap() as i64, *s.iter().max().unwrap() as i64);
            }
        }
        abs.push(leaves);
        for h in 1..counts.len() {
            let prev = &abs[h - 1];
            let mut level = vec![empty; nsb * counts[h]];
            for s in 0..nsb {
                for c in 0..counts[h - 1] {
                    let (a, b) = prev[s * counts[h - 1] + c];
                    let slot = &mut level[s * counts[h] + c / f];
                    slot.0 = slot.0.min(a);
                    slot.1 = slot.1.max(b);
                }
            }
            abs.push(level);
        }

        let mut lo = Vec::with_capacity(counts.len());
        let mut hi = Vec::with_capacity(counts.len());
        let mut span = blk;
        for (h, level) in abs.iter().enumerate() {
            let width = bits_for(span.min(sb) + 1);
            let mut l = IntVec::new(width, level.len());
            let mut u = IntVec::new(width, level.len());
            for (i, &(a, b)) in level.iter().enumerate() {
                if a > b {
                    continue;
                }
                let (s, idx) = (i / counts[h], i % counts[h]);
                let v = base(s * sb + idx * span);
                l.set(i, (v - a + 1) as usize);
                u.set(i, (b - v + 1) as usize);
            }
            lo.push(l);
            hi.push(u);
            span *= f;
        }

        let roots = abs.last().unwrap();
        let top = vals.iter().copied().max().unwrap_or(0).max(0) as usize;

        // links for excesses inside each superblock's own range
        let mut next_sb = vec![NONE; top + 2];
        let mut ranges: Vec<Vec<(usize, u32)>> = vec![Vec::new(); nsb];
        for s in (0..nsb).rev() {
            let (e1, e2) = roots[s];
            if e1 > e2 {
                continue;
            }
            let (e1, e2) = (e1.max(0) as usize, e2 as usize);
            let mut prev = None;
            for k in e1..=e2 {
                let t = next_sb[k];
                if prev != Some(t) {
                    ranges[s].push((k - e1, t));
                    prev = Some(t);
                }
                next_sb[k] = s as u32;
            }
        }
        let total: usize = ranges.iter().map(Vec::len).sum();
        assert!(total <= 3 * nsb, "{total} link ranges for {nsb} superblocks");
        let threshold = ceil_log2(n.max(2));
        let mut offsets = Vec::with_capacity(nsb + 1);
        let mut starts = Vec::with_capacity(total);
        let mut targets = Vec::with_capacity(total);
        let mut link_dense = Vec::with_capacity(nsb);
        for (s, rs) in ranges.iter().enumerate() {
            offsets.push(starts.len());
            for &(k, t) in rs {
                starts.push(k);
                targets.push(if t == NONE { 0 } else { t as usize + 1 });
            }
            link_dense.push(if rs.len() > threshold {
                let (e1, e2) = roots[s];
                let mut bm = BitSeq::zeros((e2 - e1 + 1) as usize);
                for &(k, _) in rs {
                    bm.set(k, true);
                }
                Some(RankSelect::new(bm))
            } else {
                None
            });
        }
        offsets.push(starts.len());

        // first superblock to the right reaching each excess just outside a superblock's range
        let slots = 2 * (delta + 1);
        let mut overflow = IntVec::new(bits_for(nsb), nsb * slots);
        let mut next_pos = vec![NONE; top + delta + 3];
        for s in (0..nsb).rev() {
            let (e1, e2) = roots[s];
            if e1 <= e2 {
                for d in 0..=delta as i64 {
                    let k = e1 - 1 - d;
                    if k >= 0 && next_pos[k as usize] != NONE {
                        overflow.set(s * slots + d as usize, next_pos[k as usize] as usize / sb + 1);
                    }
                    let k = (e2 + 1 + d) as usize;
                    if k < next_pos.len() && next_pos[k] != NONE {
                        overflow.set(s * slots + delta + 1 + d as usize, next_pos[k] as usize / sb + 1);
                    }
                }
            }
            for j in (s * sb..((s + 1) * sb).min(n)).rev() {
                next_pos[vals[j] as usize] = j as u32;
            }
        }

        ExcessIndex {
            n,
            sb,
            blk,
            f,
            delta,
            nsb,
            per_sb,
            counts,
            lo,
            hi,
            link_off: IntVec::compact(&offsets),
            link_start: IntVec::compact(&starts),
            link_target: IntVec::compact(&targets),
            link_dense,
            overflow,
        }
    }


    /// Number of stored link ranges.
    pub(crate) fn link_count(&self) -> usize {
        self.link_start.len()
    }

    pub(crate) fn superblocks(&self) -> usize {
        self.nsb
    }

    fn node_range<W: Walk>(&self, w: &W, h: usize, s: usize, idx: usize) -> Option<(i64, i64)> {
        let span = self.blk * self.f.pow(h as u32);
        let start = s * self.sb + idx * span;
        if start >= self.n {
            return None;
        }
        let i = s * self.counts[h] + idx;
        let (d1, d2) = (self.lo[h].get(i) as i64, self.hi[h].get(i) as i64);
        let v = w.value(start as isize - 1);
        let (a, b) = (v - d1 + 1, v + d2 - 1);
        (a <= b).then_some((a, b))
    }

    #[inline]
    fn contains<W: Walk>(&self, w: &W, h: usize, s: usize, idx: usize, k: i64) -> bool {
        matches!(self.node_range(w, h, s, idx), Some((a, b)) if a <= k && k <= b)
    }

    fn scan<W: Walk>(&self, w: &W, gb: usize, from: usize, k: i64) -> Option<usize> {
        let start = from.max(gb * self.blk);
        let end = ((gb + 1) * self.blk).min(self.n);
        let mut v = w.value(start as isize - 1);
        for j in start..end {
            v += if w.up(j) { 1 } else { -1 };
            if v == k {
                return Some(j);
            }
        }
        None
    }

    fn descend<W: Walk>(&self, w: &W, s: usize, mut h: usize, mut idx: usize, k: i64) -> usize {
        while h > 0 {
            h -= 1;
            let first = idx * self.f;
            let last = (first + self.f).min(self.counts[h]);
            idx = (first..last)
                .find(|&c| self.contains(w, h, s, c, k))
                .expect("parent range covers a child holding k");
        }
        idx
    }

    fn next_block_in_sb<W: Walk>(&self, w: &W, s: usize, local: usize, k: i64) -> Option<usize> {
        let mut idx = local;
        for h in 0..self.counts.len() - 1 {
            let parent = idx / self.f;
            let last = ((parent + 1) * self.f).min(self.counts[h]);
            if let Some(sib) = (idx + 1..last).find(|&c| self.contains(w, h, s, c, k)) {
                return Some(self.descend(w, s, h, sib, k));
            }
            idx = parent;
        }
        None
    }

    fn link(&self, s: usize, e1: i64, k: i64) -> Option<usize> {
        let rel = (k - e1) as usize;
        let off = self.link_off.get(s);
        let r = match &self.link_dense[s] {
            Some(rs) => off + rs.rank1(rel + 1) - 1,
            None => {
                let (mut a, mut b) = (off, self.link_off.get(s + 1) - 1);
                while a < b {
                    let m = (a + b + 1) / 2;
                    if self.link_start.get(m) <= rel {
                        a = m;
                    } else {
                        b = m - 1;
                    }
                }
                a
            }
        };
        self.link_target.get(r).checked_sub(1)
    }

    /// Least `j >= from` with `P(j) = k`, for `|k - P(from-1)| <= delta`.
    pub(crate) fn next<W: Walk>(&self, w: &W, from: usize, k: i64) -> Result<Option<usize>> {
        if from > self.n {
            return Ok(None);
        }
        let v = w.value(from as isize - 1);
        if (k - v).unsigned_abs() > self.delta as u64 {
            return Err(Error::ExcessBound { offset: k - v, bound: self.delta });
        }
        if from == self.n || k < 0 {
            return Ok(None);
        }
        let gb = from / self.blk;
        if let Some(j) = self.scan(w, gb, from, k) {
            return Ok(Some(j));
        }
        let s = from / self.sb;
        let top = self.counts.len() - 1;
        if let Some(lb) = self.next_block_in_sb(w, s, gb - s * self.per_sb, k) {
            return Ok(self.scan(w, s * self.per_sb + lb, 0, k));
        }
        let (e1, e2) = self.node_range(w, top, s, 0).expect("superblock holds `from`");
        if e1 <= k && k <= e2 {
            return Ok(self.link(s, e1, k).map(|t| {
                let lb = self.descend(w, t, top, 0, k);
                self.scan(w, t * self.per_sb + lb, 0, k).expect("target block holds k")
            }));
        }
        let slots = 2 * (self.delta + 1);
        let slot = if k < e1 { (e1 - k - 1) as usize } else { self.delta + (k - e2) as usize };
        if slot >= slots {
            return Err(Error::ExcessBound { offset: k - v, bound: self.delta });
        }
        Ok(self.overflow.get(s * slots + slot).checked_sub(1).map(|t| {
            let lb = self.descend(w, t, top, 0, k);
            self.scan(w, t * self.per_sb + lb, 0, k).expect("target block holds k")
        }))
    }
}

impl SpaceUsage for ExcessIndex {
    fn space(&self) -> Space {
        let mut s = self.lo.space() + self.hi.space();
        s += self.link_off.space() + self.link_start.space() + self.link_target.space();
        for rs in self.link_dense.iter().flatten() {
            s += rs.space();
        }
        s += Space::payload(self.link_dense.len() as u64);
        s += self.overflow.space();
        s.as_index()
    }
}
