use crate::bits::{ceil_log2, IndexableDict, IntVec, Space, SpaceUsage};
use crate::error::{Error, Result};
use crate::ops::OpCounts;
use crate::perm::{PermBackend, Permutation};

/// Back-link index over the long cycles of a permutation.
///
/// On a cycle `c_0 … c_{k-1}` (minimum first) with `k > t`, the preimages of
/// `c_0, c_t, c_2t, …` are holders, and each holder links to the previous
/// holder along the cycle, about `t` positions back.
#[derive(Clone, Debug)]
pub struct ShortcutIndex {
    n: usize,
    t: usize,
    holders: IndexableDict,
    links: IntVec,
    build_evals: u64,
}

impl ShortcutIndex {
    pub fn build(perm: &Permutation, t: usize) -> Result<Self> {
        Self::build_black_box(perm.len(), t, |i| perm.apply(i))
    }

    /// Builds while touching the permutation only through `forward`.
    pub fn build_black_box(n: usize, t: usize, mut forward: impl FnMut(usize) -> usize) -> Result<Self> {
        if t < 2 {
            return Err(Error::Param(format!("shortcut spacing t must be at least 2, got {t}")));
        }
        let mut seen = crate::bits::BitSeq::zeros(n);
        let mut pairs = Vec::new();
        let mut evals = 0u64;
        let mut cycle = Vec::new();
        for start in 0..n {
            if seen.get(start) {
                continue;
            }
            cycle.clear();
            let mut x = start;
            loop {
                seen.set(x, true);
                cycle.push(x);
                x = forward(x);
                evals += 1;
                if x >= n {
                    return Err(Error::NotBijection { index: *cycle.last().unwrap(), value: x as u64 });
                }
                if x == start {
                    break;
                }
                if seen.get(x) {
                    return Err(Error::NotBijection { index: *cycle.last().unwrap(), value: x as u64 });
                }
            }
            let k = cycle.len();
            if k <= t {
                continue;
            }
            let count = k.div_ceil(t);
            let pre = |pos: usize| cycle[(pos + k - 1) % k];
            for i in 0..count {
                let prev = (i + count - 1) % count;
                pairs.push((pre(i * t), pre(prev * t)));
            }
        }
        pairs.sort_unstable();
        let keys: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let holders = IndexableDict::from_set(n, &keys)?;
        let mut links = IntVec::new(ceil_log2(n.max(1)), pairs.len());
        for (r, &(_, l)) in pairs.iter().enumerate() {
            links.set(r, l);
        }
        Ok(ShortcutIndex { n, t, holders, links, build_evals: evals })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of holders `s`.
    pub fn holder_count(&self) -> usize {
        self.holders.len()
    }

    pub fn holders(&self) -> &IndexableDict {
        &self.holders
    }

    pub fn link(&self, r: usize) -> usize {
        self.links.get(r)
    }

    pub fn links(&self) -> &IntVec {
        &self.links
    }

    /// Forward evaluations spent during construction.
    pub fn build_evals(&self) -> u64 {
        self.build_evals
    }

    /// `π⁻¹(x)` with at most one shortcut jump, then forward steps only.
    pub fn inverse_with(&self, x: usize, mut forward: impl FnMut(usize) -> usize, ops: &mut OpCounts) -> usize {
        let mut i = x;
        let mut jumped = false;
        loop {
            let y = forward(i);
            ops.evals += 1;
            if y == x {
                return i;
            }
            if !jumped {
                ops.dict += 1;
                if let Some(r) = self.holders.rank_of(i) {
                    i = self.links.get(r);
                    jumped = true;
                    continue;
                }
            }
            i = y;
        }
    }

    /// The unguarded rule that jumps at every holder. It can circle among
    /// holders forever; `None` is returned once `limit` evaluations pass.
    pub fn inverse_unguarded(&self, x: usize, mut forward: impl FnMut(usize) -> usize, limit: u64) -> Option<usize> {
        let mut i = x;
        let mut evals = 0;
        loop {
            if evals >= limit {
                return None;
            }
            let y = forward(i);
            evals += 1;
            if y == x {
                return Some(i);
            }
            i = match self.holders.rank_of(i) {
                Some(r) => self.links.get(r),
                None => y,
            };
        }
    }

    pub(crate) fn from_parts(n: usize, t: usize, holders: IndexableDict, links: IntVec) -> Result<Self> {
        if holders.len() != links.len() || holders.universe() != n || t < 2 {
            return Err(Error::Format("inconsistent shortcut index".into()));
        }
        Ok(ShortcutIndex { n, t, holders, links, build_evals: 0 })
    }
}

impl SpaceUsage for ShortcutIndex {
    fn space(&self) -> Space {
        (self.holders.space() + self.links.space()).as_index()
    }
}

/// Explicit image array plus a shortcut index for inverses.
#[derive(Clone, Debug)]
pub struct ShortcutPerm {
    image: IntVec,
    index: ShortcutIndex,
}

impl ShortcutPerm {
    pub fn build(perm: &Permutation, t: usize) -> Result<Self> {
        let n = perm.len();
        let image = IntVec::from_slice(ceil_log2(n.max(1)), perm.image());
        let index = ShortcutIndex::build(perm, t)?;
        Ok(ShortcutPerm { image, index })
    }

    pub fn index(&self) -> &ShortcutIndex {
        &self.index
    }

    pub fn image(&self) -> &IntVec {
        &self.image
    }

    pub(crate) fn from_parts(image: IntVec, index: ShortcutIndex) -> Result<Self> {
        if image.len() != index.len() {
            return Err(Error::Format("shortcut image and index sizes differ".into()));
        }
        Ok(ShortcutPerm { image, index })
    }
}

impl PermBackend for ShortcutPerm {
    fn len(&self) -> usize {
        self.image.len()
    }

    fn forward_counted(&self, i: usize, ops: &mut OpCounts) -> usize {
        ops.forward_calls += 1;
        ops.evals += 1;
        self.image.get(i)
    }

    fn inverse_counted(&self, x: usize, ops: &mut OpCounts) -> usize {
        assert!(x < self.len(), "inverse query {x} outside [{}]", self.len());
        ops.inverse_calls += 1;
        self.index.inverse_with(x, |i| self.image.get(i), ops)
    }
}

impl SpaceUsage for ShortcutPerm {
    fn space(&self) -> Space {
        self.image.space() + self.index.space()
    }
}
