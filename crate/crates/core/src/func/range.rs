use super::core::FuncCore;
use super::seq::ChunkedSeq;
use super::{default_width, FuncOptions, FuncRep};
use crate::bits::{Fid, IndexableDict, Space, SpaceUsage};
use crate::error::{check_range, Error, Result};
use crate::ops::OpCounts;
use crate::perm::{AnyPerm, PermBackend, Permutation};

/// `f: [n] → [m]` with `n > m`.
///
/// The restriction to `[m]` is stored with one extra leaf per distinct value
/// of `f(m..n)`, hung under that value; the values `f(m..n)` themselves live
/// in a chunked sequence. Leaf `m + r` stands for the `r`-th smallest value.
#[derive(Clone, Debug)]
pub struct RangeRepLarge {
    pub(crate) n: usize,
    pub(crate) m: usize,
    pub(crate) core: FuncRep,
    pub(crate) seq: ChunkedSeq,
    pub(crate) dummies: Fid,
}

impl RangeRepLarge {
    pub fn build(image: &[usize], m: usize, opts: &FuncOptions) -> Result<Self> {
        let n = image.len();
        if m == 0 || n <= m {
            return Err(Error::Param(format!("needs 0 < m < n, got n={n} m={m}")));
        }
        for &v in image {
            check_range(v, m)?;
        }
        let tail = &image[m..];
        let mut values = tail.to_vec();
        values.sort_unstable();
        values.dedup();
        let mut aug = image[..m].to_vec();
        aug.extend_from_slice(&values);
        let core_opts = FuncOptions { width: opts.width.or(Some(default_width(m))), ..*opts };
        Ok(RangeRepLarge {
            n,
            m,
            core: FuncRep::build(&aug, &core_opts)?,
            seq: ChunkedSeq::build(tail, m, opts.backend)?,
            dummies: Fid::from_set(m, &values)?,
        })
    }

    pub fn domain(&self) -> usize {
        self.n
    }

    pub fn range(&self) -> usize {
        self.m
    }

    pub fn core(&self) -> &FuncRep {
        &self.core
    }

    pub fn seq(&self) -> &ChunkedSeq {
        &self.seq
    }

    pub fn power(&self, i: usize, k: u64) -> Result<usize> {
        self.power_counted(i, k, &mut OpCounts::new())
    }

    pub fn power_counted(&self, i: usize, k: u64, ops: &mut OpCounts) -> Result<usize> {
        check_range(i, self.n)?;
        if k == 0 {
            return Ok(i);
        }
        if i < self.m {
            return self.core.power_counted(i, k, ops);
        }
        let j = self.seq.access_counted(i - self.m, ops);
        self.core.power_counted(j, k - 1, ops)
    }

    pub fn inverse_power(&self, i: usize, k: u64) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        self.inverse_power_into(i, k, &mut out, &mut OpCounts::new())?;
        Ok(out)
    }

    pub fn inverse_power_into(&self, i: usize, k: u64, out: &mut Vec<usize>, ops: &mut OpCounts) -> Result<()> {
        check_range(i, self.n)?;
        if k == 0 {
            out.push(i);
            return Ok(());
        }
        if i >= self.m {
            return Ok(());
        }
        let mut found = Vec::new();
        self.core.inverse_power_into(i, k, &mut found, ops)?;
        for v in found {
            if v < self.m {
                out.push(v);
                continue;
            }
            ops.dict += 1;
            let value = self.dummies.nth_one(v - self.m);
            let mut occ = 1;
            while let Some(p) = self.seq.select_counted(value, occ, ops) {
                out.push(self.m + p);
                occ += 1;
            }
        }
        Ok(())
    }
}

impl SpaceUsage for RangeRepLarge {
    fn space(&self) -> Space {
        self.core.space() + self.seq.space() + self.dummies.space().as_index()
    }
}

/// `f: [n] → [m]` with `n <= m`.
///
/// Values `y >= n` that have a preimage become terminal roots; they are kept
/// in a dictionary over `[m]`. The tree preorders of terminal roots are marked
/// in `roots`, and the remaining preorders, renumbered densely, are the image
/// of `pi`.
#[derive(Clone, Debug)]
pub struct RangeRepSmall {
    pub(crate) n: usize,
    pub(crate) m: usize,
    pub(crate) core: FuncCore,
    pub(crate) pi: AnyPerm,
    pub(crate) roots: Fid,
    pub(crate) rdict: IndexableDict,
}

impl RangeRepSmall {
    pub fn build(image: &[usize], m: usize, opts: &FuncOptions) -> Result<Self> {
        let n = image.len();
        if n == 0 || n > m {
            return Err(Error::Param(format!("needs 0 < n <= m, got n={n} m={m}")));
        }
        for &v in image {
            check_range(v, m)?;
        }
        let mut r: Vec<usize> = image.iter().copied().filter(|&v| v >= n).collect();
        r.sort_unstable();
        r.dedup();
        let rdict = IndexableDict::from_set(m, &r)?;
        let mut next: Vec<Option<usize>> = image
            .iter()
            .map(|&v| Some(if v < n { v } else { n + rdict.rank_of(v).expect("in R") }))
            .collect();
        next.resize(n + r.len(), None);
        let width = opts.width.unwrap_or_else(|| default_width(next.len()));
        let (core, pre) = FuncCore::build(&next, width, opts.tree)?;
        let roots = Fid::from_set(next.len(), &pre[n..])?;
        let dense: Vec<usize> = pre[..n].iter().map(|&p| roots.rank0(p)).collect();
        let pi = AnyPerm::build(&Permutation::from_image(dense)?, opts.backend)?;
        Ok(RangeRepSmall { n, m, core, pi, roots, rdict })
    }

    pub fn domain(&self) -> usize {
        self.n
    }

    pub fn range(&self) -> usize {
        self.m
    }

    /// Values outside the domain that have a preimage.
    pub fn terminals(&self) -> &IndexableDict {
        &self.rdict
    }

    fn preorder(&self, y: usize, ops: &mut OpCounts) -> Option<usize> {
        ops.dict += 2;
        if y < self.n {
            Some(self.roots.nth_zero(self.pi.forward_counted(y, ops)))
        } else {
            self.rdict.rank_of(y).map(|r| self.roots.nth_one(r))
        }
    }

    fn label(&self, p: usize, ops: &mut OpCounts) -> usize {
        ops.dict += 2;
        if self.roots.contains(p) {
            self.rdict.nth(self.roots.rank1(p))
        } else {
            self.pi.inverse_counted(self.roots.rank0(p), ops)
        }
    }

    /// `f^k(i)`, or `None` when some intermediate value leaves `[n]`.
    pub fn power(&self, i: usize, k: u64) -> Result<Option<usize>> {
        self.power_counted(i, k, &mut OpCounts::new())
    }

    pub fn power_counted(&self, i: usize, k: u64, ops: &mut OpCounts) -> Result<Option<usize>> {
        check_range(i, self.n)?;
        if k == 0 {
            return Ok(Some(i));
        }
        let p = self.preorder(i, ops).expect("domain label");
        Ok(self.core.power(p, k, ops).map(|q| self.label(q, ops)))
    }

    /// `{ j ∈ [n] : f^k(j) = i }` for `i ∈ [m]`.
    pub fn inverse_power(&self, i: usize, k: u64) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        self.inverse_power_into(i, k, &mut out, &mut OpCounts::new())?;
        Ok(out)
    }

    pub fn inverse_power_into(&self, i: usize, k: u64, out: &mut Vec<usize>, ops: &mut OpCounts) -> Result<()> {
        check_range(i, self.m)?;
        if k == 0 {
            if i < self.n {
                out.push(i);
            }
            return Ok(());
        }
        let Some(p) = self.preorder(i, ops) else { return Ok(()) };
        let from = out.len();
        self.core.inverse(p, k, out, ops);
        for v in &mut out[from..] {
            *v = self.label(*v, ops);
        }
        Ok(())
    }
}

impl SpaceUsage for RangeRepSmall {
    fn space(&self) -> Space {
        self.pi.space() + self.core.space() + (self.roots.space() + self.rdict.space()).as_index()
    }
}
