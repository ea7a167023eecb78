use crate::bits::{bits_for, Fid, IntVec, Space, SpaceUsage};
use crate::error::{check_range, Error, Result};
use crate::ops::OpCounts;
use crate::perm::{AnyPerm, BackendKind, PermBackend, Permutation};

/// Location of an element inside `ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleInfo {
    /// Position of the element in `ψ`.
    pub pos: usize,
    /// First position of its cycle in `ψ`.
    pub left: usize,
    pub len: usize,
}

/// Arbitrary powers from the cycle layout `ψ`: all cycles written out
/// minimum-first, ordered by length and then by minimum. `lengths` holds the
/// distinct cycle lengths and `starts` the first position of each length block.
#[derive(Clone, Debug)]
pub struct PowerRep {
    psi: AnyPerm,
    lengths: IntVec,
    starts: Fid,
}

impl PowerRep {
    pub fn build(perm: &Permutation, kind: BackendKind) -> Result<Self> {
        let n = perm.len();
        let mut cycles = perm.cycles().cycles().to_vec();
        cycles.sort_by_key(|c| (c.len(), c[0]));
        let mut psi = Vec::with_capacity(n);
        let mut lengths = Vec::new();
        let mut starts = Vec::new();
        for c in &cycles {
            if lengths.last() != Some(&c.len()) {
                lengths.push(c.len());
                starts.push(psi.len());
            }
            psi.extend_from_slice(c);
        }
        let psi = AnyPerm::build(&Permutation::from_image(psi)?, kind)?;
        let lengths = IntVec::from_slice(bits_for(n), &lengths);
        Ok(PowerRep { psi, lengths, starts: Fid::from_set(n, &starts)? })
    }

    pub(crate) fn from_parts(psi: AnyPerm, lengths: IntVec, starts: Fid) -> Result<Self> {
        if starts.universe() != psi.len() || starts.len() != lengths.len() {
            return Err(Error::Format("inconsistent power section".into()));
        }
        Ok(PowerRep { psi, lengths, starts })
    }

    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    pub fn psi(&self) -> &AnyPerm {
        &self.psi
    }

    pub fn lengths(&self) -> &IntVec {
        &self.lengths
    }

    pub fn starts(&self) -> &Fid {
        &self.starts
    }

    pub fn cycle_info(&self, x: usize) -> CycleInfo {
        self.cycle_info_counted(x, &mut OpCounts::new())
    }

    pub fn cycle_info_counted(&self, x: usize, ops: &mut OpCounts) -> CycleInfo {
        let j = self.psi.inverse_counted(x, ops);
        let b = self.starts.rank1(j + 1) - 1;
        let sb = self.starts.nth_one(b);
        ops.dict += 2;
        let len = self.lengths.get(b);
        CycleInfo { pos: j, left: sb + len * ((j - sb) / len), len }
    }

    /// `π^k(x)` for any signed `k`.
    pub fn power(&self, x: usize, k: i64) -> usize {
        self.power_counted(x, k, &mut OpCounts::new())
    }

    pub fn power_counted(&self, x: usize, k: i64, ops: &mut OpCounts) -> usize {
        let CycleInfo { pos, left, len } = self.cycle_info_counted(x, ops);
        let step = k.rem_euclid(len as i64) as usize;
        self.psi.forward_counted(left + (pos - left + step) % len, ops)
    }

    pub fn try_power(&self, x: usize, k: i64) -> Result<usize> {
        check_range(x, self.len())?;
        Ok(self.power(x, k))
    }
}

impl SpaceUsage for PowerRep {
    fn space(&self) -> Space {
        self.psi.space() + (self.lengths.space() + self.starts.space()).as_index()
    }
}
