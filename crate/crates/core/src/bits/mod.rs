//! Bit sequences, packed integer arrays and rank/select dictionaries.
//!
//! [`Fid`] is the fully indexable dictionary: `fullrank`/`select` on a set
//! and on its complement. [`IndexableDict`] narrows that to partial rank
//! (membership plus rank) and select.

mod bitseq;
mod fid;
mod intvec;
mod rank9;

pub use bitseq::BitSeq;
pub use fid::{Fid, FidLayout, IndexableDict};
pub use intvec::{bits_for, ceil_log2, IntVec};
pub use rank9::RankSelect;

pub(crate) use bitseq::select_in_word;

use std::ops::{Add, AddAssign};

/// Space accounting in bits: the stored data itself versus the auxiliary index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Space {
    pub payload: u64,
    pub index: u64,
}

impl Space {
    pub const fn payload(bits: u64) -> Self {
        Space { payload: bits, index: 0 }
    }

    pub const fn index(bits: u64) -> Self {
        Space { payload: 0, index: bits }
    }

    pub const fn total(&self) -> u64 {
        self.payload + self.index
    }

    /// Reclassifies everything as index bits.
    pub const fn as_index(self) -> Self {
        Space { payload: 0, index: self.payload + self.index }
    }
}

impl Add for Space {
    type Output = Space;
    fn add(self, rhs: Space) -> Space {
        Space { payload: self.payload + rhs.payload, index: self.index + rhs.index }
    }
}

impl AddAssign for Space {
    fn add_assign(&mut self, rhs: Space) {
        *self = *self + rhs;
    }
}

impl std::iter::Sum for Space {
    fn sum<I: Iterator<Item = Space>>(iter: I) -> Space {
        iter.fold(Space::default(), Add::add)
    }
}

/// Structures that can report their exact size in bits.
pub trait SpaceUsage {
    fn space(&self) -> Space;
}

impl<T: SpaceUsage> SpaceUsage for Vec<T> {
    fn space(&self) -> Space {
        self.iter().map(SpaceUsage::space).sum()
    }
}
