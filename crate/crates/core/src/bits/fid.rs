use crate::bits::{BitSeq, IntVec, RankSelect, Space, SpaceUsage};
use crate::error::{check_range, Error, Result};

/// Physical layout behind a [`Fid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FidLayout {
    /// One bit per universe element plus the rank/select directory.
    Plain,
    /// High/low split of each element (Elias–Fano); used when it is smaller.
    Sparse,
}

#[derive(Clone, Debug)]
enum Repr {
    Plain(RankSelect),
    Sparse(EliasFano),
}

/// Fully indexable dictionary over a set `S ⊆ [m]`.
///
/// Supports `fullrank(x) = |{y ∈ S : y < x}|` for `0 <= x <= m` (the
/// one-past-the-end query returns `|S|`), `select(i)` for `i < |S|`, and the
/// same two queries on the complement `[m] \ S`.
#[derive(Clone, Debug)]
pub struct Fid {
    universe: usize,
    len: usize,
    repr: Repr,
}

impl Fid {
    /// Builds from strictly increasing elements, picking the smaller layout.
    pub fn from_set(universe: usize, elems: &[usize]) -> Result<Self> {
        validate(universe, elems)?;
        let layout = if sparse_bits(universe, elems.len()) < plain_bits(universe, elems.len()) {
            FidLayout::Sparse
        } else {
            FidLayout::Plain
        };
        Ok(Self::build(universe, elems, layout))
    }

    pub fn with_layout(universe: usize, elems: &[usize], layout: FidLayout) -> Result<Self> {
        validate(universe, elems)?;
        Ok(Self::build(universe, elems, layout))
    }

    /// Plain layout over an existing bitmap; the set is the positions of ones.
    pub fn from_bits(bits: BitSeq) -> Self {
        let rs = RankSelect::new(bits);
        Fid { universe: rs.len(), len: rs.count_ones(), repr: Repr::Plain(rs) }
    }

    fn build(universe: usize, elems: &[usize], layout: FidLayout) -> Self {
        let repr = match layout {
            FidLayout::Plain => {
                let mut bits = BitSeq::zeros(universe);
                for &x in elems {
                    bits.set(x, true);
                }
                Repr::Plain(RankSelect::new(bits))
            }
            FidLayout::Sparse => Repr::Sparse(EliasFano::new(universe, elems)),
        };
        Fid { universe, len: elems.len(), repr }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// `|S|`.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn layout(&self) -> FidLayout {
        match self.repr {
            Repr::Plain(_) => FidLayout::Plain,
            Repr::Sparse(_) => FidLayout::Sparse,
        }
    }

    /// `|{y ∈ S : y < x}|`; panics if `x > m`.
    #[inline]
    pub fn rank1(&self, x: usize) -> usize {
        match &self.repr {
            Repr::Plain(rs) => rs.rank1(x),
            Repr::Sparse(ef) => ef.rank1(x),
        }
    }

    #[inline]
    pub fn rank0(&self, x: usize) -> usize {
        x - self.rank1(x)
    }

    /// The `i`-th smallest member (0-based); panics if `i >= |S|`.
    #[inline]
    pub fn nth_one(&self, i: usize) -> usize {
        match &self.repr {
            Repr::Plain(rs) => rs.select1(i),
            Repr::Sparse(ef) => ef.select1(i),
        }
    }

    /// The `i`-th smallest non-member (0-based); panics if `i >= m - |S|`.
    #[inline]
    pub fn nth_zero(&self, i: usize) -> usize {
        match &self.repr {
            Repr::Plain(rs) => rs.select0(i),
            Repr::Sparse(ef) => ef.select0(i),
        }
    }

    /// `Some(rank1(x))` if `x` is a member.
    #[inline]
    pub(crate) fn rank_of(&self, x: usize) -> Option<usize> {
        match &self.repr {
            Repr::Plain(rs) => rs.get(x).then(|| rs.rank1(x)),
            Repr::Sparse(ef) => match ef.rank_member(x) {
                (r, true) => Some(r),
                _ => None,
            },
        }
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        match &self.repr {
            Repr::Plain(rs) => rs.get(x),
            Repr::Sparse(ef) => ef.rank_member(x).1,
        }
    }

    pub fn fullrank(&self, x: usize) -> Result<usize> {
        check_range(x, self.universe + 1)?;
        Ok(self.rank1(x))
    }

    pub fn fullrank0(&self, x: usize) -> Result<usize> {
        check_range(x, self.universe + 1)?;
        Ok(self.rank0(x))
    }

    pub fn select(&self, i: usize) -> Result<usize> {
        check_range(i, self.len)?;
        Ok(self.nth_one(i))
    }

    pub fn select0(&self, i: usize) -> Result<usize> {
        check_range(i, self.universe - self.len)?;
        Ok(self.nth_zero(i))
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |i| self.nth_one(i))
    }

    /// The set as a plain bitmap of length `m`.
    pub fn to_bits(&self) -> BitSeq {
        match &self.repr {
            Repr::Plain(rs) => rs.bits().clone(),
            Repr::Sparse(_) => {
                let mut bits = BitSeq::zeros(self.universe);
                for x in self.iter() {
                    bits.set(x, true);
                }
                bits
            }
        }
    }
}

impl SpaceUsage for Fid {
    fn space(&self) -> Space {
        match &self.repr {
            Repr::Plain(rs) => rs.space(),
            Repr::Sparse(ef) => ef.space(),
        }
    }
}

fn validate(universe: usize, elems: &[usize]) -> Result<()> {
    for (i, &x) in elems.iter().enumerate() {
        if x >= universe {
            return Err(Error::OutOfRange { value: x as u64, limit: universe as u64 });
        }
        if i > 0 && elems[i - 1] >= x {
            return Err(Error::NotSorted { index: i });
        }
    }
    Ok(())
}

fn directory_bits(len: usize, ones: usize) -> usize {
    let nsb = len.div_ceil(512);
    64 * (2 * nsb + 2) + 32 * (ones.div_ceil(512) + (len - ones).div_ceil(512))
}

fn plain_bits(universe: usize, n: usize) -> usize {
    universe + directory_bits(universe, n)
}

fn low_width(universe: usize, n: usize) -> usize {
    if n == 0 || universe <= n {
        0
    } else {
        // floor(lg(m / n))
        (usize::BITS - 1 - (universe / n).leading_zeros()) as usize
    }
}

fn sparse_bits(universe: usize, n: usize) -> usize {
    let l = low_width(universe, n);
    let upper = n + (universe >> l) + 1;
    n * l + upper + directory_bits(upper, n)
}

/// Elias–Fano encoding: low bits verbatim, high bits in unary over a
/// rank/select bitmap.
#[derive(Clone, Debug)]
struct EliasFano {
    universe: usize,
    low_width: usize,
    low: IntVec,
    high: RankSelect,
}

impl EliasFano {
    fn new(universe: usize, elems: &[usize]) -> Self {
        let n = elems.len();
        let l = low_width(universe, n);
        let mut low = IntVec::new(l, n);
        let mut high = BitSeq::zeros(n + (universe >> l) + 1);
        for (i, &x) in elems.iter().enumerate() {
            low.set(i, x & ((1usize << l) - 1));
            high.set((x >> l) + i, true);
        }
        EliasFano { universe, low_width: l, low, high: RankSelect::new(high) }
    }

    fn n(&self) -> usize {
        self.low.len()
    }

    fn select1(&self, i: usize) -> usize {
        assert!(i < self.n(), "select({i}) beyond set size {}", self.n());
        ((self.high.select1(i) - i) << self.low_width) | self.low.get(i)
    }

    fn rank1(&self, x: usize) -> usize {
        self.rank_member(x).0
    }

    /// `rank1(x)` and whether `x` is a member.
    fn rank_member(&self, x: usize) -> (usize, bool) {
        assert!(x <= self.universe, "rank position {x} beyond universe {}", self.universe);
        let h = x >> self.low_width;
        let lowx = x & ((1usize << self.low_width) - 1);
        let mut i = if h == 0 { 0 } else { self.high.select0(h - 1) - (h - 1) };
        while i < self.n() && self.high.get(h + i) {
            let l = self.low.get(i);
            if l >= lowx {
                return (i, l == lowx);
            }
            i += 1;
        }
        (i, false)
    }

    fn select0(&self, k: usize) -> usize {
        // smallest j with select1(j) - j > k (or j = n); the answer is k + j
        let (mut lo, mut hi) = (0, self.n());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.select1(mid) - mid > k {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        k + lo
    }
}

impl SpaceUsage for EliasFano {
    fn space(&self) -> Space {
        self.low.space() + self.high.space()
    }
}

/// Indexable dictionary: membership-aware rank and select over `S ⊆ [m]`.
#[derive(Clone, Debug)]
pub struct IndexableDict {
    fid: Fid,
}

impl IndexableDict {
    pub fn from_set(universe: usize, elems: &[usize]) -> Result<Self> {
        Ok(IndexableDict { fid: Fid::from_set(universe, elems)? })
    }

    pub fn from_fid(fid: Fid) -> Self {
        IndexableDict { fid }
    }

    pub fn fid(&self) -> &Fid {
        &self.fid
    }

    pub fn universe(&self) -> usize {
        self.fid.universe()
    }

    pub fn len(&self) -> usize {
        self.fid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fid.is_empty()
    }

    /// Rank of `x` if it is a member, `None` (the `-1` answer) otherwise.
    /// Panics if `x >= m`.
    #[inline]
    pub fn rank_of(&self, x: usize) -> Option<usize> {
        assert!(x < self.fid.universe(), "partial rank query {x} outside universe {}", self.fid.universe());
        self.fid.rank_of(x)
    }

    /// Partial rank: `-1` for non-members, `fullrank(x)` otherwise.
    pub fn partial_rank(&self, x: usize) -> Result<i64> {
        check_range(x, self.fid.universe())?;
        Ok(self.rank_of(x).map_or(-1, |r| r as i64))
    }

    pub fn select(&self, i: usize) -> Result<usize> {
        self.fid.select(i)
    }

    #[inline]
    pub fn nth(&self, i: usize) -> usize {
        self.fid.nth_one(i)
    }
}

impl SpaceUsage for IndexableDict {
    fn space(&self) -> Space {
        self.fid.space()
    }
}
