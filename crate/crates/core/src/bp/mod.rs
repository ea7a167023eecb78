//! Ordinal trees as balanced parenthesis sequences.
//!
//! A node is identified by the position of its open parenthesis. Depth is the
//! excess at that position, so the root has depth 1.

mod excess;
mod levelanc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{ceil_log2, BitSeq, RankSelect, Space, SpaceUsage};
use crate::error::{check_range, Error, Result};
use excess::{Backward, ExcessIndex, Forward};
use levelanc::MarkedLevelAnc;

/// Sizes of the excess index and the level-ancestor scaffold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BpParams {
    /// Superblock length in parentheses; a multiple of `block`.
    pub superblock: usize,
    pub block: usize,
    /// Branching factor of the per-superblock range trees.
    pub arity: usize,
    /// Largest supported `|k - excess(i)|` in excess searches.
    pub delta: usize,
    /// Depth stride of marked nodes; at most `delta`.
    pub mark: usize,
}

impl BpParams {
    /// Defaults for a tree of `n` nodes, with `lg = ⌈lg n⌉`: blocks of 64,
    /// superblocks of `min(lg⁴, max(64, n/2))`, arity `⌊√lg⌋`,
    /// `delta = min(lg², superblock / lg²)` and a mark stride of `min(lg², delta)`.
    pub fn for_nodes(n: usize) -> Self {
        let lg = ceil_log2(n.max(2));
        let lg2 = lg * lg;
        let block = 64;
        let superblock = ((lg2 * lg2).min((2 * n / 4).max(64)) / block).max(1) * block;
        let arity = ((lg as f64).sqrt() as usize).max(2);
        let delta = lg2.min(superblock / lg2).max(2);
        BpParams { superblock, block, arity, delta, mark: lg2.min(delta) }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Param(format!("{m}: {self:?}")));
        if self.block == 0 || self.superblock < self.block || self.superblock % self.block != 0 {
            return bad("superblock must be a positive multiple of block");
        }
        if self.arity < 2 {
            return bad("arity must be at least 2");
        }
        if self.delta == 0 || self.mark == 0 || self.mark > self.delta {
            return bad("need 1 <= mark <= delta");
        }
        Ok(())
    }
}

/// Balanced parentheses with excess search and level-ancestor support.
#[derive(Clone, Debug)]
pub struct BpTree {
    parens: RankSelect,
    params: BpParams,
    fwd: ExcessIndex,
    bwd: ExcessIndex,
    marked: MarkedLevelAnc,
}

impl BpTree {
    /// Parses a string of `(` and `)`; whitespace is ignored.
    pub fn from_parens(s: &str) -> Result<Self> {
        let mut bits = BitSeq::default();
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '(' => bits.push(true),
                ')' => bits.push(false),
                _ => return Err(Error::Structure(format!("unexpected character {c:?}"))),
            }
        }
        Self::from_bits(bits)
    }

    pub fn from_bits(bits: BitSeq) -> Result<Self> {
        let n = bits.len() / 2;
        Self::with_params(bits, BpParams::for_nodes(n))
    }

    pub fn with_params(bits: BitSeq, params: BpParams) -> Result<Self> {
        params.validate()?;
        validate_parens(&bits)?;
        let parens = RankSelect::new(bits);
        let fwd = ExcessIndex::build(&Forward(&parens), &params);
        let bwd = ExcessIndex::build(&Backward(&parens), &params);
        let marked = MarkedLevelAnc::build(&parens, params.mark);
        Ok(BpTree { parens, params, fwd, bwd, marked })
    }

    /// Tree from `parents[v]` (`None` for the single root). Children are
    /// ordered by label.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        Self::from_bits(parens_from_parents(parents)?.0)
    }

    pub fn params(&self) -> BpParams {
        self.params
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.parens.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.parens.is_empty()
    }

    pub fn parens_len(&self) -> usize {
        self.parens.len()
    }

    pub fn bits(&self) -> &BitSeq {
        self.parens.bits()
    }

    pub fn to_paren_string(&self) -> String {
        self.bits().iter().map(|b| if b { '(' } else { ')' }).collect()
    }

    /// Number of link ranges in the forward excess index, and superblocks.
    pub fn link_stats(&self) -> (usize, usize) {
        (self.fwd.link_count(), self.fwd.superblocks())
    }

    pub fn marked_count(&self) -> usize {
        self.marked.marked_count()
    }

    #[inline]
    pub fn is_open(&self, i: usize) -> bool {
        self.parens.get(i)
    }

    fn check_open(&self, x: usize) -> Result<()> {
        check_range(x, self.parens.len())?;
        if self.parens.get(x) {
            Ok(())
        } else {
            Err(Error::ParenKind { pos: x, expected: "open" })
        }
    }

    fn check_close(&self, x: usize) -> Result<()> {
        check_range(x, self.parens.len())?;
        if self.parens.get(x) {
            Err(Error::ParenKind { pos: x, expected: "close" })
        } else {
            Ok(())
        }
    }

    /// Opens minus closes in `[0, i]`.
    #[inline]
    pub fn excess(&self, i: usize) -> i64 {
        2 * self.parens.rank1(i + 1) as i64 - (i as i64 + 1)
    }

    /// Least `j > i` with `excess(j) = k`, for `|k - excess(i)| <= delta`.
    pub fn nextexcess(&self, i: usize, k: i64) -> Result<Option<usize>> {
        check_range(i, self.parens.len())?;
        self.fwd.next(&Forward(&self.parens), i + 1, k)
    }

    /// Greatest `j < i` with `excess(j) = k`, for `|k - excess(i)| <= delta`.
    pub fn prevexcess(&self, i: usize, k: i64) -> Result<Option<usize>> {
        check_range(i, self.parens.len())?;
        Ok(self.prev_raw(i, k)?.and_then(|j| usize::try_from(j).ok()))
    }

    /// As `prevexcess`, but position `-1` (excess 0) counts as a match.
    fn prev_raw(&self, i: usize, k: i64) -> Result<Option<isize>> {
        let len = self.parens.len();
        let j = self.bwd.next(&Backward(&self.parens), len - 1 - i, k)?;
        Ok(j.map(|j| len as isize - 2 - j as isize))
    }

    pub fn findclose(&self, i: usize) -> Result<usize> {
        self.check_open(i)?;
        Ok(self.close_of(i))
    }

    pub fn findopen(&self, j: usize) -> Result<usize> {
        self.check_close(j)?;
        Ok(self.open_of(j))
    }

    #[inline]
    pub(crate) fn close_of(&self, i: usize) -> usize {
        self.fwd
            .next(&Forward(&self.parens), i + 1, self.excess(i) - 1)
            .expect("offset 1 is always supported")
            .expect("open parenthesis has a match")
    }

    #[inline]
    pub(crate) fn open_of(&self, j: usize) -> usize {
        let p = self.prev_raw(j, self.excess(j)).expect("offset 0 is always supported");
        (p.expect("close parenthesis has a match") + 1) as usize
    }

    pub fn depth(&self, x: usize) -> Result<usize> {
        self.check_open(x)?;
        Ok(self.excess(x) as usize)
    }

    /// Ancestor of `x` that is `k` levels up; `x` itself for `k = 0`.
    pub fn levelancestor(&self, x: usize, k: usize) -> Result<Option<usize>> {
        self.check_open(x)?;
        Ok(self.ancestor(x, k))
    }

    pub(crate) fn ancestor(&self, x: usize, k: usize) -> Option<usize> {
        let d = self.excess(x) as usize;
        if k == 0 {
            return Some(x);
        }
        if k >= d {
            return None;
        }
        if k <= self.params.delta {
            return Some(self.ancestor_near(x, d, k));
        }
        let target = d - k;
        let l = self.marked.stride();
        let m1 = l * (d / l);
        let a1 = if m1 == d { x } else { self.ancestor_near(x, d, d - m1) };
        if m1 - target <= self.params.delta {
            return Some(self.ancestor_near(a1, m1, m1 - target));
        }
        let (a, ma) = if self.marked.is_marked(a1) { (a1, m1) } else { (self.ancestor_near(a1, m1, l), m1 - l) };
        let md = target.div_ceil(l) * l;
        let b = self.marked.pos(self.marked.ancestor(self.marked.id(a), (ma - md) / l));
        Some(if md == target { b } else { self.ancestor_near(b, md, md - target) })
    }

    /// `k`-th ancestor of `x` at depth `d`, for `1 <= k < d` and `k <= delta`.
    fn ancestor_near(&self, x: usize, d: usize, k: usize) -> usize {
        let c = self.close_of(x);
        let j = self
            .fwd
            .next(&Forward(&self.parens), c + 1, (d - k) as i64 - 1)
            .expect("offset within delta")
            .expect("ancestor closes after x");
        self.open_of(j)
    }

    pub fn parent(&self, x: usize) -> Result<Option<usize>> {
        self.levelancestor(x, 1)
    }

    pub fn firstchild(&self, x: usize) -> Result<Option<usize>> {
        self.check_open(x)?;
        Ok((self.parens.get(x + 1)).then_some(x + 1))
    }

    pub fn nextsibling(&self, x: usize) -> Result<Option<usize>> {
        self.check_open(x)?;
        let c = self.close_of(x);
        Ok((c + 1 < self.parens.len() && self.parens.get(c + 1)).then_some(c + 1))
    }

    /// Next node at the same depth in preorder.
    pub fn levelsuccessor(&self, x: usize) -> Result<Option<usize>> {
        self.check_open(x)?;
        Ok(self.level_next(x))
    }

    pub(crate) fn level_next(&self, x: usize) -> Option<usize> {
        let c = self.close_of(x);
        self.fwd.next(&Forward(&self.parens), c + 1, self.excess(x)).expect("offset 1 is always supported")
    }

    /// Previous node at the same depth in preorder.
    pub fn levelpredecessor(&self, x: usize) -> Result<Option<usize>> {
        self.check_open(x)?;
        let j = self.prev_raw(x, self.excess(x))?;
        Ok(j.filter(|&j| j >= 0).map(|j| self.open_of(j as usize + 1)))
    }

    /// Whether `x` is an ancestor of `y`; every node is its own ancestor.
    pub fn isancestor(&self, x: usize, y: usize) -> Result<bool> {
        self.check_open(x)?;
        self.check_open(y)?;
        Ok(self.is_ancestor(x, y))
    }

    #[inline]
    pub(crate) fn is_ancestor(&self, x: usize, y: usize) -> bool {
        x <= y && y < self.close_of(x)
    }

    /// Preorder rank of node `x`.
    #[inline]
    pub fn preorder(&self, x: usize) -> usize {
        self.parens.rank1(x)
    }

    /// Node with preorder rank `p`.
    #[inline]
    pub fn node(&self, p: usize) -> usize {
        self.parens.select1(p)
    }

    pub fn subtree_size(&self, x: usize) -> Result<usize> {
        Ok((self.findclose(x)? - x + 1) / 2)
    }

    pub(crate) fn rank_select(&self) -> &RankSelect {
        &self.parens
    }
}

impl SpaceUsage for BpTree {
    fn space(&self) -> Space {
        self.parens.space() + self.fwd.space() + self.bwd.space() + self.marked.space()
    }
}

fn validate_parens(bits: &BitSeq) -> Result<()> {
    if bits.is_empty() {
        return Err(Error::Structure("empty sequence".into()));
    }
    let mut e = 0i64;
    for (i, b) in bits.iter().enumerate() {
        e += if b { 1 } else { -1 };
        if e < 0 {
            return Err(Error::Structure(format!("unmatched close at {i}")));
        }
        if e == 0 && i + 1 != bits.len() {
            return Err(Error::Structure(format!("sequence is a forest: root closes at {i}")));
        }
    }
    if e != 0 {
        return Err(Error::Structure(format!("{e} unclosed parentheses")));
    }
    Ok(())
}

/// Parentheses for a parent array, plus the label of each preorder rank.
pub fn parens_from_parents(parents: &[Option<usize>]) -> Result<(BitSeq, Vec<usize>)> {
    let n = parents.len();
    let mut root = None;
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, &p) in parents.iter().enumerate() {
        match p {
            None if root.is_some() => return Err(Error::Structure(format!("second root at node {v}"))),
            None => root = Some(v),
            Some(p) if p >= n => return Err(Error::Structure(format!("parent {p} of node {v} out of range"))),
            Some(p) => children[p].push(v),
        }
    }
    let root = root.ok_or_else(|| Error::Structure("no root".into()))?;
    let mut bits = BitSeq::with_capacity(2 * n);
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![(root, 0usize)];
    bits.push(true);
    order.push(root);
    while let Some((v, next)) = stack.last_mut() {
        if let Some(&c) = children[*v].get(*next) {
            *next += 1;
            bits.push(true);
            order.push(c);
            stack.push((c, 0));
        } else {
            bits.push(false);
            stack.pop();
        }
    }
    if order.len() != n {
        return Err(Error::Structure("parent array contains a cycle".into()));
    }
    Ok((bits, order))
}

/// Uniformly random ordered tree on `n >= 1` nodes: a root over a uniform
/// Dyck path, drawn with the cycle lemma.
pub fn random_tree_parens(n: usize, seed: u64) -> BitSeq {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = n - 1;
    let mut steps: Vec<bool> = (0..2 * m + 1).map(|i| i < m).collect();
    for i in (1..steps.len()).rev() {
        let j = rng.random_range(0..=i);
        steps.swap(i, j);
    }
    let (mut s, mut best, mut at) = (0i64, 0i64, 0usize);
    for (i, &b) in steps.iter().enumerate() {
        s += if b { 1 } else { -1 };
        if s < best {
            best = s;
            at = i + 1;
        }
    }
    let mut bits = BitSeq::with_capacity(2 * n);
    bits.push(true);
    for i in 0..2 * m {
        bits.push(steps[(at + i) % steps.len()]);
    }
    bits.push(false);
    bits
}
