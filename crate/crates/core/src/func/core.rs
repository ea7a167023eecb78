use crate::bits::{bits_for, BitSeq, Fid, IntVec, Space, SpaceUsage};
use crate::bp::{BpParams, BpTree};
use crate::error::{Error, Result};
use crate::ops::OpCounts;

/// Where a preorder position sits: which gadget, or a terminal tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetInfo {
    /// Preorder of the gadget root, the top of the cycle chain.
    pub start: usize,
    pub cycle_len: usize,
    pub size: usize,
    pub wide: bool,
}

/// The gadget-ordered tree in preorder space.
///
/// Preorders `[0, cyc_end)` hold the cyclic gadgets, narrow ones first; the
/// remaining preorders hold terminal trees, whose roots have no successor.
/// Inside a gadget whose cycle has length `q` and starts at preorder `g`,
/// preorders `g..g+q` are the cycle, walked against the direction of `f`, so
/// `f` is the tree parent everywhere except at `g`, which maps to `g+q-1`.
#[derive(Clone, Debug)]
pub(crate) struct FuncCore {
    pub(crate) tree: BpTree,
    pub(crate) nodes: usize,
    pub(crate) cyc_end: usize,
    pub(crate) narrow_end: usize,
    pub(crate) sizes: IntVec,
    pub(crate) classes: Fid,
    pub(crate) cycles: Fid,
    pub(crate) wc: usize,
    pub(crate) wide_sizes: IntVec,
    pub(crate) wide_cycles: IntVec,
    pub(crate) wide_roots: Fid,
}

const NONE: usize = usize::MAX;

struct Shape {
    children: Vec<Vec<usize>>,
    chain_next: Vec<usize>,
    roots: Vec<usize>,
    gadgets: Vec<(usize, usize, bool)>,
}

impl FuncCore {
    /// Builds from a successor array (`None` marks a terminal node) and the
    /// narrow/wide cycle-length threshold. Returns the preorder of every node.
    pub(crate) fn build(next: &[Option<usize>], width: usize, params: Option<BpParams>) -> Result<(Self, Vec<usize>)> {
        let n = next.len();
        if n == 0 {
            return Err(Error::Param("function needs a nonempty domain".into()));
        }
        let shape = shape(next, width);
        let mut bits = BitSeq::with_capacity(2 * n + 2);
        let mut pre = vec![0usize; n];
        let mut counter = 0;
        bits.push(true);
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for &r in &shape.roots {
            stack.push((r, 0));
            bits.push(true);
            pre[r] = counter;
            counter += 1;
            while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
                let chain = shape.chain_next[v];
                let child = if chain != NONE {
                    if *idx == 0 { Some(chain) } else { shape.children[v].get(*idx - 1).copied() }
                } else {
                    shape.children[v].get(*idx).copied()
                };
                *idx += 1;
                match child {
                    Some(c) => {
                        bits.push(true);
                        pre[c] = counter;
                        counter += 1;
                        stack.push((c, 0));
                    }
                    None => {
                        bits.push(false);
                        stack.pop();
                    }
                }
            }
        }
        bits.push(false);
        let params = params.unwrap_or_else(|| BpParams::for_nodes(n + 1));
        let tree = BpTree::with_params(bits, params)?;

        let mut narrow = Vec::new();
        let mut wide = Vec::new();
        let mut start = 0;
        for &(size, q, is_wide) in &shape.gadgets {
            if is_wide {
                wide.push((start, size, q));
            } else {
                narrow.push((start, size, q));
            }
            start += size;
        }
        let cyc_end = start;
        let narrow_end = narrow.iter().map(|g| g.1).sum::<usize>();
        let wc = narrow.iter().map(|g| g.2).max().unwrap_or(0);

        let mut sizes = Vec::new();
        let mut class_starts = Vec::new();
        let mut points = Vec::new();
        let mut i = 0;
        while i < narrow.len() {
            let (p, s, _) = narrow[i];
            let mut j = i;
            while j < narrow.len() && narrow[j].1 == s {
                j += 1;
            }
            sizes.push(s);
            class_starts.push(p);
            let class_end = p + s * (j - i);
            let mut g = i;
            for c in 1..=wc {
                while g < j && narrow[g].2 < c {
                    g += 1;
                }
                points.push(if g < j { narrow[g].0 } else { class_end });
            }
            i = j;
        }
        let mut ones = Vec::with_capacity(points.len());
        for (j, &x) in points.iter().enumerate() {
            ones.push(x + j);
        }
        let cycles = Fid::from_set(narrow_end + 1 + points.len(), &ones)?;

        let core = FuncCore {
            tree,
            nodes: n,
            cyc_end,
            narrow_end,
            sizes: IntVec::from_slice(bits_for(n), &sizes),
            classes: Fid::from_set(n, &class_starts)?,
            cycles,
            wc,
            wide_sizes: IntVec::from_slice(bits_for(n), &wide.iter().map(|g| g.1).collect::<Vec<_>>()),
            wide_cycles: IntVec::from_slice(bits_for(n), &wide.iter().map(|g| g.2).collect::<Vec<_>>()),
            wide_roots: Fid::from_set(n, &wide.iter().map(|g| g.0).collect::<Vec<_>>())?,
        };
        Ok((core, pre))
    }

    pub(crate) fn tree(&self) -> &BpTree {
        &self.tree
    }

    pub(crate) fn nodes(&self) -> usize {
        self.nodes
    }


    pub(crate) fn narrow_end(&self) -> usize {
        self.narrow_end
    }

    /// Gadget holding preorder `p`, or `None` inside a terminal tree.
    pub(crate) fn gadget(&self, p: usize, ops: &mut OpCounts) -> Option<GadgetInfo> {
        if p >= self.cyc_end {
            return None;
        }
        ops.dict += 3;
        if p < self.narrow_end {
            let i = self.classes.rank1(p + 1) - 1;
            let s = self.sizes.get(i);
            let pi = self.classes.nth_one(i);
            let g = pi + s * ((p - pi) / s);
            let q = self.cycles.nth_zero(g) - g - i * self.wc;
            Some(GadgetInfo { start: g, cycle_len: q, size: s, wide: false })
        } else {
            let j = self.wide_roots.rank1(p + 1) - 1;
            Some(GadgetInfo {
                start: self.wide_roots.nth_one(j),
                cycle_len: self.wide_cycles.get(j),
                size: self.wide_sizes.get(j),
                wide: true,
            })
        }
    }

    #[inline]
    fn pos(&self, p: usize) -> usize {
        self.tree.node(p + 1)
    }

    #[inline]
    fn pre(&self, x: usize) -> usize {
        self.tree.preorder(x) - 1
    }

    /// Distance from `x` to its deepest descendant, read off the leftmost spine.
    #[inline]
    pub(crate) fn height(&self, x: usize) -> usize {
        let rs = self.tree.rank_select();
        rs.select0(rs.rank0(x)) - x - 1
    }

    /// Preorder of `f^k` applied to preorder `p`; `None` once a terminal
    /// root would have to be left.
    pub(crate) fn power(&self, p: usize, k: u64, ops: &mut OpCounts) -> Option<usize> {
        let x = self.pos(p);
        let rel = self.tree.excess(x) as u64 - 2;
        ops.tree += 1;
        if k <= rel {
            ops.tree += 1;
            return Some(self.pre(self.tree.ancestor(x, k as usize).expect("k within depth")));
        }
        let gi = self.gadget(p, ops)?;
        let q = gi.cycle_len as u64;
        let j = q - (k - rel - 1) % q;
        Some(gi.start + j as usize - 1)
    }

    /// Appends the preorders of all `y` with `f^k(y) = p`, for `k >= 1`.
    pub(crate) fn inverse(&self, p: usize, k: u64, out: &mut Vec<usize>, ops: &mut OpCounts) {
        let x = self.pos(p);
        self.level_below(x, k, out, ops);
        let Some(gi) = self.gadget(p, ops) else { return };
        if p >= gi.start + gi.cycle_len {
            return;
        }
        let q = gi.cycle_len as u64;
        let shift = q - (p - gi.start) as u64;
        if k < shift {
            return;
        }
        let r1 = self.pos(gi.start);
        let top = (self.height(r1) as u64).min(k - shift);
        ops.tree += 1;
        let mut d = (k - shift) % q;
        while d <= top {
            self.level_below(r1, d, out, ops);
            d += q;
        }
    }

    /// Descendants of `x` exactly `rel` levels down, in preorder.
    fn level_below(&self, x: usize, rel: u64, out: &mut Vec<usize>, ops: &mut OpCounts) {
        ops.tree += 1;
        if (self.height(x) as u64) < rel {
            return;
        }
        let end = self.tree.close_of(x);
        ops.tree += 1;
        let mut y = x + rel as usize;
        loop {
            out.push(self.pre(y));
            ops.tree += 1;
            match self.tree.level_next(y) {
                Some(z) if z < end => y = z,
                _ => break,
            }
        }
    }
}

impl SpaceUsage for FuncCore {
    fn space(&self) -> Space {
        let aux = self.sizes.space()
            + self.classes.space()
            + self.cycles.space()
            + self.wide_sizes.space()
            + self.wide_cycles.space()
            + self.wide_roots.space();
        self.tree.space() + aux.as_index()
    }
}

fn shape(next: &[Option<usize>], width: usize) -> Shape {
    let n = next.len();
    let mut state = vec![0u8; n];
    let mut on_cycle = vec![false; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut path = Vec::new();
    for s in 0..n {
        if state[s] != 0 {
            continue;
        }
        path.clear();
        let mut v = Some(s);
        while let Some(x) = v {
            if state[x] != 0 {
                break;
            }
            state[x] = 1;
            path.push(x);
            v = next[x];
        }
        if let Some(x) = v {
            if state[x] == 1 {
                let at = path.iter().rposition(|&y| y == x).unwrap();
                let mut c = path[at..].to_vec();
                let m = (0..c.len()).min_by_key(|&i| c[i]).unwrap();
                c.rotate_left(m);
                for &y in &c {
                    on_cycle[y] = true;
                }
                cycles.push(c);
            }
        }
        for &y in &path {
            state[y] = 2;
        }
    }

    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for v in 0..n {
        match next[v] {
            _ if on_cycle[v] => roots.push(v),
            Some(p) => children[p].push(v),
            None => roots.push(v),
        }
    }
    let mut order = roots.clone();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        order.extend_from_slice(&children[v]);
        i += 1;
    }
    let mut hgt = vec![0usize; n];
    let mut deep = vec![0usize; n];
    let mut size = vec![1usize; n];
    let mut minl = vec![0usize; n];
    for &v in order.iter().rev() {
        deep[v] = v;
        minl[v] = v;
        for &c in &children[v] {
            size[v] += size[c];
            minl[v] = minl[v].min(minl[c]);
            if hgt[c] + 1 > hgt[v] {
                hgt[v] = hgt[c] + 1;
                deep[v] = deep[c];
            } else if hgt[c] + 1 == hgt[v] {
                deep[v] = deep[v].min(deep[c]);
            }
        }
        if children[v].len() > 1 {
            let kids = &mut children[v];
            let first = (0..kids.len()).min_by_key(|&i| (std::cmp::Reverse(hgt[kids[i]]), deep[kids[i]])).unwrap();
            kids.swap(0, first);
            kids[1..].sort_by_key(|&c| (size[c], minl[c]));
        }
    }

    let mut chain_next = vec![NONE; n];
    let mut comps: Vec<(bool, usize, usize, usize, usize)> = Vec::new();
    for c in &cycles {
        let q = c.len();
        let h = (0..q).max_by_key(|&i| (hgt[c[i]], std::cmp::Reverse(c[i]))).unwrap();
        let chain: Vec<usize> = (1..=q).map(|j| c[(h + q - j) % q]).collect();
        for w in chain.windows(2) {
            chain_next[w[0]] = w[1];
        }
        let total: usize = c.iter().map(|&v| size[v]).sum();
        comps.push((q > width, total, q, c[0], chain[0]));
    }
    comps.sort_unstable();
    let mut out_roots: Vec<usize> = comps.iter().map(|c| c.4).collect();
    let gadgets = comps.iter().map(|c| (c.1, c.2, c.0)).collect();
    let mut terminals: Vec<usize> = (0..n).filter(|&v| next[v].is_none()).collect();
    terminals.sort_unstable();
    out_roots.extend(terminals);
    Shape { children, chain_next, roots: out_roots, gadgets }
}
