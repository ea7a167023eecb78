use crate::bits::{bits_for, Fid, IntVec, RankSelect, Space, SpaceUsage};

/// Level ancestors among marked nodes.
///
/// A node is marked when its depth is a multiple of `stride` and its height
/// is at least `stride`. The marked parent of a marked node sits exactly
/// `stride` levels above it, so one marked level spans `stride` tree levels.
/// Queries on the marked forest climb ladders from a long-path decomposition,
/// with jump pointers kept only at the bottom leaf of each ladder.
#[derive(Clone, Debug)]
pub(crate) struct MarkedLevelAnc {
    stride: usize,
    marks: Fid,
    /// Per ladder, the `2^i`-th ancestors of its bottom leaf.
    jump: Vec<IntVec>,
    /// Ladder start offsets.
    starts: Fid,
    ladder: IntVec,
    lad_pos: IntVec,
}

impl MarkedLevelAnc {
    pub(crate) fn build(parens: &RankSelect, stride: usize) -> Self {
        let len = parens.len();
        let nodes = len / 2;
        let mut height = vec![0u32; nodes];
        let mut stack: Vec<(usize, usize)> = Vec::new();
        let mut pre = 0;
        for i in 0..len {
            if parens.get(i) {
                stack.push((pre, i));
                pre += 1;
            } else {
                let (v, _) = stack.pop().expect("balanced");
                if let Some(&(p, _)) = stack.last() {
                    height[p] = height[p].max(height[v] + 1);
                }
            }
        }

        let mut marked = Vec::new();
        let mut parent = Vec::new();
        let mut open_marked: Vec<(usize, usize)> = Vec::new();
        let mut depth = 0usize;
        pre = 0;
        for i in 0..len {
            if parens.get(i) {
                depth += 1;
                if depth % stride == 0 && height[pre] as usize >= stride {
                    let id = marked.len();
                    marked.push(i);
                    parent.push(open_marked.last().map(|&(m, _)| m));
                    open_marked.push((id, depth));
                }
                pre += 1;
            } else {
                if open_marked.last().is_some_and(|&(_, d)| d == depth) {
                    open_marked.pop();
                }
                depth -= 1;
            }
        }

        let m = marked.len();
        let w = bits_for(m);
        let mut mh = vec![0usize; m];
        let mut heavy = vec![usize::MAX; m];
        for v in (0..m).rev() {
            if let Some(p) = parent[v] {
                if heavy[p] == usize::MAX || mh[v] + 1 > mh[p] {
                    heavy[p] = v;
                    mh[p] = mh[v] + 1;
                }
            }
        }
        let mut ladder = Vec::with_capacity(2 * m);
        let mut lad_pos = vec![0usize; m];
        let mut bases = Vec::new();
        for top in 0..m {
            if parent[top].is_some_and(|p| heavy[p] == top) {
                continue;
            }
            let mut path = vec![top];
            while heavy[*path.last().unwrap()] != usize::MAX {
                path.push(heavy[*path.last().unwrap()]);
            }
            let base = ladder.len();
            bases.push(base);
            for (k, &v) in path.iter().rev().enumerate() {
                lad_pos[v] = base + k;
                ladder.push(v);
            }
            let mut u = parent[top];
            for _ in 0..path.len() {
                match u {
                    Some(a) => {
                        ladder.push(a);
                        u = parent[a];
                    }
                    None => break,
                }
            }
        }

        let mut up: Vec<usize> = (0..m).map(|v| parent[v].unwrap_or(v)).collect();
        let mut mdepth = vec![0usize; m];
        for v in 0..m {
            if let Some(p) = parent[v] {
                mdepth[v] = mdepth[p] + 1;
            }
        }
        let max_depth = mdepth.iter().copied().max().unwrap_or(0);
        let leaves: Vec<usize> = bases.iter().map(|&b| ladder[b]).collect();
        let mut jump = Vec::new();
        loop {
            jump.push(IntVec::from_slice(w, &leaves.iter().map(|&l| up[l]).collect::<Vec<_>>()));
            if (1usize << jump.len()) > max_depth {
                break;
            }
            up = (0..m).map(|v| up[up[v]]).collect();
        }

        MarkedLevelAnc {
            stride,
            marks: Fid::from_set(len, &marked).expect("marked positions are increasing"),
            jump,
            starts: Fid::from_set(ladder.len(), &bases).expect("ladder bases are increasing"),
            ladder: IntVec::from_slice(w, &ladder),
            lad_pos: IntVec::from_slice(bits_for(ladder.len()), &lad_pos),
        }
    }

    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    pub(crate) fn marked_count(&self) -> usize {
        self.marks.len()
    }

    #[inline]
    pub(crate) fn is_marked(&self, pos: usize) -> bool {
        self.marks.contains(pos)
    }

    #[inline]
    pub(crate) fn id(&self, pos: usize) -> usize {
        self.marks.rank1(pos)
    }

    #[inline]
    pub(crate) fn pos(&self, id: usize) -> usize {
        self.marks.nth_one(id)
    }

    /// Marked ancestor `levels` marked levels above `id`; it must exist.
    pub(crate) fn ancestor(&self, id: usize, levels: usize) -> usize {
        if levels == 0 {
            return id;
        }
        let p = self.lad_pos.get(id);
        let path = self.starts.rank1(p + 1) - 1;
        let end = if path + 1 < self.starts.len() { self.starts.nth_one(path + 1) } else { self.ladder.len() };
        if p + levels < end {
            return self.ladder.get(p + levels);
        }
        let total = p - self.starts.nth_one(path) + levels;
        let i = (usize::BITS - 1 - total.leading_zeros()) as usize;
        let u = self.jump[i].get(path);
        self.ladder.get(self.lad_pos.get(u) + total - (1 << i))
    }
}

impl SpaceUsage for MarkedLevelAnc {
    fn space(&self) -> Space {
        (self.marks.space() + self.jump.space() + self.starts.space() + self.ladder.space() + self.lad_pos.space()).as_index()
    }
}
