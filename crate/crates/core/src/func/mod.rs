//! Arbitrary functions `f: [n] → [m]` with power and inverse-power queries.

pub(crate) mod core;
mod range;
mod seq;

pub use self::core::GadgetInfo;
pub use range::{RangeRepLarge, RangeRepSmall};
pub use seq::ChunkedSeq;

use self::core::FuncCore;
use crate::bits::{Space, SpaceUsage};
use crate::bp::{BpParams, BpTree};
use crate::error::{check_range, Error, Result};
use crate::ops::OpCounts;
use crate::perm::{AnyPerm, BackendKind, PermBackend, Permutation};

/// Default narrow/wide threshold `max(1, ⌈lg^{1/3} n⌉)`.
pub fn default_width(n: usize) -> usize {
    if n < 2 {
        return 1;
    }
    ((n as f64).log2().cbrt().ceil() as usize).max(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuncOptions {
    pub backend: BackendKind,
    /// Cycle lengths above this are wide; `None` picks [`default_width`].
    pub width: Option<usize>,
    pub tree: Option<BpParams>,
}

impl Default for FuncOptions {
    fn default() -> Self {
        FuncOptions { backend: BackendKind::Shortcut { t: 2 }, width: None, tree: None }
    }
}

impl FuncOptions {
    pub fn with_backend(backend: BackendKind) -> Self {
        FuncOptions { backend, ..Self::default() }
    }
}

/// One connected component of the functional graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    /// Cycle nodes starting at the smallest label, in the direction of `f`.
    pub cycle: Vec<usize>,
    pub size: usize,
}

/// Plain component analysis of `f: [n] → [n]`.
#[derive(Clone, Debug)]
pub struct FuncGraph {
    image: Vec<usize>,
    gadgets: Vec<Gadget>,
    component: Vec<usize>,
}

impl FuncGraph {
    pub fn analyze(image: &[usize]) -> Result<Self> {
        let n = image.len();
        for &v in image {
            check_range(v, n)?;
        }
        let mut comp = vec![usize::MAX; n];
        let mut gadgets: Vec<Gadget> = Vec::new();
        let mut path = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            path.clear();
            let mut on_path = std::collections::HashMap::new();
            let mut v = s;
            while comp[v] == usize::MAX && !on_path.contains_key(&v) {
                on_path.insert(v, path.len());
                path.push(v);
                v = image[v];
            }
            let id = if comp[v] != usize::MAX {
                comp[v]
            } else {
                let mut cycle = path[on_path[&v]..].to_vec();
                let m = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap();
                cycle.rotate_left(m);
                gadgets.push(Gadget { cycle, size: 0 });
                gadgets.len() - 1
            };
            for &u in &path {
                comp[u] = id;
            }
            gadgets[id].size += path.len();
        }
        Ok(FuncGraph { image: image.to_vec(), gadgets, component: comp })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn gadgets(&self) -> &[Gadget] {
        &self.gadgets
    }

    pub fn gadget_of(&self, i: usize) -> &Gadget {
        &self.gadgets[self.component[i]]
    }
}

/// `f: [n] → [n]` as a gadget-ordered tree plus a label/preorder permutation.
#[derive(Clone, Debug)]
pub struct FuncRep {
    pub(crate) width: usize,
    pub(crate) core: FuncCore,
    pub(crate) pi: AnyPerm,
}

impl FuncRep {
    pub fn build(image: &[usize], opts: &FuncOptions) -> Result<Self> {
        let n = image.len();
        for &v in image {
            check_range(v, n)?;
        }
        let width = opts.width.unwrap_or_else(|| default_width(n));
        let next: Vec<Option<usize>> = image.iter().map(|&v| Some(v)).collect();
        let (core, pre) = FuncCore::build(&next, width, opts.tree)?;
        let pi = AnyPerm::build(&Permutation::from_image(pre)?, opts.backend)?;
        Ok(FuncRep { width, core, pi })
    }

    pub fn len(&self) -> usize {
        self.core.nodes()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn tree(&self) -> &BpTree {
        self.core.tree()
    }

    pub fn pi(&self) -> &AnyPerm {
        &self.pi
    }

    /// Preorders `[0, narrow_end)` hold the narrow gadgets.
    pub fn narrow_end(&self) -> usize {
        self.core.narrow_end()
    }

    pub fn power(&self, i: usize, k: u64) -> Result<usize> {
        self.power_counted(i, k, &mut OpCounts::new())
    }

    pub fn power_counted(&self, i: usize, k: u64, ops: &mut OpCounts) -> Result<usize> {
        check_range(i, self.len())?;
        if k == 0 {
            return Ok(i);
        }
        let p = self.pi.forward_counted(i, ops);
        let r = self.core.power(p, k, ops).expect("every node lies in a gadget");
        Ok(self.pi.inverse_counted(r, ops))
    }

    pub fn inverse_power(&self, i: usize, k: u64) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        self.inverse_power_into(i, k, &mut out, &mut OpCounts::new())?;
        Ok(out)
    }

    /// Appends `{ j : f^k(j) = i }` to `out`.
    pub fn inverse_power_into(&self, i: usize, k: u64, out: &mut Vec<usize>, ops: &mut OpCounts) -> Result<()> {
        check_range(i, self.len())?;
        if k == 0 {
            out.push(i);
            return Ok(());
        }
        let p = self.pi.forward_counted(i, ops);
        let from = out.len();
        self.core.inverse(p, k, out, ops);
        for v in &mut out[from..] {
            *v = self.pi.inverse_counted(*v, ops);
        }
        Ok(())
    }

    pub fn gadget_of(&self, i: usize) -> Result<GadgetInfo> {
        check_range(i, self.len())?;
        let mut ops = OpCounts::new();
        let p = self.pi.forward_counted(i, &mut ops);
        Ok(self.core.gadget(p, &mut ops).expect("every node lies in a gadget"))
    }

    /// Checks the tree against `image`: gadget order, cycle chains, parent
    /// edges, maximal-height bottom trees and longest leftmost paths.
    pub fn validate(&self, image: &[usize]) -> Result<()> {
        let n = self.len();
        if image.len() != n {
            return Err(Error::Structure("image length differs".into()));
        }
        let labels: Vec<usize> = (0..n).map(|p| self.pi.inverse(p)).collect();
        let bits = self.tree().bits();
        let mut parent = vec![usize::MAX; n];
        let mut height = vec![0usize; n];
        let mut first_run = vec![0usize; n];
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut stack: Vec<usize> = Vec::new();
        let mut p = 0;
        let mut run_start: Vec<usize> = Vec::new();
        for i in 1..bits.len() - 1 {
            if bits.get(i) {
                if let Some(&u) = stack.last() {
                    parent[p] = u;
                    kids[u].push(p);
                }
                stack.push(p);
                run_start.push(p);
                p += 1;
            } else {
                let v = stack.pop().ok_or_else(|| Error::Structure("unbalanced".into()))?;
                for s in run_start.drain(..) {
                    first_run[s] = p - s - 1;
                }
                if let Some(&u) = stack.last() {
                    height[u] = height[u].max(height[v] + 1);
                }
            }
        }
        let fail = |msg: String| Err(Error::Structure(msg));
        for v in 0..n {
            if first_run[v] != height[v] {
                return fail(format!("leftmost path of preorder {v} is not its longest"));
            }
        }
        let mut ops = OpCounts::new();
        let mut g = 0;
        let mut prev: Option<(bool, usize, usize)> = None;
        while g < n {
            let gi = self.core.gadget(g, &mut ops).expect("cyclic");
            let q = gi.cycle_len;
            if gi.start != g || parent[g] != usize::MAX || q == 0 || q > gi.size {
                return fail(format!("gadget at preorder {g} is inconsistent"));
            }
            let key = (gi.wide, gi.size, q);
            if gi.wide != (q > self.width) || prev.is_some_and(|k| k > key) {
                return fail(format!("gadget at preorder {g} is out of order"));
            }
            prev = Some(key);
            let end = g + gi.size;
            if end > n || (end < n && parent[end] != usize::MAX) {
                return fail(format!("gadget at preorder {g} has the wrong size"));
            }
            for j in 1..q {
                if parent[g + j] != g + j - 1 || kids[g + j - 1][0] != g + j {
                    return fail(format!("cycle chain broken at preorder {}", g + j));
                }
            }
            if image[labels[g]] != labels[g + q - 1] {
                return fail(format!("cycle of gadget at preorder {g} does not close"));
            }
            let own = |r: usize, skip: usize| kids[r].iter().skip(skip).map(|&c| height[c] + 1).max().unwrap_or(0);
            let bottom = height[g + q - 1];
            if (0..q - 1).any(|j| own(g + j, 1) > bottom) {
                return fail(format!("gadget at preorder {g} does not end with a tallest tree"));
            }
            for v in g + 1..end {
                if image[labels[v]] != labels[parent[v]] {
                    return fail(format!("preorder {v} does not hang under its image"));
                }
            }
            g = end;
        }
        Ok(())
    }
}

impl SpaceUsage for FuncRep {
    fn space(&self) -> Space {
        self.pi.space() + self.core.space()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f19() -> Vec<usize> {
        (0..19).map(|x| (x * x + 2 * x + 19 - 1) % 19).collect()
    }

    #[test]
    fn quad19_examples() {
        let f = f19();
        let rep = FuncRep::build(&f, &FuncOptions::default()).unwrap();
        rep.validate(&f).unwrap();
        assert_eq!(rep.power(0, 1).unwrap(), 18);
        let mut inv = rep.inverse_power(18, 1).unwrap();
        inv.sort();
        assert_eq!(inv, vec![0, 17]);
        let g = FuncGraph::analyze(&f).unwrap();
        for i in 0..19 {
            let gi = rep.gadget_of(i).unwrap();
            assert_eq!(gi.cycle_len, g.gadget_of(i).cycle.len());
            assert_eq!(gi.size, g.gadget_of(i).size);
        }
    }

    #[test]
    fn identity_is_all_loops() {
        let f: Vec<usize> = (0..10).collect();
        let rep = FuncRep::build(&f, &FuncOptions::default()).unwrap();
        rep.validate(&f).unwrap();
        assert_eq!(rep.tree().to_paren_string(), format!("({})", "()".repeat(10)));
        for i in 0..10 {
            assert_eq!(rep.gadget_of(i).unwrap(), GadgetInfo { start: rep.pi().forward(i), cycle_len: 1, size: 1, wide: false });
            assert_eq!(rep.power(i, 7).unwrap(), i);
            assert_eq!(rep.inverse_power(i, 3).unwrap(), vec![i]);
        }
    }

    #[test]
    fn widths() {
        assert_eq!(default_width(1), 1);
        assert_eq!(default_width(2), 1);
        assert_eq!(default_width(1 << 14), 3);
        assert!(matches!(FuncRep::build(&[0, 2], &FuncOptions::default()), Err(Error::OutOfRange { .. })));
    }
}
