#![allow(dead_code)]

use spfr::bits::BitSeq;

/// Naive view of a parenthesis sequence.
pub struct NaiveTree {
    pub bits: Vec<bool>,
    pub excess: Vec<i64>,
    pub close: Vec<usize>,
    pub parent: Vec<Option<usize>>,
}

impl NaiveTree {
    pub fn new(b: &BitSeq) -> Self {
        let bits: Vec<bool> = b.iter().collect();
        let n = bits.len();
        let mut excess = Vec::with_capacity(n);
        let mut e = 0;
        let mut close = vec![usize::MAX; n];
        let mut parent = vec![None; n];
        let mut stack: Vec<usize> = Vec::new();
        for (i, &o) in bits.iter().enumerate() {
            e += if o { 1 } else { -1 };
            excess.push(e);
            if o {
                parent[i] = stack.last().copied();
                stack.push(i);
            } else {
                let op = stack.pop().unwrap();
                close[op] = i;
                close[i] = op;
            }
        }
        NaiveTree { bits, excess, close, parent }
    }

    pub fn next_excess(&self, i: usize, k: i64) -> Option<usize> {
        (i + 1..self.bits.len()).find(|&j| self.excess[j] == k)
    }

    pub fn prev_excess(&self, i: usize, k: i64) -> Option<usize> {
        (0..i).rev().find(|&j| self.excess[j] == k)
    }

    pub fn ancestor(&self, x: usize, k: usize) -> Option<usize> {
        let mut v = Some(x);
        for _ in 0..k {
            v = self.parent[v?];
        }
        v
    }

    pub fn opens(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.bits.len()).filter(|&i| self.bits[i])
    }

    /// Open positions grouped by depth, each level in preorder.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let mut lv: Vec<Vec<usize>> = Vec::new();
        for x in self.opens() {
            let d = self.excess[x] as usize;
            if lv.len() < d {
                lv.resize(d, Vec::new());
            }
            lv[d - 1].push(x);
        }
        lv
    }
}

/// Every balanced sequence of `n` nodes (a root around a Dyck path).
pub fn all_trees(n: usize) -> Vec<BitSeq> {
    fn rec(m: usize, open: usize, close: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if open == m && close == m {
            out.push(cur.clone());
            return;
        }
        if open < m {
            cur.push(true);
            rec(m, open + 1, close, cur, out);
            cur.pop();
        }
        if close < open {
            cur.push(false);
            rec(m, open, close + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n - 1, 0, 0, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|inner| BitSeq::from_bools(std::iter::once(true).chain(inner).chain(std::iter::once(false))))
        .collect()
}

/// `f^k(i)` by iteration.
pub fn iterate(f: &[usize], i: usize, k: usize) -> usize {
    (0..k).fold(i, |x, _| f[x])
}

/// `{ j : f^k(j) = i }` by brute force, sorted.
pub fn preimages(f: &[usize], i: usize, k: usize) -> Vec<usize> {
    (0..f.len()).filter(|&j| iterate(f, j, k) == i).collect()
}
