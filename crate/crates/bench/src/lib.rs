//! Seeded fixtures shared by the query benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spfr::bp::random_tree_parens;
use spfr::perm::PowerRep;
use spfr::{AnyPerm, BackendKind, BpTree, FuncOptions, FuncRep, Permutation, Result};

pub const BACKENDS: [BackendKind; 4] =
    [BackendKind::Naive, BackendKind::Shortcut { t: 2 }, BackendKind::Shortcut { t: 8 }, BackendKind::Benes { t: 4 }];

pub struct PermFixture {
    pub perm: Permutation,
    pub reps: Vec<(BackendKind, AnyPerm)>,
    pub powers: Vec<(BackendKind, PowerRep)>,
}

pub fn perm_fixture(n: usize, seed: u64) -> Result<PermFixture> {
    let perm = Permutation::random(n, seed);
    let mut reps = Vec::new();
    let mut powers = Vec::new();
    for kind in BACKENDS {
        reps.push((kind, AnyPerm::build(&perm, kind)?));
        powers.push((kind, PowerRep::build(&perm, kind)?));
    }
    Ok(PermFixture { perm, reps, powers })
}

pub struct FuncFixture {
    pub image: Vec<usize>,
    pub rep: FuncRep,
}

pub fn func_fixture(n: usize, seed: u64) -> Result<FuncFixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let image: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
    let rep = FuncRep::build(&image, &FuncOptions::default())?;
    Ok(FuncFixture { image, rep })
}

pub struct TreeFixture {
    pub tree: BpTree,
    /// Open-parenthesis positions, one per node.
    pub nodes: Vec<usize>,
}

pub fn tree_fixture(n: usize, seed: u64) -> Result<TreeFixture> {
    let tree = BpTree::from_bits(random_tree_parens(n, seed))?;
    let nodes = (0..tree.parens_len()).filter(|&i| tree.is_open(i)).collect();
    Ok(TreeFixture { tree, nodes })
}

/// `count` seeded `(index, exponent)` pairs with index below `n` and exponent in `±kmax`.
pub fn queries(n: usize, kmax: i64, count: usize, seed: u64) -> Vec<(usize, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (rng.random_range(0..n), rng.random_range(-kmax..=kmax))).collect()
}
