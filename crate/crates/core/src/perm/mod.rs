//! Permutations of `[n]` and their succinct representations.

mod backend;
mod benes;
mod lehmer;
mod powers;
mod shortcut;

pub use backend::{AnyPerm, ArrayPerm, BackendKind, PermBackend};
pub use benes::{choose_qr, BenesRep};
pub use lehmer::{code_bits, lehmer_digits, small_forward, small_inverse, FactorialLadder, MixedRadixCode};
pub use powers::{CycleInfo, PowerRep};
pub use shortcut::{ShortcutIndex, ShortcutPerm};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitSeq;
use crate::error::{Error, Result};

/// A validated bijection on `[n]`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Validates `image` as a bijection. The error names the first index whose
    /// value is out of range or already taken.
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = BitSeq::zeros(n);
        for (i, &v) in image.iter().enumerate() {
            if v >= n || seen.get(v) {
                return Err(Error::NotBijection { index: i, value: v as u64 });
            }
            seen.set(v, true);
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    /// Uniform permutation by seeded Fisher-Yates.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(n, &mut rng)
    }

    pub fn random_with<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(rng);
        Permutation { image }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn into_image(self) -> Vec<usize> {
        self.image
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { image: inv }
    }

    pub fn cycles(&self) -> CycleDecomposition {
        let n = self.len();
        let mut seen = BitSeq::zeros(n);
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen.get(start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.set(start, true);
            let mut x = self.image[start];
            while x != start {
                seen.set(x, true);
                cycle.push(x);
                x = self.image[x];
            }
            cycles.push(cycle);
        }
        CycleDecomposition { cycles }
    }

    /// Identity extension to `[m]`, `m >= n`.
    pub fn padded(&self, m: usize) -> Permutation {
        assert!(m >= self.len());
        let mut image = self.image.clone();
        image.extend(self.len()..m);
        Permutation { image }
    }
}

/// Cycles in discovery order; each starts at its minimum, so the list is
/// also sorted by minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.cycles.iter().map(Vec::as_slice)
    }

    pub fn concat(&self) -> Vec<usize> {
        self.cycles.concat()
    }
}

/// `π^k(i)` by `|k|`-fold iteration of `π` or of its inverse.
pub fn power_oracle(perm: &Permutation, i: usize, k: i64) -> usize {
    let mut x = i;
    if k >= 0 {
        for _ in 0..k {
            x = perm.apply(x);
        }
    } else {
        let inv = perm.inverse();
        for _ in 0..k.unsigned_abs() {
            x = inv.apply(x);
        }
    }
    x
}

/// Information-theoretic size of a permutation of `[n]`: `ceil(lg n!)`.
pub fn lg_factorial_ceil(n: usize) -> u64 {
    let s: f64 = (2..=n).map(|i| (i as f64).log2()).sum();
    (s - 1e-9).ceil().max(0.0) as u64
}
