use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spfr::io::{text, Stored};
use spfr::{PermBackend, Permutation};

use crate::{load, CmdResult};

/// Largest instance checked exhaustively, per structure family.
const EXHAUSTIVE_PERM: usize = 1 << 16;
const EXHAUSTIVE_POWERS: usize = 512;
const EXHAUSTIVE_FUNC: usize = 256;
/// Cap on oracle iteration steps for sampled checks.
const STEP_BUDGET: usize = 50_000_000;

struct Mismatch(String);

type Check = Result<u64, Mismatch>;

macro_rules! expect_eq {
    ($got:expr, $want:expr, $($what:tt)+) => {{
        let (g, w) = ($got, $want);
        if g != w {
            return Err(Mismatch(format!("{}: expected {:?}, got {:?}", format!($($what)+), w, g)));
        }
    }};
}

pub fn run(rep: &Path, input: &Path, samples: usize, seed: u64) -> CmdResult {
    let stored = load(&rep.to_path_buf())?;
    let src = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outcome = match &stored {
        Stored::Perm(p) => perm(p, &text::parse_perm(&src)?),
        Stored::Powers(p) => powers(p, &text::parse_perm(&src)?, samples, &mut rng),
        Stored::Tree(t) => tree(t, &text::parse_tree(&src)?, samples, &mut rng),
        Stored::Func(_) | Stored::RangeLarge(_) | Stored::RangeSmall(_) => {
            let (m, image) = text::parse_func(&src)?;
            func(&stored, &image, m, samples, &mut rng)?
        }
    };
    match outcome {
        Ok(n) => {
            println!("PASS {} checks on {}", n, stored.kind_name());
            Ok(ExitCode::SUCCESS)
        }
        Err(Mismatch(msg)) => {
            println!("FAIL {msg}");
            Ok(ExitCode::from(1))
        }
    }
}

fn perm(p: &spfr::AnyPerm, want: &Permutation) -> Check {
    expect_eq!(p.len(), want.len(), "length");
    let n = want.len();
    let step = n.div_ceil(EXHAUSTIVE_PERM).max(1);
    let mut checks = 0;
    for x in (0..n).step_by(step) {
        let y = want.apply(x);
        expect_eq!(p.forward(x), y, "forward x={x}");
        expect_eq!(p.inverse(y), x, "inverse x={y}");
        checks += 2;
    }
    Ok(checks)
}

fn iterate_perm(img: &[usize], inv: &[usize], x: usize, k: i64) -> usize {
    let (map, steps) = if k >= 0 { (img, k as u64) } else { (inv, k.unsigned_abs()) };
    let mut x = x;
    for _ in 0..steps {
        x = map[x];
    }
    x
}

fn powers(p: &spfr::perm::PowerRep, want: &Permutation, samples: usize, rng: &mut ChaCha8Rng) -> Check {
    expect_eq!(p.len(), want.len(), "length");
    let n = want.len() as i64;
    let (img, inv) = (want.image(), want.inverse().into_image());
    let mut checks = 0;
    if want.len() <= EXHAUSTIVE_POWERS {
        for x in 0..want.len() {
            for k in -2 * n..=2 * n {
                expect_eq!(p.power(x, k), iterate_perm(img, &inv, x, k), "power x={x} k={k}");
                checks += 1;
            }
        }
        return Ok(checks);
    }
    let kmax = (STEP_BUDGET / samples.max(1)).clamp(1, 2 * want.len()) as i64;
    for _ in 0..samples {
        let x = rng.random_range(0..want.len());
        let k = rng.random_range(-kmax..=kmax);
        expect_eq!(p.power(x, k), iterate_perm(img, &inv, x, k), "power x={x} k={k}");
        checks += 1;
    }
    Ok(checks)
}

fn tree(t: &spfr::BpTree, bits: &spfr::bits::BitSeq, samples: usize, rng: &mut ChaCha8Rng) -> Check {
    expect_eq!(t.bits() == bits, true, "parenthesis sequence");
    let len = bits.len();
    let mut close = vec![0; len];
    let mut parent = vec![None; len];
    let mut depth = vec![0usize; len];
    let mut stack: Vec<usize> = Vec::new();
    for i in 0..len {
        if bits.get(i) {
            parent[i] = stack.last().copied();
            stack.push(i);
            depth[i] = stack.len();
        } else {
            let o = stack.pop().expect("balanced");
            close[o] = i;
        }
    }
    let opens: Vec<usize> = (0..len).filter(|&i| bits.get(i)).collect();
    let all = opens.len() <= 4096;
    let picks: Vec<usize> = if all { opens.clone() } else { (0..samples).map(|_| opens[rng.random_range(0..opens.len())]).collect() };
    let mut checks = 0;
    for &x in &picks {
        let d = depth[x];
        expect_eq!(t.depth(x).ok(), Some(d), "depth x={x}");
        expect_eq!(t.findclose(x).ok(), Some(close[x]), "findclose x={x}");
        expect_eq!(t.findopen(close[x]).ok(), Some(x), "findopen x={}", close[x]);
        expect_eq!(t.parent(x).ok(), Some(parent[x]), "parent x={x}");
        let k = if all { d } else { rng.random_range(0..=d) };
        let mut a = Some(x);
        for _ in 0..k {
            a = a.and_then(|v| parent[v]);
        }
        expect_eq!(t.levelancestor(x, k).ok(), Some(a), "levelancestor x={x} k={k}");
        checks += 5;
    }
    Ok(checks)
}

enum FuncView<'a> {
    Total(&'a spfr::FuncRep),
    Large(&'a spfr::RangeRepLarge),
    Small(&'a spfr::RangeRepSmall),
}

impl FuncView<'_> {
    fn power(&self, i: usize, k: u64) -> Option<usize> {
        match self {
            FuncView::Total(f) => f.power(i, k).ok(),
            FuncView::Large(f) => f.power(i, k).ok(),
            FuncView::Small(f) => f.power(i, k).ok().flatten(),
        }
    }

    fn inverse(&self, i: usize, k: u64) -> Vec<usize> {
        let mut v = match self {
            FuncView::Total(f) => f.inverse_power(i, k),
            FuncView::Large(f) => f.inverse_power(i, k),
            FuncView::Small(f) => f.inverse_power(i, k),
        }
        .unwrap_or_default();
        v.sort_unstable();
        v
    }
}

/// `f^k(i)`, or `None` as soon as a value leaves the domain.
fn iterate(f: &[usize], i: usize, k: u64) -> Option<usize> {
    let mut x = i;
    for _ in 0..k {
        x = *f.get(x)?;
    }
    Some(x)
}

fn func(stored: &Stored, image: &[usize], m: usize, samples: usize, rng: &mut ChaCha8Rng) -> anyhow::Result<Check> {
    let n = image.len();
    let view = match stored {
        Stored::Func(f) if m == n && f.len() == n => FuncView::Total(f),
        Stored::RangeLarge(f) if f.domain() == n && f.range() == m => FuncView::Large(f),
        Stored::RangeSmall(f) if f.domain() == n && f.range() == m => FuncView::Small(f),
        _ => bail!("container does not match the input's n and m"),
    };
    let range = n.max(m);
    let mut checks = 0;
    let check_one = |i: usize, k: u64, full: bool, checks: &mut u64| -> Result<(), Mismatch> {
        let want = iterate(image, i, k);
        expect_eq!(view.power(i, k), want, "fpow i={i} k={k}");
        if k >= 1 && i < range {
            let got = view.inverse(i, k);
            for &j in &got {
                expect_eq!(iterate(image, j, k), Some(i), "finv i={i} k={k} member {j}");
            }
            if full {
                let all: Vec<usize> = (0..n).filter(|&j| iterate(image, j, k) == Some(i)).collect();
                expect_eq!(got, all, "finv i={i} k={k}");
            }
        }
        *checks += 2;
        Ok(())
    };
    if n <= EXHAUSTIVE_FUNC {
        for k in 0..=2 * n as u64 {
            for i in 0..n {
                if let Err(e) = check_one(i, k, true, &mut checks) {
                    return Ok(Err(e));
                }
            }
        }
        return Ok(Ok(checks));
    }
    let kmax = (STEP_BUDGET / samples.max(1)).clamp(1, 3 * n) as u64;
    for s in 0..samples {
        let i = rng.random_range(0..n);
        let k = rng.random_range(0..=kmax);
        let full = s < 20 && (k as usize) * n <= STEP_BUDGET / 20;
        if let Err(e) = check_one(i, k, full, &mut checks) {
            return Ok(Err(e));
        }
    }
    Ok(Ok(checks))
}
