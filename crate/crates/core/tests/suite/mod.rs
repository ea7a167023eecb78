//! Acceptance criteria 1 to 11, shared by every crate's `acceptance` target.

#![allow(dead_code)]

use std::collections::HashSet;
use std::time::Instant;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spfr::bits::{BitSeq, SpaceUsage};
use spfr::bp::{random_tree_parens, BpParams, BpTree};
use spfr::func::{FuncOptions, FuncRep, RangeRepLarge, RangeRepSmall};
use spfr::perm::{
    code_bits, small_forward, small_inverse, BenesRep, FactorialLadder, MixedRadixCode, PowerRep, ShortcutPerm,
};
use spfr::{BackendKind, OpCounts, PermBackend, Permutation};

pub type Outcome = Result<String, String>;

/// Crate-specific extra checks folded into a criterion's line.
pub type Extra = fn(u8) -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub const TITLES: [&str; 11] = [
    "Benes bit count",
    "Benes correctness",
    "shortcut bound",
    "shortcut space at t=2",
    "Lehmer codes",
    "permutation powers",
    "excess search",
    "level ancestor / successor",
    "function powers",
    "function space",
    "arbitrary ranges",
];

pub fn criterion(id: u8) -> Outcome {
    match id {
        1 => benes_bits(),
        2 => benes_correct(),
        3 => shortcut_bound(),
        4 => shortcut_space(),
        5 => lehmer(),
        6 => powers(),
        7 => excess(),
        8 => level_queries(),
        9 => function_powers(),
        10 => function_space(),
        11 => ranges(),
        _ => Err(format!("no criterion {id}")),
    }
}

/// Runs every criterion on its own thread, prints one line each, and returns
/// whether all passed.
pub fn run_all(label: &str, extra: Option<Extra>) -> bool {
    let start = Instant::now();
    let results: Vec<(u8, Outcome, f64)> = std::thread::scope(|s| {
        let hs: Vec<_> = (1..=11u8)
            .map(|id| {
                s.spawn(move || {
                    let t = Instant::now();
                    let mut r = std::panic::catch_unwind(|| criterion(id)).unwrap_or_else(|e| Err(panic_text(e)));
                    if let (Ok(detail), Some(f)) = (&r, extra) {
                        r = match std::panic::catch_unwind(|| f(id)).unwrap_or_else(|e| Err(panic_text(e))) {
                            Ok(more) if more.is_empty() => Ok(detail.clone()),
                            Ok(more) => Ok(format!("{detail}; {more}")),
                            Err(e) => Err(e),
                        };
                    }
                    (id, r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        hs.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });
    let mut ok = true;
    for (id, r, secs) in results {
        let title = TITLES[id as usize - 1];
        match r {
            Ok(d) => println!("[{label}] criterion {id:>2} PASS {title} ({secs:.1}s): {d}"),
            Err(e) => {
                ok = false;
                println!("[{label}] criterion {id:>2} FAIL {title} ({secs:.1}s): {e}");
            }
        }
    }
    println!("[{label}] {} in {:.1}s", if ok { "all criteria passed" } else { "some criteria failed" }, start.elapsed().as_secs_f64());
    ok
}

fn panic_text(e: Box<dyn std::any::Any + Send>) -> String {
    let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
    format!("panicked: {}", msg.unwrap_or_default())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_perm(n: usize, r: &mut ChaCha8Rng) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(r);
    Permutation::from_image(v).unwrap()
}

fn inverse_of(img: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; img.len()];
    for (i, &v) in img.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

fn lg(n: usize) -> usize {
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

fn benes_bits() -> Outcome {
    let mut r = rng(1);
    for e in 1..=12 {
        let n = 1usize << e;
        let want = (n * e - n / 2) as u64;
        for _ in 0..3 {
            let b = BenesRep::build(&random_perm(n, &mut r), 1).map_err(|e| e.to_string())?;
            let got = b.space().payload;
            ensure!(got == want, "n=2^{e}: payload {got} bits, expected {want}");
        }
    }
    Ok("n lg n - n/2 exact for n = 2^1..2^12".into())
}

fn benes_correct() -> Outcome {
    let mut r = rng(2);
    let sizes = [2usize, 4, 8, 64, 104, 1024];
    let mut count = 0;
    for c in 0..500 {
        let n = sizes[c % sizes.len()];
        let t = [1, 2, 3, 5][c % 4].min(n);
        let p = random_perm(n, &mut r);
        let b = BenesRep::build(&p, t).map_err(|e| e.to_string())?;
        for x in 0..n {
            let y = p.apply(x);
            ensure!(b.forward(x) == y, "n={n} t={t}: forward({x}) = {}, expected {y}", b.forward(x));
            ensure!(b.inverse(y) == x, "n={n} t={t}: inverse({y}) = {}, expected {x}", b.inverse(y));
        }
        count += 1;
    }
    Ok(format!("{count} perms, zero mismatches"))
}

fn shortcut_bound() -> Outcome {
    let mut r = rng(3);
    let mut worst_s = 0.0f64;
    let mut over_n_t = 0usize;
    let mut cases = 0;
    for c in 0..200 {
        let n = if c % 4 == 0 { r.random_range(1..64) } else { r.random_range(1..=4096) };
        let p = random_perm(n, &mut r);
        for t in [2usize, 3, 8, 64] {
            let sp = ShortcutPerm::build(&p, t).map_err(|e| e.to_string())?;
            let s = sp.index().holder_count();
            ensure!(s * t <= 2 * n, "n={n} t={t}: s={s} exceeds 2n/t");
            worst_s = worst_s.max(s as f64 * t as f64 / n as f64);
            if s * t > n {
                over_n_t += 1;
            }
            for x in 0..n {
                let mut ops = OpCounts::new();
                let got = sp.inverse_counted(x, &mut ops);
                ensure!(p.apply(got) == x, "n={n} t={t}: inverse({x}) = {got} is wrong");
                ensure!(ops.evals <= t as u64 + 1, "n={n} t={t}: inverse({x}) used {} evaluations", ops.evals);
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (perm, t) cases, evals <= t+1; max s·t/n = {worst_s:.3}; cases with s > n/t: {over_n_t}"))
}

fn shortcut_space() -> Outcome {
    const SLACK: u64 = 8;
    let (n, t) = (1usize << 12, 2usize);
    let lgn = lg(n) as u64;
    let mut r = rng(4);
    let mut worst = f64::MIN;
    for _ in 0..5 {
        let sp = ShortcutPerm::build(&random_perm(n, &mut r), t).map_err(|e| e.to_string())?;
        let total = sp.space().total();
        let shortcut_cells = (2 * n / t) as u64;
        let bound = n as u64 * lgn + shortcut_cells * (lgn + SLACK);
        ensure!(total <= bound, "total {total} bits exceeds {bound}");
        worst = worst.max((total - n as u64 * lgn) as f64 / shortcut_cells as f64 - lgn as f64);
    }
    Ok(format!("n=4096 t=2: total <= n⌈lg n⌉ + (2n/t)(⌈lg n⌉ + {SLACK}); measured constant {worst:.2}"))
}

fn naive_digits(img: &[usize]) -> Vec<u32> {
    (0..img.len()).map(|i| (0..i).filter(|&j| img[j] < img[i]).count() as u32).collect()
}

fn ceil_lg_factorial(q: usize) -> usize {
    let f: BigUint = (1..=q as u64).product();
    let mut bits = 0;
    while BigUint::from(1u8) << bits < f {
        bits += 1;
    }
    bits
}

fn check_code(img: &[usize], ladder: &FactorialLadder) -> Result<BigUint, String> {
    let q = img.len();
    let code = MixedRadixCode::encode(img);
    let digits = code.decode(ladder);
    ensure!(digits == naive_digits(img), "q={q}: digits of {img:?} disagree with the count oracle");
    let width = code_bits(q);
    ensure!(width == ceil_lg_factorial(q), "q={q}: code width {width} != ceil(lg q!)");
    let mut bits = BitSeq::default();
    code.write_bits(&mut bits, width);
    ensure!(bits.len() == width, "q={q}: wrote {} bits", bits.len());
    let back = MixedRadixCode::read_bits(q, &bits, 0, width);
    ensure!(back == code, "q={q}: code does not survive a bit round trip");
    for i in 0..q {
        ensure!(small_forward(&digits, i) == img[i], "q={q}: forward({i}) wrong for {img:?}");
        ensure!(small_inverse(&digits, img[i]) == i, "q={q}: inverse({}) wrong for {img:?}", img[i]);
    }
    Ok(code.value().clone())
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn lehmer() -> Outcome {
    let mut exhaustive = 0;
    for q in 1..=8 {
        let ladder = FactorialLadder::new(q);
        let mut v: Vec<usize> = (0..q).collect();
        let mut seen = HashSet::new();
        loop {
            seen.insert(check_code(&v, &ladder)?);
            exhaustive += 1;
            if !next_permutation(&mut v) {
                break;
            }
        }
        let fact: usize = (1..=q).product();
        ensure!(seen.len() == fact, "q={q}: {} distinct codes for {fact} perms", seen.len());
        ensure!(seen.iter().all(|c| *c < BigUint::from(fact)), "q={q}: a code is out of range");
    }
    let mut r = rng(5);
    for q in [64usize, 512] {
        let ladder = FactorialLadder::new(q);
        for _ in 0..1000 {
            check_code(random_perm(q, &mut r).image(), &ladder)?;
        }
    }
    Ok(format!("{exhaustive} perms exhaustively (q <= 8), 1000 each at q = 64, 512"))
}

fn kinds(n: usize) -> [BackendKind; 3] {
    [BackendKind::Naive, BackendKind::Shortcut { t: 3 }, BackendKind::Benes { t: 4.min(n) }]
}

fn powers() -> Outcome {
    let mut r = rng(6);
    let mut exhaustive = 0u64;
    for n in [1usize, 2, 3, 5, 8, 17, 64, 127, 300, 512] {
        let p = random_perm(n, &mut r);
        let img = p.image();
        let inv = inverse_of(img);
        for kind in kinds(n) {
            let rep = PowerRep::build(&p, kind).map_err(|e| e.to_string())?;
            for x in 0..n {
                let (mut fwd, mut bwd) = (x, x);
                for k in 0..=2 * n as i64 {
                    ensure!(rep.power(x, k) == fwd, "{kind} n={n}: power({x},{k}) = {}, expected {fwd}", rep.power(x, k));
                    ensure!(rep.power(x, -k) == bwd, "{kind} n={n}: power({x},{}) wrong", -k);
                    fwd = img[fwd];
                    bwd = inv[bwd];
                    exhaustive += 2;
                }
            }
        }
    }
    let mut fuzz = 0;
    while fuzz < 100_000 {
        let n = r.random_range(1..2000);
        let p = random_perm(n, &mut r);
        let img = p.image();
        let kind = kinds(n)[fuzz / 1000 % 3];
        let rep = PowerRep::build(&p, kind).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let x = r.random_range(0..n);
            let mut len = 1;
            let mut y = img[x];
            while y != x {
                y = img[y];
                len += 1;
            }
            let a = r.random_range(-1_000_000_000_000i64..1_000_000_000_000);
            let b = r.random_range(-1_000_000_000_000i64..1_000_000_000_000);
            let pa = rep.power(x, a);
            ensure!(rep.power(x, a + len) == pa, "{kind} n={n}: period {len} fails at x={x} a={a}");
            ensure!(rep.power(pa, b) == rep.power(x, a + b), "{kind} n={n}: composition fails at x={x} a={a} b={b}");
            ensure!(rep.power(pa, -a) == x, "{kind} n={n}: power(power(x,a),-a) != x at x={x} a={a}");
            fuzz += 1;
        }
    }
    Ok(format!("{exhaustive} exhaustive checks (n <= 512, 3 backends), {fuzz} fuzz cases"))
}

fn excess_of(bits: &BitSeq) -> Vec<i64> {
    let mut e = 0;
    bits.iter()
        .map(|b| {
            e += if b { 1 } else { -1 };
            e
        })
        .collect()
}

fn grid(delta: usize) -> Vec<BpParams> {
    let mut out = Vec::new();
    for block in [8usize, 32, 128] {
        for mult in [2usize, 8, 32] {
            out.push(BpParams { superblock: block * mult, block, arity: 3, delta, mark: delta.min(16) });
        }
    }
    out
}

fn excess() -> Outcome {
    let mut small = 0u64;
    for (nodes, seed) in [(1usize, 0u64), (2, 1), (7, 2), (40, 3), (200, 4), (512, 5), (512, 6)] {
        let bits = random_tree_parens(nodes, seed);
        let ex = excess_of(&bits);
        let len = bits.len();
        for params in grid(len + 1) {
            let t = BpTree::with_params(bits.clone(), params).map_err(|e| e.to_string())?;
            for i in 0..len {
                let mut first_after = vec![None; len + 2];
                for j in i + 1..len {
                    let slot = &mut first_after[ex[j] as usize];
                    if slot.is_none() {
                        *slot = Some(j);
                    }
                }
                let mut last_before = vec![None; len + 2];
                for j in 0..i {
                    last_before[ex[j] as usize] = Some(j);
                }
                for k in -1..=len as i64 + 1 {
                    let idx = |k: i64| usize::try_from(k).ok().and_then(|k| first_after.get(k).copied().flatten());
                    let pidx = |k: i64| usize::try_from(k).ok().and_then(|k| last_before.get(k).copied().flatten());
                    let nx = t.nextexcess(i, k).map_err(|e| e.to_string())?;
                    let pv = t.prevexcess(i, k).map_err(|e| e.to_string())?;
                    ensure!(nx == idx(k), "{params:?}: nextexcess({i},{k}) = {nx:?}, expected {:?}", idx(k));
                    ensure!(pv == pidx(k), "{params:?}: prevexcess({i},{k}) = {pv:?}, expected {:?}", pidx(k));
                    small += 2;
                }
            }
        }
    }

    let bits = random_tree_parens(1 << 19, 77);
    let ex = excess_of(&bits);
    let len = bits.len();
    let top = *ex.iter().max().unwrap() as usize;
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for (j, &e) in ex.iter().enumerate() {
        at[e as usize].push(j);
    }
    let next = |i: usize, k: i64| -> Option<usize> {
        let l = at.get(usize::try_from(k).ok()?)?;
        l.get(l.partition_point(|&j| j <= i)).copied()
    };
    let prev = |i: usize, k: i64| -> Option<usize> {
        let l = at.get(usize::try_from(k).ok()?)?;
        l.partition_point(|&j| j < i).checked_sub(1).map(|p| l[p])
    };
    let delta = 64;
    let mut r = rng(7);
    let mut large = 0u64;
    for params in grid(delta) {
        let t = BpTree::with_params(bits.clone(), params).map_err(|e| e.to_string())?;
        for _ in 0..100_000 {
            let i = r.random_range(0..len);
            let k = ex[i] + r.random_range(-(delta as i64)..=delta as i64);
            let nx = t.nextexcess(i, k).map_err(|e| e.to_string())?;
            let pv = t.prevexcess(i, k).map_err(|e| e.to_string())?;
            ensure!(nx == next(i, k), "2n=2^20 {params:?}: nextexcess({i},{k}) = {nx:?}, expected {:?}", next(i, k));
            ensure!(pv == prev(i, k), "2n=2^20 {params:?}: prevexcess({i},{k}) = {pv:?}, expected {:?}", prev(i, k));
            large += 2;
        }
    }
    Ok(format!("{small} exhaustive (2n <= 2^10) and {large} sampled (2n = 2^20) queries over a 3x3 (superblock, block) grid"))
}

/// Parent array and per-depth preorder lists, via a stack walk and a BFS.
struct Shape {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    succ: Vec<Option<usize>>,
    pred: Vec<Option<usize>>,
}

fn shape(bits: &BitSeq) -> Shape {
    let len = bits.len();
    let mut parent = vec![None; len];
    let mut depth = vec![0; len];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); len];
    let mut stack: Vec<usize> = Vec::new();
    for i in 0..len {
        if bits.get(i) {
            if let Some(&p) = stack.last() {
                parent[i] = Some(p);
                children[p].push(i);
            }
            stack.push(i);
            depth[i] = stack.len();
        } else {
            stack.pop();
        }
    }
    let (mut succ, mut pred) = (vec![None; len], vec![None; len]);
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut last: Option<usize> = None;
    while let Some(v) = queue.pop_front() {
        if let Some(u) = last.filter(|&u| depth[u] == depth[v]) {
            succ[u] = Some(v);
            pred[v] = Some(u);
        }
        last = Some(v);
        queue.extend(children[v].iter().copied());
    }
    Shape { parent, depth, succ, pred }
}

fn check_node(t: &BpTree, s: &Shape, x: usize, k: usize) -> Result<(), String> {
    let mut want = Some(x);
    for _ in 0..k {
        want = want.and_then(|v| s.parent[v]);
    }
    let got = t.levelancestor(x, k).map_err(|e| e.to_string())?;
    ensure!(got == want, "levelancestor({x},{k}) = {got:?}, expected {want:?}");
    let got = t.levelsuccessor(x).map_err(|e| e.to_string())?;
    ensure!(got == s.succ[x], "levelsuccessor({x}) = {got:?}, expected {:?}", s.succ[x]);
    let got = t.levelpredecessor(x).map_err(|e| e.to_string())?;
    ensure!(got == s.pred[x], "levelpredecessor({x}) = {got:?}, expected {:?}", s.pred[x]);
    Ok(())
}

fn all_trees(nodes: usize, out: &mut Vec<BitSeq>) {
    fn rec(m: usize, open: usize, close: usize, cur: &mut Vec<bool>, out: &mut Vec<BitSeq>) {
        if open == m && close == m {
            out.push(BitSeq::from_bools(std::iter::once(true).chain(cur.iter().copied()).chain([false])));
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
    rec(nodes - 1, 0, 0, &mut Vec::new(), out);
}

fn level_queries() -> Outcome {
    let mut trees = Vec::new();
    for nodes in 1..=10 {
        all_trees(nodes, &mut trees);
    }
    let tiny = BpParams { superblock: 4, block: 2, arity: 2, delta: 2, mark: 1 };
    for bits in &trees {
        let s = shape(bits);
        for t in [BpTree::from_bits(bits.clone()), BpTree::with_params(bits.clone(), tiny)] {
            let t = t.map_err(|e| e.to_string())?;
            for x in (0..bits.len()).filter(|&i| bits.get(i)) {
                for k in 0..=s.depth[x] {
                    check_node(&t, &s, x, k)?;
                }
            }
        }
    }
    let mut r = rng(8);
    let mut sampled = 0;
    for seed in 0..50u64 {
        let bits = random_tree_parens(100_000, 1000 + seed);
        let s = shape(&bits);
        let t = BpTree::from_bits(bits.clone()).map_err(|e| e.to_string())?;
        let opens: Vec<usize> = (0..bits.len()).filter(|&i| bits.get(i)).collect();
        for _ in 0..10_000 {
            let x = opens[r.random_range(0..opens.len())];
            let k = r.random_range(0..=s.depth[x]);
            check_node(&t, &s, x, k).map_err(|e| format!("tree {seed}: {e}"))?;
            sampled += 1;
        }
    }
    Ok(format!("all {} trees of <= 10 nodes exhaustively; {sampled} sampled queries on 50 trees of 10^5 nodes", trees.len()))
}

fn random_fn(n: usize, m: usize, r: &mut ChaCha8Rng) -> Vec<usize> {
    (0..n).map(|_| r.random_range(0..m)).collect()
}

/// Long tails into short cycles, plus some fixed points.
fn rho_fn(n: usize, r: &mut ChaCha8Rng) -> Vec<usize> {
    let q = r.random_range(1..=n.min(5));
    (0..n).map(|v| if v < q { (v + 1) % q } else if r.random_bool(0.8) { v - 1 } else { r.random_range(0..v) }).collect()
}

fn all_functions(n: usize) -> Vec<Vec<usize>> {
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let d = c % n;
                    c /= n;
                    d
                })
                .collect()
        })
        .collect()
}

struct Stats {
    checks: u64,
    worst_ratio: f64,
}

fn check_function(f: &[usize], opts: &FuncOptions, st: &mut Stats) -> Result<(), String> {
    let n = f.len();
    let rep = FuncRep::build(f, opts).map_err(|e| e.to_string())?;
    let mut row: Vec<usize> = (0..n).collect();
    for k in 0..=2 * n as u64 {
        let mut pre: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (j, &v) in row.iter().enumerate() {
            pre[v].push(j);
        }
        for i in 0..n {
            let got = rep.power(i, k).map_err(|e| e.to_string())?;
            ensure!(got == row[i], "n={n} {f:?}: f^{k}({i}) = {got}, expected {}", row[i]);
            let mut ops = OpCounts::new();
            let mut out = Vec::new();
            rep.inverse_power_into(i, k, &mut out, &mut ops).map_err(|e| e.to_string())?;
            out.sort_unstable();
            ensure!(out == pre[i], "n={n}: f^-{k}({i}) = {out:?}, expected {:?}", pre[i]);
            st.worst_ratio = st.worst_ratio.max(ops.tree as f64 / (1 + out.len()) as f64);
            st.checks += 2;
        }
        row = row.iter().map(|&v| f[v]).collect();
    }
    Ok(())
}

fn function_powers() -> Outcome {
    const C: f64 = 8.0;
    let mut st = Stats { checks: 0, worst_ratio: 0.0 };
    let f19: Vec<usize> = (0..19).map(|x| (x * x + 2 * x + 19 - 1) % 19).collect();
    ensure!(f19[0] == 18 && f19[1] == 2 && f19[18] == 17, "f19 formula misread: {f19:?}");
    for kind in kinds(19) {
        check_function(&f19, &FuncOptions::with_backend(kind), &mut st)?;
    }
    for n in 1..=5 {
        for f in all_functions(n) {
            check_function(&f, &FuncOptions::default(), &mut st)?;
        }
    }
    let mut r = rng(9);
    for n in [6usize, 10, 31, 64, 100, 128, 200, 256] {
        for (s, f) in [random_fn(n, n, &mut r), rho_fn(n, &mut r), random_perm(n, &mut r).into_image()].into_iter().enumerate() {
            let mut opts = FuncOptions::with_backend(kinds(n)[s % 3]);
            if n % 2 == 0 {
                opts.width = Some([1, 2, n][s % 3]);
            }
            check_function(&f, &opts, &mut st)?;
        }
    }
    ensure!(st.worst_ratio <= C, "inverse used {:.2} tree ops per (1+|answer|), above {C}", st.worst_ratio);
    Ok(format!("{} checks incl. f19 and all functions n <= 5; tree ops <= c(1+|ans|) with c = {:.2}", st.checks, st.worst_ratio))
}

fn function_space() -> Outcome {
    let n = 1usize << 14;
    let lgn = 14.0;
    let eps = 0.5;
    let mut r = rng(10);
    let mut worst = f64::MIN;
    for f in [random_fn(n, n, &mut r), rho_fn(n, &mut r), random_perm(n, &mut r).into_image()] {
        let rep = FuncRep::build(&f, &FuncOptions::with_backend(BackendKind::Shortcut { t: 2 })).map_err(|e| e.to_string())?;
        let total = rep.space().total() as f64;
        let bound = (1.0 + eps) * n as f64 * lgn + 8.0 * n as f64;
        ensure!(total <= bound, "total {total} bits exceeds (1+ε) n lg n + 8n = {bound}");
        worst = worst.max((total - (1.0 + eps) * n as f64 * lgn) / n as f64);
    }
    Ok(format!("n=2^14 shortcut t=2: total <= 1.5 n lg n + c·n with c = {worst:.2} (limit 8)"))
}

fn ranges() -> Outcome {
    let mut r = rng(11);
    let mut checks = 0u64;
    for (n, m) in [(3usize, 1usize), (30, 10), (90, 30), (150, 50), (100, 7), (257, 16), (300, 100)] {
        let f = random_fn(n, m, &mut r);
        let rep = RangeRepLarge::build(&f, m, &FuncOptions::default()).map_err(|e| e.to_string())?;
        let mut row: Vec<usize> = (0..n).collect();
        for k in 0..=2 * m as u64 + 2 {
            for i in 0..n {
                let got = rep.power(i, k).map_err(|e| e.to_string())?;
                ensure!(got == row[i], "n={n} m={m}: f^{k}({i}) = {got}, expected {}", row[i]);
                if k > 0 && i < m {
                    let mut got = rep.inverse_power(i, k).map_err(|e| e.to_string())?;
                    got.sort_unstable();
                    let want: Vec<usize> = (0..n).filter(|&j| row[j] == i).collect();
                    ensure!(got == want, "n={n} m={m}: f^-{k}({i}) = {got:?}, expected {want:?}");
                }
                checks += 2;
            }
            row = row.iter().map(|&v| f[v]).collect();
        }
    }
    for (n, m) in [(1usize, 3usize), (10, 30), (30, 90), (50, 150), (16, 16), (40, 1000), (100, 300)] {
        let mut f = random_fn(n, m, &mut r);
        if n % 2 == 0 {
            for v in f.iter_mut().step_by(3) {
                *v %= n;
            }
        }
        let rep = RangeRepSmall::build(&f, m, &FuncOptions::default()).map_err(|e| e.to_string())?;
        let mut row: Vec<Option<usize>> = (0..n).map(Some).collect();
        for k in 0..=2 * n as u64 + 2 {
            for i in 0..n {
                let got = rep.power(i, k).map_err(|e| e.to_string())?;
                ensure!(got == row[i], "n={n} m={m}: f^{k}({i}) = {got:?}, expected {:?}", row[i]);
                checks += 1;
            }
            if k > 0 {
                for y in 0..m {
                    let mut got = rep.inverse_power(y, k).map_err(|e| e.to_string())?;
                    got.sort_unstable();
                    let want: Vec<usize> = (0..n).filter(|&j| row[j] == Some(y)).collect();
                    ensure!(got == want, "n={n} m={m}: f^-{k}({y}) = {got:?}, expected {want:?}");
                    checks += 1;
                }
            }
            row = row.into_iter().map(|v| v.filter(|&x| x < n).map(|x| f[x])).collect();
        }
    }
    Ok(format!("{checks} checks over n > m grids (incl. n = 3m) and n <= m grids (incl. m = 3n)"))
}
