use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spfr::io::Stored;
use spfr::{OpCounts, PermBackend};

use crate::{load, CmdResult};

struct Tally {
    ops: OpCounts,
    sink: usize,
}

/// Runs `queries` random queries of one kind, split over `threads` workers.
fn timed(name: &str, queries: usize, seed: u64, threads: usize, f: &(dyn Fn(&mut ChaCha8Rng, &mut Tally) + Sync)) {
    let threads = threads.max(1);
    let start = Instant::now();
    let tallies: Vec<Tally> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let share = queries / threads + usize::from(w < queries % threads);
                s.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (w as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                    let mut t = Tally { ops: OpCounts::new(), sink: 0 };
                    for _ in 0..share {
                        f(&mut rng, &mut t);
                    }
                    t
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let secs = start.elapsed().as_secs_f64();
    let (mut evals, mut tree, mut sink) = (0u64, 0u64, 0usize);
    for t in &tallies {
        evals += t.ops.evals;
        tree += t.ops.tree;
        sink = sink.wrapping_add(t.sink);
    }
    let q = queries.max(1) as f64;
    println!(
        "{name:<8} queries={queries} ns/query={:.1} evals/query={:.2} tree/query={:.2} checksum={sink}",
        secs * 1e9 * threads as f64 / q,
        evals as f64 / q,
        tree as f64 / q,
    );
}

pub fn run(rep: &Path, queries: usize, seed: u64, threads: usize) -> CmdResult {
    let stored = load(&rep.to_path_buf())?;
    println!("{} threads={threads}", stored.kind_name());
    match &stored {
        Stored::Perm(p) => {
            let n = p.len();
            timed("forward", queries, seed, threads, &|r, t| {
                t.sink = t.sink.wrapping_add(p.forward_counted(r.random_range(0..n), &mut t.ops));
            });
            timed("inverse", queries, seed, threads, &|r, t| {
                t.sink = t.sink.wrapping_add(p.inverse_counted(r.random_range(0..n), &mut t.ops));
            });
        }
        Stored::Powers(p) => {
            let n = p.len() as i64;
            timed("power", queries, seed, threads, &|r, t| {
                let x = r.random_range(0..n) as usize;
                t.sink = t.sink.wrapping_add(p.power_counted(x, r.random_range(-n..=n), &mut t.ops));
            });
        }
        Stored::Tree(tr) => {
            let opens: Vec<usize> = (0..tr.bits().len()).filter(|&i| tr.bits().get(i)).collect();
            timed("findclose", queries, seed, threads, &|r, t| {
                t.sink = t.sink.wrapping_add(tr.findclose(opens[r.random_range(0..opens.len())]).unwrap_or(0));
            });
            timed("levelanc", queries, seed, threads, &|r, t| {
                let x = opens[r.random_range(0..opens.len())];
                let d = tr.depth(x).unwrap_or(0);
                let a = tr.levelancestor(x, r.random_range(0..=d)).ok().flatten();
                t.sink = t.sink.wrapping_add(a.unwrap_or(0));
            });
        }
        Stored::Func(f) => {
            let n = f.len();
            timed("fpow", queries, seed, threads, &|r, t| {
                let v = f.power_counted(r.random_range(0..n), r.random_range(0..=2 * n as u64), &mut t.ops);
                t.sink = t.sink.wrapping_add(v.unwrap_or(0));
            });
            timed("finv", queries, seed, threads, &|r, t| {
                let mut out = Vec::new();
                let _ = f.inverse_power_into(r.random_range(0..n), r.random_range(1..=4), &mut out, &mut t.ops);
                t.sink = t.sink.wrapping_add(out.len());
            });
        }
        Stored::RangeLarge(f) => {
            let (n, m) = (f.domain(), f.range());
            timed("fpow", queries, seed, threads, &|r, t| {
                let v = f.power_counted(r.random_range(0..n), r.random_range(0..=2 * m as u64), &mut t.ops);
                t.sink = t.sink.wrapping_add(v.unwrap_or(0));
            });
            timed("finv", queries, seed, threads, &|r, t| {
                let mut out = Vec::new();
                let _ = f.inverse_power_into(r.random_range(0..m), r.random_range(1..=4), &mut out, &mut t.ops);
                t.sink = t.sink.wrapping_add(out.len());
            });
        }
        Stored::RangeSmall(f) => {
            let (n, m) = (f.domain(), f.range());
            timed("fpow", queries, seed, threads, &|r, t| {
                let v = f.power_counted(r.random_range(0..n), r.random_range(0..=2 * n as u64), &mut t.ops);
                t.sink = t.sink.wrapping_add(v.ok().flatten().unwrap_or(0));
            });
            timed("finv", queries, seed, threads, &|r, t| {
                let mut out = Vec::new();
                let _ = f.inverse_power_into(r.random_range(0..m), r.random_range(1..=4), &mut out, &mut t.ops);
                t.sink = t.sink.wrapping_add(out.len());
            });
        }
    }
    Ok(ExitCode::SUCCESS)
}
