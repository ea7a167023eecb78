use std::path::PathBuf;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spfr::bp::random_tree_parens;
use spfr::io::text;
use spfr::Permutation;

use crate::{CmdResult, Formula, GenKind};

pub fn run(kind: GenKind, n: usize, m: Option<usize>, seed: u64, formula: Option<Formula>, out: Option<PathBuf>) -> CmdResult {
    let body = match kind {
        GenKind::Perm => text::format_perm(&Permutation::random(n, seed)),
        GenKind::Tree => text::format_tree(&random_tree_parens(n, seed)),
        GenKind::Func => {
            let m = m.unwrap_or(n);
            let image: Vec<usize> = match formula {
                Some(Formula::Quad19) => {
                    anyhow::ensure!(m == n && n > 0, "quad19 maps [n] to itself");
                    (0..n).map(|x| ((x * x + 2 * x) % n + n - 1) % n).collect()
                }
                None => {
                    anyhow::ensure!(m > 0 || n == 0, "range must be nonempty");
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..n).map(|_| rng.random_range(0..m)).collect()
                }
            };
            text::format_func(&image, m)
        }
    };
    match out {
        Some(p) => std::fs::write(p, body)?,
        None => print!("{body}"),
    }
    Ok(ExitCode::SUCCESS)
}
