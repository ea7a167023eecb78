mod bench;
mod build;
mod gen;
mod query;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spfr::io::{Container, Persist, Stored};
use spfr::BackendKind;

#[derive(Parser)]
#[command(name = "spfr", version, about = "Succinct permutations, functions and trees with power queries")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a seeded random instance in text form.
    Gen {
        kind: GenKind,
        #[arg(long)]
        n: usize,
        /// Range size for functions; defaults to n.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Named closed-form function instead of a random one.
        #[arg(long)]
        formula: Option<Formula>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a representation from a text file and save it as a container.
    Build {
        kind: BuildKind,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Shortcut spacing or Benes block size.
        #[arg(long)]
        t: Option<usize>,
        /// Permutation backend for powers and functions: naive, shortcut:T or benes:T.
        #[arg(long, default_value = "shortcut:2")]
        backend: BackendKind,
        /// Narrow/wide cycle-length threshold for functions.
        #[arg(long)]
        width: Option<usize>,
    },
    /// Answer one query against a saved container.
    Query {
        op: QueryOp,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        /// Append operation tallies to the answer.
        #[arg(long)]
        count: bool,
    },
    /// Tree navigation.
    Tree {
        #[command(subcommand)]
        cmd: TreeCmd,
    },
    /// Cross-check a container against the text input it was built from.
    Verify {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        /// Random queries per operation when the instance is too large for an exhaustive check.
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time random queries.
    Bench {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Print the space report of a container.
    Space {
        #[arg(long)]
        rep: PathBuf,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    Query {
        #[arg(long)]
        op: TreeOp,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long)]
        y: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Perm,
    Func,
    Tree,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    /// f(x) = (x² + 2x − 1) mod n
    Quad19,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Naive,
    Shortcut,
    Benes,
    Powers,
    Tree,
    Func,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum QueryOp {
    Forward,
    Inverse,
    Power,
    Fpow,
    Finv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeOp {
    Findclose,
    Findopen,
    Depth,
    Parent,
    Firstchild,
    Nextsibling,
    Levelancestor,
    Levelsuccessor,
    Levelpredecessor,
    Nextexcess,
    Prevexcess,
    Isancestor,
    Subtreesize,
}

/// Errors exit with status 2; verification mismatches return status 1.
pub type CmdResult = anyhow::Result<ExitCode>;

pub fn load(path: &PathBuf) -> anyhow::Result<Stored> {
    let c = Container::load(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    Ok(Stored::from_container(&c)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Gen { kind, n, m, seed, formula, out } => gen::run(kind, n, m, seed, formula, out),
        Cmd::Build { kind, input, out, t, backend, width } => build::run(kind, &input, &out, t, backend, width),
        Cmd::Query { op, rep, x, i, k, count } => query::run(op, &rep, x.or(i), k, count),
        Cmd::Tree { cmd: TreeCmd::Query { op, rep, x, k, y } } => query::tree(op, &rep, x, k, y),
        Cmd::Verify { rep, input, samples, seed } => verify::run(&rep, &input, samples, seed),
        Cmd::Bench { rep, queries, seed, threads } => bench::run(&rep, queries, seed, threads),
        Cmd::Space { rep } => load(&rep).map(|s| {
            report::print(&s);
            ExitCode::SUCCESS
        }),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
