use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use spfr::io::Stored;
use spfr::{OpCounts, PermBackend};

use crate::{load, CmdResult, QueryOp, TreeOp};

fn need<T>(v: Option<T>, name: &str) -> anyhow::Result<T> {
    v.ok_or_else(|| anyhow!("--{name} is required for this query"))
}

fn nonneg(k: i64) -> anyhow::Result<u64> {
    u64::try_from(k).map_err(|_| anyhow!("--k must be non-negative for function queries"))
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run(op: QueryOp, rep: &PathBuf, x: Option<usize>, k: Option<i64>, count: bool) -> CmdResult {
    let stored = load(rep)?;
    let x = need(x, "x")?;
    let mut ops = OpCounts::new();
    let answer = match (&stored, op) {
        (Stored::Perm(p), QueryOp::Forward) => p.try_forward(x).map(|_| p.forward_counted(x, &mut ops))?.to_string(),
        (Stored::Perm(p), QueryOp::Inverse) => p.try_inverse(x).map(|_| p.inverse_counted(x, &mut ops))?.to_string(),
        (Stored::Powers(p), QueryOp::Forward | QueryOp::Inverse | QueryOp::Power) => {
            let k = match op {
                QueryOp::Forward => 1,
                QueryOp::Inverse => -1,
                _ => need(k, "k")?,
            };
            p.try_power(x, k)?;
            p.power_counted(x, k, &mut ops).to_string()
        }
        (Stored::Func(f), QueryOp::Fpow) => f.power_counted(x, nonneg(need(k, "k")?)?, &mut ops)?.to_string(),
        (Stored::RangeLarge(f), QueryOp::Fpow) => f.power_counted(x, nonneg(need(k, "k")?)?, &mut ops)?.to_string(),
        (Stored::RangeSmall(f), QueryOp::Fpow) => match f.power_counted(x, nonneg(need(k, "k")?)?, &mut ops)? {
            Some(v) => v.to_string(),
            None => "-1".to_string(),
        },
        (Stored::Func(_) | Stored::RangeLarge(_) | Stored::RangeSmall(_), QueryOp::Finv) => {
            let k = nonneg(need(k, "k")?)?;
            let mut out = Vec::new();
            match &stored {
                Stored::Func(f) => f.inverse_power_into(x, k, &mut out, &mut ops)?,
                Stored::RangeLarge(f) => f.inverse_power_into(x, k, &mut out, &mut ops)?,
                Stored::RangeSmall(f) => f.inverse_power_into(x, k, &mut out, &mut ops)?,
                _ => unreachable!(),
            }
            out.sort_unstable();
            join(&out)
        }
        (s, op) => bail!("query {:?} does not apply to a {} container", op_name(op), s.kind_name()),
    };
    if count {
        let funcs = matches!(stored, Stored::Func(_) | Stored::RangeLarge(_) | Stored::RangeSmall(_));
        if funcs {
            println!("{answer} evals={} tree={} dict={}", ops.evals, ops.tree, ops.dict);
        } else {
            println!("{answer} evals={}", ops.evals);
        }
    } else {
        println!("{answer}");
    }
    Ok(ExitCode::SUCCESS)
}

fn op_name(op: QueryOp) -> &'static str {
    match op {
        QueryOp::Forward => "forward",
        QueryOp::Inverse => "inverse",
        QueryOp::Power => "power",
        QueryOp::Fpow => "fpow",
        QueryOp::Finv => "finv",
    }
}

fn show(v: Option<usize>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

pub fn tree(op: TreeOp, rep: &PathBuf, x: usize, k: Option<i64>, y: Option<usize>) -> CmdResult {
    let Stored::Tree(t) = load(rep)? else { bail!("tree queries need a tree container") };
    let k_abs = || -> anyhow::Result<usize> { usize::try_from(need(k, "k")?).context("--k must be non-negative") };
    let out = match op {
        TreeOp::Findclose => t.findclose(x)?.to_string(),
        TreeOp::Findopen => t.findopen(x)?.to_string(),
        TreeOp::Depth => t.depth(x)?.to_string(),
        TreeOp::Parent => show(t.parent(x)?),
        TreeOp::Firstchild => show(t.firstchild(x)?),
        TreeOp::Nextsibling => show(t.nextsibling(x)?),
        TreeOp::Levelancestor => show(t.levelancestor(x, k_abs()?)?),
        TreeOp::Levelsuccessor => show(t.levelsuccessor(x)?),
        TreeOp::Levelpredecessor => show(t.levelpredecessor(x)?),
        TreeOp::Nextexcess => show(t.nextexcess(x, need(k, "k")?)?),
        TreeOp::Prevexcess => show(t.prevexcess(x, need(k, "k")?)?),
        TreeOp::Isancestor => t.isancestor(x, need(y, "y")?)?.to_string(),
        TreeOp::Subtreesize => t.subtree_size(x)?.to_string(),
    };
    println!("{out}");
    Ok(ExitCode::SUCCESS)
}
