use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use spfr::func::{FuncOptions, FuncRep, RangeRepLarge, RangeRepSmall};
use spfr::io::{text, Persist, Stored};
use spfr::perm::PowerRep;
use spfr::{AnyPerm, BackendKind, BpTree};

use crate::{report, BuildKind, CmdResult};

pub fn run(kind: BuildKind, input: &Path, out: &Path, t: Option<usize>, backend: BackendKind, width: Option<usize>) -> CmdResult {
    let src = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let stored = match kind {
        BuildKind::Naive | BuildKind::Shortcut | BuildKind::Benes => {
            let perm = text::parse_perm(&src)?;
            let kind = match kind {
                BuildKind::Naive => BackendKind::Naive,
                BuildKind::Shortcut => BackendKind::Shortcut { t: t.unwrap_or(2) },
                _ => BackendKind::Benes { t: t.unwrap_or(1) },
            };
            Stored::Perm(AnyPerm::build(&perm, kind)?)
        }
        BuildKind::Powers => Stored::Powers(PowerRep::build(&text::parse_perm(&src)?, backend)?),
        BuildKind::Tree => Stored::Tree(BpTree::from_bits(text::parse_tree(&src)?)?),
        BuildKind::Func => {
            let (m, image) = text::parse_func(&src)?;
            let opts = FuncOptions { backend, width, tree: None };
            let n = image.len();
            if m == n {
                Stored::Func(FuncRep::build(&image, &opts)?)
            } else if n > m {
                Stored::RangeLarge(RangeRepLarge::build(&image, m, &opts)?)
            } else {
                Stored::RangeSmall(RangeRepSmall::build(&image, m, &opts)?)
            }
        }
    };
    let c = stored.to_container();
    c.save(out).with_context(|| format!("writing {}", out.display()))?;
    report::print(&stored);
    println!("sections   {}", c.tags().join(" "));
    Ok(ExitCode::SUCCESS)
}
