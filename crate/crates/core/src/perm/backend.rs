use std::fmt;
use std::str::FromStr;

use crate::bits::{ceil_log2, IntVec, Space, SpaceUsage};
use crate::error::{check_range, Error, Result};
use crate::ops::OpCounts;
use crate::perm::{BenesRep, Permutation, ShortcutPerm};

/// Uniform query interface over permutation representations.
pub trait PermBackend: SpaceUsage {
    fn len(&self) -> usize;

    fn forward_counted(&self, i: usize, ops: &mut OpCounts) -> usize;

    fn inverse_counted(&self, x: usize, ops: &mut OpCounts) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn forward(&self, i: usize) -> usize {
        self.forward_counted(i, &mut OpCounts::new())
    }

    fn inverse(&self, x: usize) -> usize {
        self.inverse_counted(x, &mut OpCounts::new())
    }

    fn try_forward(&self, i: usize) -> Result<usize> {
        check_range(i, self.len())?;
        Ok(self.forward(i))
    }

    fn try_inverse(&self, x: usize) -> Result<usize> {
        check_range(x, self.len())?;
        Ok(self.inverse(x))
    }
}

/// Image and inverse arrays, `2n⌈lg n⌉` bits.
#[derive(Clone, Debug)]
pub struct ArrayPerm {
    image: IntVec,
    inverse: IntVec,
}

impl ArrayPerm {
    pub fn new(perm: &Permutation) -> Self {
        let w = ceil_log2(perm.len().max(1));
        ArrayPerm { image: IntVec::from_slice(w, perm.image()), inverse: IntVec::from_slice(w, perm.inverse().image()) }
    }

    pub fn image(&self) -> &IntVec {
        &self.image
    }
}

impl PermBackend for ArrayPerm {
    fn len(&self) -> usize {
        self.image.len()
    }

    fn forward_counted(&self, i: usize, ops: &mut OpCounts) -> usize {
        ops.forward_calls += 1;
        ops.evals += 1;
        self.image.get(i)
    }

    fn inverse_counted(&self, x: usize, ops: &mut OpCounts) -> usize {
        ops.inverse_calls += 1;
        ops.evals += 1;
        self.inverse.get(x)
    }
}

impl SpaceUsage for ArrayPerm {
    fn space(&self) -> Space {
        self.image.space() + self.inverse.space()
    }
}

/// Which representation to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendKind {
    Naive,
    Shortcut { t: usize },
    Benes { t: usize },
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendKind::Naive => write!(f, "naive"),
            BackendKind::Shortcut { t } => write!(f, "shortcut:{t}"),
            BackendKind::Benes { t } => write!(f, "benes:{t}"),
        }
    }
}

impl FromStr for BackendKind {
    type Err = Error;

    /// Accepts `naive`, `shortcut:T` and `benes:T`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let t = || -> Result<usize> {
            arg.ok_or_else(|| Error::Param(format!("backend `{name}` needs a parameter, e.g. `{name}:4`")))?
                .parse()
                .map_err(|_| Error::Param(format!("bad backend parameter in `{s}`")))
        };
        match name {
            "naive" if arg.is_none() => Ok(BackendKind::Naive),
            "shortcut" => Ok(BackendKind::Shortcut { t: t()? }),
            "benes" => Ok(BackendKind::Benes { t: t()? }),
            _ => Err(Error::Param(format!("unknown backend `{s}`"))),
        }
    }
}

/// Any of the built-in backends.
#[derive(Clone, Debug)]
pub enum AnyPerm {
    Naive(ArrayPerm),
    Shortcut(ShortcutPerm),
    Benes(BenesRep),
}

impl AnyPerm {
    /// Builds the requested backend. A Benes size knob larger than `n` is
    /// lowered to `n`.
    pub fn build(perm: &Permutation, kind: BackendKind) -> Result<Self> {
        Ok(match kind {
            BackendKind::Naive => AnyPerm::Naive(ArrayPerm::new(perm)),
            BackendKind::Shortcut { t } => AnyPerm::Shortcut(ShortcutPerm::build(perm, t)?),
            BackendKind::Benes { t } => {
                if perm.is_empty() {
                    return Err(Error::Param("Benes backend needs n >= 1".into()));
                }
                AnyPerm::Benes(BenesRep::build(perm, t.clamp(1, perm.len()))?)
            }
        })
    }

    pub fn kind(&self) -> BackendKind {
        match self {
            AnyPerm::Naive(_) => BackendKind::Naive,
            AnyPerm::Shortcut(s) => BackendKind::Shortcut { t: s.index().t() },
            AnyPerm::Benes(b) => BackendKind::Benes { t: b.t() },
        }
    }
}

impl PermBackend for AnyPerm {
    fn len(&self) -> usize {
        match self {
            AnyPerm::Naive(p) => p.len(),
            AnyPerm::Shortcut(p) => p.len(),
            AnyPerm::Benes(p) => p.len(),
        }
    }

    fn forward_counted(&self, i: usize, ops: &mut OpCounts) -> usize {
        match self {
            AnyPerm::Naive(p) => p.forward_counted(i, ops),
            AnyPerm::Shortcut(p) => p.forward_counted(i, ops),
            AnyPerm::Benes(p) => p.forward_counted(i, ops),
        }
    }

    fn inverse_counted(&self, x: usize, ops: &mut OpCounts) -> usize {
        match self {
            AnyPerm::Naive(p) => p.inverse_counted(x, ops),
            AnyPerm::Shortcut(p) => p.inverse_counted(x, ops),
            AnyPerm::Benes(p) => p.inverse_counted(x, ops),
        }
    }
}

impl SpaceUsage for AnyPerm {
    fn space(&self) -> Space {
        match self {
            AnyPerm::Naive(p) => p.space(),
            AnyPerm::Shortcut(p) => p.space(),
            AnyPerm::Benes(p) => p.space(),
        }
    }
}
