use super::{Container, Enc, Sections, Tag};
use crate::bits::{Fid, IndexableDict};
use crate::bp::{BpParams, BpTree};
use crate::error::{Error, Result};
use crate::func::{ChunkedSeq, FuncRep, RangeRepLarge, RangeRepSmall};
use crate::func::core::FuncCore;
use crate::perm::{AnyPerm, ArrayPerm, BenesRep, PermBackend, Permutation, PowerRep, ShortcutIndex, ShortcutPerm};

const PERM: &Tag = b"PERM";
const SHC1: &Tag = b"SHC1";
const BNS1: &Tag = b"BNS1";
const PWR1: &Tag = b"PWR1";
const BPT1: &Tag = b"BPT1";
const FNC1: &Tag = b"FNC1";
const FID1: &Tag = b"FID1";

const FUNC_PLAIN: u8 = 0;
const FUNC_LARGE: u8 = 1;
const FUNC_SMALL: u8 = 2;

/// Types that write themselves as one or more consecutive sections.
pub trait Persist: Sized {
    fn write(&self, c: &mut Container);
    fn read(s: &mut Sections<'_>) -> Result<Self>;

    fn to_container(&self) -> Container {
        let mut c = Container::new();
        self.write(&mut c);
        c
    }

    fn from_container(c: &Container) -> Result<Self> {
        let mut s = c.reader();
        let v = Self::read(&mut s)?;
        if !s.is_done() {
            return Err(Error::Format("trailing sections".into()));
        }
        Ok(v)
    }
}

fn bad(msg: &str) -> Error {
    Error::Format(msg.into())
}

impl Persist for Fid {
    fn write(&self, c: &mut Container) {
        c.push(*FID1, Enc::new().usize(self.universe()).usize(self.len()).bits(&self.to_bits()).finish());
    }

    fn read(s: &mut Sections<'_>) -> Result<Self> {
        let mut d = s.next(FID1)?;
        let universe = d.usize()?;
        let count = d.usize()?;
        let bits = d.bits()?;
        if bits.len() != universe || bits.count_ones() != count {
            return Err(bad("FID1 header disagrees with its bitmap"));
        }
        Fid::from_set(universe, &bits.ones().collect::<Vec<_>>())
    }
}

fn write_image(c: &mut Container, image: &crate::bits::IntVec) {
    c.push(*PERM, Enc::new().ints(image).finish());
}

fn read_image(s: &mut Sections<'_>) -> Result<Permutation> {
    let v = s.next(PERM)?.ints()?;
    Permutation::from_image(v.iter().collect())
}

impl Persist for AnyPerm {
    fn write(&self, c: &mut Container) {
        match self {
            AnyPerm::Naive(p) => write_image(c, p.image()),
            AnyPerm::Shortcut(p) => {
                write_image(c, p.image());
                let ix = p.index();
                let mut e = Enc::new();
                e.usize(ix.t()).usize(ix.holder_count()).bits(&ix.holders().fid().to_bits()).ints(ix.links());
                c.push(*SHC1, e.finish());
            }
            AnyPerm::Benes(b) => {
                let mut e = Enc::new();
                e.usize(b.len()).usize(b.t()).usize(b.q()).usize(b.r()).bits(b.switches()).bits(b.centrals());
                c.push(*BNS1, e.finish());
            }
        }
    }

    fn read(s: &mut Sections<'_>) -> Result<Self> {
        if s.peek().as_ref() == Some(BNS1) {
            let mut d = s.next(BNS1)?;
            let (n, t, q, r) = (d.usize()?, d.usize()?, d.usize()?, d.usize()?);
            if r >= usize::BITS as usize {
                return Err(bad("Benes depth out of range"));
            }
            let (switches, centrals) = (d.bits()?, d.bits()?);
            return Ok(AnyPerm::Benes(BenesRep::from_parts(n, t, q, r, switches, centrals)?));
        }
        let perm = read_image(s)?;
        if s.peek().as_ref() != Some(SHC1) {
            return Ok(AnyPerm::Naive(ArrayPerm::new(&perm)));
        }
        let n = perm.len();
        let mut d = s.next(SHC1)?;
        let t = d.usize()?;
        let count = d.usize()?;
        let holders = d.bits()?;
        let links = d.ints()?;
        if holders.len() != n || holders.count_ones() != count || links.iter().any(|v| v >= n.max(1)) {
            return Err(bad("inconsistent SHC1 section"));
        }
        let holders = IndexableDict::from_set(n, &holders.ones().collect::<Vec<_>>())?;
        let index = ShortcutIndex::from_parts(n, t, holders, links)?;
        let image = crate::bits::IntVec::from_slice(crate::bits::ceil_log2(n.max(1)), perm.image());
        Ok(AnyPerm::Shortcut(ShortcutPerm::from_parts(image, index)?))
    }
}

impl Persist for PowerRep {
    fn write(&self, c: &mut Container) {
        c.push(*PWR1, Enc::new().ints(self.lengths()).finish());
        self.psi().write(c);
        self.starts().write(c);
    }

    fn read(s: &mut Sections<'_>) -> Result<Self> {
        let lengths = s.next(PWR1)?.ints()?;
        let psi = AnyPerm::read(s)?;
        let starts = Fid::read(s)?;
        PowerRep::from_parts(psi, lengths, starts)
    }
}

impl Persist for BpTree {
    fn write(&self, c: &mut Container) {
        let p = self.params();
        let mut e = Enc::new();
        e.usize(self.parens_len()).bits(self.bits());
        for v in [p.superblock, p.block, p.arity, p.delta, p.mark] {
            e.usize(v);
        }
        c.push(*BPT1, e.finish());
    }

    fn read(s: &mut Sections<'_>) -> Result<Self> {
        let mut d = s.next(BPT1)?;
        let len = d.usize()?;
        let bits = d.bits()?;
        if bits.len() != len {
            return Err(bad("BPT1 length disagrees with its bitmap"));
        }
        let params = BpParams {
            superblock: d.usize()?,
            block: d.usize()?,
            arity: d.usize()?,
            delta: d.usize()?,
            mark: d.usize()?,
        };
        BpTree::with_params(bits, params)
    }
}

fn write_core(e: &mut Enc, core: &FuncCore) {
    e.usize(core.nodes).usize(core.cyc_end).usize(core.narrow_end).usize(core.wc);
    e.ints(&core.sizes).ints(&core.wide_sizes).ints(&core.wide_cycles);
}

fn write_core_tail(c: &mut Container, core: &FuncCore) {
    core.tree.write(c);
    core.classes.write(c);
    core.cycles.write(c);
    core.wide_roots.write(c);
}

fn read_core(d: &mut super::Dec<'_>, s: &mut Sections<'_>) -> Result<FuncCore> {
    let (nodes, cyc_end, narrow_end, wc) = (d.usize()?, d.usize()?, d.usize()?, d.usize()?);
    let (sizes, wide_sizes, wide_cycles) = (d.ints()?, d.ints()?, d.ints()?);
    let tree = BpTree::read(s)?;
    let classes = Fid::read(s)?;
    let cycles = Fid::read(s)?;
    let wide_roots = Fid::read(s)?;
    let ok = tree.len() == nodes + 1
        && narrow_end <= cyc_end
        && cyc_end <= nodes
        && classes.universe() == nodes
        && classes.len() == sizes.len()
        && wide_roots.universe() == nodes
        && wide_roots.len() == wide_sizes.len()
        && wide_cycles.len() == wide_sizes.len()
        && cycles.universe() == narrow_end + 1 + sizes.len() * wc;
    if !ok {
        return Err(bad("inconsistent FNC1 section"));
    }
    Ok(FuncCore { tree, nodes, cyc_end, narrow_end, sizes, classes, cycles, wc, wide_sizes, wide_cycles, wide_roots })
}

impl Persist for FuncRep {
    fn write(&self, c: &mut Container) {
        let mut e = Enc::new();
        e.u8(FUNC_PLAIN).usize(self.len()).usize(self.len()).usize(self.width);
        write_core(&mut e, &self.core);
        c.push(*FNC1, e.finish());
        write_core_tail(c, &self.core);
        self.pi.write(c);
    }

    fn read(s: &mut Sections<'_>) -> Result<Self> {
        let mut d = s.next(FNC1)?;
        if d.u8()? != FUNC_PLAIN {
            return Err(bad("not a plain function"));
        }
        let (n, _, width) = (d.usize()?, d.usize()?, d.usize()?);
        let core = read_core(&mut d, s)?;
        let pi = AnyPerm::read(s)?;
        if core.nodes != n || pi.len() != n || core.cyc_end != n {
            return Err(bad("function sections disagree on n"));
        }
        Ok(FuncRep { width, core, pi })
    }
}

impl Persist for RangeRepLarge {
    fn write(&self, c: &mut Container) {
        let mut e = Enc::new();
        e.u8(FUNC_LARGE).usize(self.n).usize(self.m).usize(self.seq.len).usize(self.seq.perms.len());
        c.push(*FNC1, e.finish());
        self.core.write(c);
        self.dummies.write(c);
        self.seq.global.write(c);
        for (p, x) in self.seq.perms.iter().zip(&self.seq.counts) {
            p.write(c);
            x.write(c);
        }
    }

    fn read(s: &mut Sections<'_>) -> Result<Self> {
        let mut d = s.next(FNC1)?;
        if d.u8()? != FUNC_LARGE {
            return Err(bad("not a large-range function"));
        }
        let (n, m, len, chunks) = (d.usize()?, d.usize()?, d.usize()?, d.usize()?);
        let core = FuncRep::read(s)?;
        let dummies = Fid::read(s)?;
        let global = Fid::read(s)?;
        if m == 0 || n <= m || len != n - m || chunks != len.div_ceil(m) || dummies.universe() != m || core.len() != m + dummies.len() {
            return Err(bad("inconsistent large-range header"));
        }
        let mut perms = Vec::with_capacity(chunks);
        let mut counts = Vec::with_capacity(chunks);
        for c in 0..chunks {
            let p = AnyPerm::read(s)?;
            let x = Fid::read(s)?;
            if p.len() != m.min(len - c * m) || x.universe() != p.len() + m {
                return Err(bad("inconsistent sequence chunk"));
            }
            perms.push(p);
            counts.push(x);
        }
        if global.universe() != len + m * chunks {
            return Err(bad("inconsistent sequence counts"));
        }
        Ok(RangeRepLarge { n, m, core, seq: ChunkedSeq { len, sigma: m, perms, counts, global }, dummies })
    }
}

impl Persist for RangeRepSmall {
    fn write(&self, c: &mut Container) {
        let mut e = Enc::new();
        e.u8(FUNC_SMALL).usize(self.n).usize(self.m).usize(0);
        write_core(&mut e, &self.core);
        c.push(*FNC1, e.finish());
        write_core_tail(c, &self.core);
        self.pi.write(c);
        self.roots.write(c);
        self.rdict.fid().write(c);
    }

    fn read(s: &mut Sections<'_>) -> Result<Self> {
        let mut d = s.next(FNC1)?;
        if d.u8()? != FUNC_SMALL {
            return Err(bad("not a small-range function"));
        }
        let (n, m, _) = (d.usize()?, d.usize()?, d.usize()?);
        let core = read_core(&mut d, s)?;
        let pi = AnyPerm::read(s)?;
        let roots = Fid::read(s)?;
        let rdict = IndexableDict::from_fid(Fid::read(s)?);
        let ok = n <= m
            && pi.len() == n
            && rdict.universe() == m
            && roots.universe() == core.nodes
            && roots.len() == rdict.len()
            && core.nodes == n + rdict.len();
        if !ok {
            return Err(bad("inconsistent small-range sections"));
        }
        Ok(RangeRepSmall { n, m, core, pi, roots, rdict })
    }
}

/// Any structure a container can hold, detected from its first section.
#[derive(Clone, Debug)]
pub enum Stored {
    Perm(AnyPerm),
    Powers(PowerRep),
    Tree(BpTree),
    Func(FuncRep),
    RangeLarge(RangeRepLarge),
    RangeSmall(RangeRepSmall),
}

impl Stored {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Stored::Perm(_) => "perm",
            Stored::Powers(_) => "powers",
            Stored::Tree(_) => "tree",
            Stored::Func(_) => "func",
            Stored::RangeLarge(_) => "func-large",
            Stored::RangeSmall(_) => "func-small",
        }
    }
}

impl Persist for Stored {
    fn write(&self, c: &mut Container) {
        match self {
            Stored::Perm(p) => p.write(c),
            Stored::Powers(p) => p.write(c),
            Stored::Tree(t) => t.write(c),
            Stored::Func(f) => f.write(c),
            Stored::RangeLarge(f) => f.write(c),
            Stored::RangeSmall(f) => f.write(c),
        }
    }

    fn read(s: &mut Sections<'_>) -> Result<Self> {
        match s.peek().as_ref() {
            Some(PERM) | Some(BNS1) => Ok(Stored::Perm(AnyPerm::read(s)?)),
            Some(PWR1) => Ok(Stored::Powers(PowerRep::read(s)?)),
            Some(BPT1) => Ok(Stored::Tree(BpTree::read(s)?)),
            Some(FNC1) => {
                let kind = s.clone_peek_kind()?;
                match kind {
                    FUNC_PLAIN => Ok(Stored::Func(FuncRep::read(s)?)),
                    FUNC_LARGE => Ok(Stored::RangeLarge(RangeRepLarge::read(s)?)),
                    FUNC_SMALL => Ok(Stored::RangeSmall(RangeRepSmall::read(s)?)),
                    k => Err(Error::Format(format!("unknown function kind {k}"))),
                }
            }
            Some(t) => Err(Error::Format(format!("unknown leading section {}", String::from_utf8_lossy(t)))),
            None => Err(bad("empty container")),
        }
    }
}

impl Sections<'_> {
    fn clone_peek_kind(&self) -> Result<u8> {
        let body = &self.list.get(self.at).ok_or_else(|| bad("empty container"))?.1;
        body.first().copied().ok_or_else(|| bad("empty FNC1 section"))
    }
}
