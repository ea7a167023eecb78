//! The `SPFR` binary container and the plain-text input formats.
//!
//! A container is the magic `SPFR`, a version byte, a little-endian `u32`
//! section count, then one `(tag, offset, length)` entry per section
//! (4 bytes, `u64`, `u64`) followed by the section bodies. Composite
//! structures occupy several consecutive sections.

mod codec;
pub mod text;

pub use codec::{Persist, Stored};

use std::path::Path;

use crate::bits::{BitSeq, IntVec};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"SPFR";
pub const VERSION: u8 = 1;

pub type Tag = [u8; 4];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Container {
    sections: Vec<(Tag, Vec<u8>)>,
}

impl Container {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, tag: Tag, body: Vec<u8>) {
        self.sections.push((tag, body));
    }

    pub fn tags(&self) -> Vec<String> {
        self.sections.iter().map(|(t, _)| String::from_utf8_lossy(t).into_owned()).collect()
    }

    pub fn sections(&self) -> &[(Tag, Vec<u8>)] {
        &self.sections
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let header = 4 + 1 + 4 + 20 * self.sections.len();
        let mut out = Vec::with_capacity(header + self.sections.iter().map(|s| s.1.len()).sum::<usize>());
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(self.sections.len() as u32).to_le_bytes());
        let mut offset = header as u64;
        for (tag, body) in &self.sections {
            out.extend_from_slice(tag);
            out.extend_from_slice(&offset.to_le_bytes());
            out.extend_from_slice(&(body.len() as u64).to_le_bytes());
            offset += body.len() as u64;
        }
        for (_, body) in &self.sections {
            out.extend_from_slice(body);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut d = Dec::new(bytes);
        if d.take(4)? != MAGIC {
            return Err(Error::Format("missing SPFR magic".into()));
        }
        let version = d.u8()?;
        if version != VERSION {
            return Err(Error::Format(format!("unsupported container version {version}")));
        }
        let count = u32::from_le_bytes(d.take(4)?.try_into().unwrap()) as usize;
        let mut sections = Vec::with_capacity(count.min(1 << 16));
        for _ in 0..count {
            let tag: Tag = d.take(4)?.try_into().unwrap();
            let offset = d.usize()?;
            let len = d.usize()?;
            let body = offset
                .checked_add(len)
                .and_then(|end| bytes.get(offset..end))
                .ok_or_else(|| Error::Format("section extends past the end".into()))?;
            sections.push((tag, body.to_vec()));
        }
        Ok(Container { sections })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }

    pub fn reader(&self) -> Sections<'_> {
        Sections { list: &self.sections, at: 0 }
    }
}

/// Sequential access to the sections of a container.
pub struct Sections<'a> {
    list: &'a [(Tag, Vec<u8>)],
    at: usize,
}

impl<'a> Sections<'a> {
    pub fn peek(&self) -> Option<Tag> {
        self.list.get(self.at).map(|s| s.0)
    }

    pub fn next(&mut self, tag: &Tag) -> Result<Dec<'a>> {
        match self.list.get(self.at) {
            Some((t, body)) if t == tag => {
                self.at += 1;
                Ok(Dec::new(body))
            }
            Some((t, _)) => Err(Error::Format(format!(
                "expected section {}, found {}",
                String::from_utf8_lossy(tag),
                String::from_utf8_lossy(t)
            ))),
            None => Err(Error::Format(format!("missing section {}", String::from_utf8_lossy(tag)))),
        }
    }

    pub fn is_done(&self) -> bool {
        self.at == self.list.len()
    }
}

/// Little-endian section body writer.
#[derive(Default)]
pub struct Enc {
    buf: Vec<u8>,
}

impl Enc {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn u8(&mut self, v: u8) -> &mut Self {
        self.buf.push(v);
        self
    }

    pub fn u64(&mut self, v: u64) -> &mut Self {
        self.buf.extend_from_slice(&v.to_le_bytes());
        self
    }

    pub fn usize(&mut self, v: usize) -> &mut Self {
        self.u64(v as u64)
    }

    /// Length in bits, then the words.
    pub fn bits(&mut self, b: &BitSeq) -> &mut Self {
        self.usize(b.len());
        for &w in b.words() {
            self.u64(w);
        }
        self
    }

    pub fn ints(&mut self, v: &IntVec) -> &mut Self {
        self.usize(v.width()).usize(v.len()).bits(v.raw())
    }

    pub fn finish(&mut self) -> Vec<u8> {
        std::mem::take(&mut self.buf)
    }
}

/// Little-endian section body reader.
pub struct Dec<'a> {
    buf: &'a [u8],
    at: usize,
}

impl<'a> Dec<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Dec { buf, at: 0 }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let s = self.buf.get(self.at..self.at + n).ok_or_else(|| Error::Format("truncated section".into()))?;
        self.at += n;
        Ok(s)
    }

    pub fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn usize(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?).map_err(|_| Error::Format("value exceeds the address space".into()))
    }

    pub fn bits(&mut self) -> Result<BitSeq> {
        let len = self.usize()?;
        let words = len.div_ceil(64);
        if words > (self.buf.len() - self.at) / 8 {
            return Err(Error::Format("truncated bitmap".into()));
        }
        let mut w = Vec::with_capacity(words);
        for _ in 0..words {
            w.push(self.u64()?);
        }
        Ok(BitSeq::from_words(w, len))
    }

    pub fn ints(&mut self) -> Result<IntVec> {
        let width = self.usize()?;
        let len = self.usize()?;
        let bits = self.bits()?;
        if width > 64 || len.checked_mul(width) != Some(bits.len()) {
            return Err(Error::Format("packed array size mismatch".into()));
        }
        Ok(IntVec::from_raw(bits, width, len))
    }
}
