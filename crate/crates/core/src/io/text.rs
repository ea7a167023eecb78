//! Whitespace-separated text formats.
//!
//! * perm: `n`, then the `n` image values.
//! * func: `n m`, then the `n` image values, each below `m`.
//! * tree: a balanced parenthesis string; whitespace is ignored.

use crate::bits::BitSeq;
use crate::error::{check_range, Error, Result};
use crate::perm::Permutation;

fn numbers(s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::Format(format!("not a non-negative integer: {t:?}"))))
        .collect()
}

fn join(values: &[usize]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn parse_perm(s: &str) -> Result<Permutation> {
    let v = numbers(s)?;
    let (&n, image) = v.split_first().ok_or_else(|| Error::Format("empty permutation file".into()))?;
    if image.len() != n {
        return Err(Error::Format(format!("expected {n} values, found {}", image.len())));
    }
    Permutation::from_image(image.to_vec())
}

pub fn format_perm(p: &Permutation) -> String {
    format!("{}\n{}\n", p.len(), join(p.image()))
}

/// Returns `(m, image)`.
pub fn parse_func(s: &str) -> Result<(usize, Vec<usize>)> {
    let v = numbers(s)?;
    if v.len() < 2 {
        return Err(Error::Format("function file needs a header \"n m\"".into()));
    }
    let (n, m) = (v[0], v[1]);
    let image = v[2..].to_vec();
    if image.len() != n {
        return Err(Error::Format(format!("expected {n} values, found {}", image.len())));
    }
    for &x in &image {
        check_range(x, m)?;
    }
    Ok((m, image))
}

pub fn format_func(image: &[usize], m: usize) -> String {
    format!("{} {}\n{}\n", image.len(), m, join(image))
}

pub fn parse_tree(s: &str) -> Result<BitSeq> {
    let mut bits = BitSeq::default();
    for c in s.chars().filter(|c| !c.is_whitespace()) {
        match c {
            '(' => bits.push(true),
            ')' => bits.push(false),
            _ => return Err(Error::Format(format!("unexpected character {c:?} in a parenthesis string"))),
        }
    }
    Ok(bits)
}

pub fn format_tree(bits: &BitSeq) -> String {
    let mut s: String = bits.iter().map(|b| if b { '(' } else { ')' }).collect();
    s.push('\n');
    s
}
