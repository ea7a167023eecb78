use thiserror::Error;

/// Errors produced while building, querying or decoding structures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument {value} out of range (limit {limit})")]
    OutOfRange { value: u64, limit: u64 },

    #[error("input not strictly increasing at index {index}")]
    NotSorted { index: usize },

    #[error("not a bijection: value {value} at index {index} is out of range or repeated")]
    NotBijection { index: usize, value: u64 },

    #[error("mixed-radix value is not below {q}!")]
    CodeRange { q: usize },

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("malformed tree: {0}")]
    Structure(String),

    #[error("position {pos} does not hold an {expected} parenthesis")]
    ParenKind { pos: usize, expected: &'static str },

    #[error("excess offset {offset} exceeds the supported bound {bound}")]
    ExcessBound { offset: i64, bound: usize },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(value: usize, limit: usize) -> Result<()> {
    if value < limit {
        Ok(())
    } else {
        Err(Error::OutOfRange { value: value as u64, limit: limit as u64 })
    }
}
