//! Succinct permutations, functions and ordinal trees with power queries.

pub mod bits;
pub mod bp;
pub mod error;
pub mod func;
pub mod io;
pub mod ops;
pub mod perm;

pub use error::{Error, Result};
pub use ops::OpCounts;
pub use bp::{BpParams, BpTree};
pub use func::{FuncOptions, FuncRep, RangeRepLarge, RangeRepSmall};
pub use perm::{AnyPerm, BackendKind, PermBackend, Permutation};
