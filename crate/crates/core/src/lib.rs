//! Exact counting kernels for the partial transpose of permutation matrices.
//!
//! An `n × n` matrix with `n = p·q` is viewed as a `p × p` grid of `q × q`
//! blocks. The partial transpose transposes every block in place; the block
//! transpose swaps block `(u, v)` with block `(v, u)` without touching block
//! interiors. Their composition is the ordinary transpose.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! * [`perm`], [`matrix`], [`shape`]: permutations, dense 0/1 matrices and
//!   block index maps, plus the two transposes and the shuffle bijection.
//! * [`formulas`]: arbitrary-precision evaluators for the closed forms and
//!   composition sums.
//! * [`search`]: exhaustive and backtracking counters used as ground truth.

#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod formulas;
pub mod matrix;
pub mod perm;
pub mod search;
pub mod shape;

pub use error::Error;
pub use formulas::BigCount;
pub use matrix::{BinaryMatrix, ProfileWord};
pub use perm::Permutation;
pub use shape::BlockShape;

pub type Result<T, E = Error> = core::result::Result<T, E>;
