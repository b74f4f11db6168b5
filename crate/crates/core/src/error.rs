use alloc::string::String;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("shape mismatch: matrix side {side} but shape {p}x{q} needs {expected}")]
    ShapeMismatch {
        side: usize,
        p: usize,
        q: usize,
        expected: usize,
    },
    #[error("block dimensions must be positive (got p={p}, q={q})")]
    EmptyShape { p: usize, q: usize },
    #[error("not a permutation word: {0}")]
    InvalidPermutation(&'static str),
    #[error("{what} = {value} exceeds the guard {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },
    #[error("matrix entries must be 0 or 1")]
    NonBinaryEntry,
}
