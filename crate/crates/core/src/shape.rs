//! Factorizations `n = p·q` and the two index decompositions used on them.
//!
//! All public index maps are 1-based. Two decompositions of a global index
//! `r ∈ [n]` are in use:
//!
//! * block: `r = (u − 1)·q + i` with block `u ∈ [p]` and offset `i ∈ [q]`,
//!   which is what the partial transpose acts on;
//! * stride: `r = a·p + i` with `a ∈ {0, …, q − 1}` and `i ∈ [p]`, which is
//!   what the shuffle bijection acts on.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockShape {
    p: usize,
    q: usize,
}

impl BlockShape {
    /// `p` blocks per side, each `q × q`.
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::EmptyShape { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.p * self.q
    }

    /// The shape with the roles of `p` and `q` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
        }
    }

    fn check(&self, r: usize) -> Result<()> {
        if r == 0 || r > self.n() {
            Err(Error::IndexOutOfRange {
                index: r,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Splits `r` into `(block, offset)`, so that `r = (block − 1)·q + offset`.
    pub fn block_decompose(&self, r: usize) -> Result<(usize, usize)> {
        self.check(r)?;
        Ok(((r - 1) / self.q + 1, (r - 1) % self.q + 1))
    }

    pub fn block_compose(&self, block: usize, offset: usize) -> Result<usize> {
        if block == 0 || block > self.p {
            return Err(Error::IndexOutOfRange {
                index: block,
                n: self.p,
            });
        }
        if offset == 0 || offset > self.q {
            return Err(Error::IndexOutOfRange {
                index: offset,
                n: self.q,
            });
        }
        Ok((block - 1) * self.q + offset)
    }

    /// Splits `r` into `(a, i)` with `a` 0-based and `i` 1-based, so that
    /// `r = a·p + i`.
    pub fn stride_decompose(&self, r: usize) -> Result<(usize, usize)> {
        self.check(r)?;
        Ok(((r - 1) / self.p, (r - 1) % self.p + 1))
    }

    pub fn stride_compose(&self, a: usize, i: usize) -> Result<usize> {
        if a >= self.q {
            return Err(Error::IndexOutOfRange {
                index: a,
                n: self.q - 1,
            });
        }
        if i == 0 || i > self.p {
            return Err(Error::IndexOutOfRange { index: i, n: self.p });
        }
        Ok(a * self.p + i)
    }

    /// 0-based image of the cell `(row, col)` under the partial transpose.
    #[inline]
    pub(crate) fn transpose_cell(&self, row: usize, col: usize) -> (usize, usize) {
        let q = self.q;
        let (rb, ro) = (row / q, row % q);
        let (cb, co) = (col / q, col % q);
        (rb * q + co, cb * q + ro)
    }
}

impl core::fmt::Display for BlockShape {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}
