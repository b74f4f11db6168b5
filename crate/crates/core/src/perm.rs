//! Permutations in one-line notation.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{BlockShape, Error, Result};

/// A bijection on `[n]`.
///
/// Stored 0-based; the 1-based one-line word is available through
/// [`Permutation::word`]. Ordering is lexicographic on the word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its 1-based one-line word.
    pub fn from_word(word: &[usize]) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty word"));
        }
        let mut seen = alloc::vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &v in word {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation("value out of range"));
            }
            if core::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation("repeated value"));
            }
            images.push(v - 1);
        }
        Ok(Self { images })
    }

    /// Caller guarantees `images` is a rearrangement of `0..n`.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(is_rearrangement(&images));
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 1-based image of the 1-based position `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// The 1-based one-line word.
    pub fn word(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    /// 0-based images.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Self { images: inv }
    }

    /// True when the permutation matrix is symmetric (identity included).
    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| self.images[v] == i)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Moves the 1-entry at `(a·p + i, b·p + j)` to `((i−1)·q + a + 1, (j−1)·q + b + 1)`.
    ///
    /// This is conjugation by the perfect shuffle that reads a `q × p` index
    /// grid column by column. It carries the partial transpose for shape
    /// `(q, p)` on `self` to the one for shape `(p, q)` on the result (up to a
    /// full transpose), so permutation-ness of the partial transpose is
    /// preserved. The inverse map is `shuffle_conjugate` with `shape.swapped()`.
    pub fn shuffle_conjugate(&self, shape: BlockShape) -> Result<Self> {
        let n = shape.n();
        if self.len() != n {
            return Err(Error::ShapeMismatch {
                side: self.len(),
                p: shape.p(),
                q: shape.q(),
                expected: n,
            });
        }
        let (p, q) = (shape.p(), shape.q());
        let reindex = |r: usize| (r % p) * q + r / p;
        let mut images = alloc::vec![0; n];
        for (r, &c) in self.images.iter().enumerate() {
            images[reindex(r)] = reindex(c);
        }
        Ok(Self { images })
    }
}

pub(crate) fn is_rearrangement(images: &[usize]) -> bool {
    let mut seen = alloc::vec![false; images.len()];
    images
        .iter()
        .all(|&v| v < images.len() && !core::mem::replace(&mut seen[v], true))
}

impl fmt::Display for Permutation {
    /// Concatenated digits for `n ≤ 9`, comma separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.len() <= 9;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 && !compact {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `3142` (single digits) or a comma/space separated list.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let separated = s.contains(|c: char| c == ',' || c.is_whitespace());
        let word: Option<Vec<usize>> = if separated {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().ok())
                .collect()
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect()
        };
        let word = word.ok_or(Error::InvalidPermutation("not a list of integers"))?;
        Self::from_word(&word)
    }
}
