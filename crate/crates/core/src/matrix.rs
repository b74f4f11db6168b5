//! Dense square 0/1 matrices and the two block transposes.

use alloc::vec::Vec;
use core::fmt;

use crate::{BlockShape, Error, Permutation, Result};

/// Dense `n × n` matrix over `{0, 1}`. Not necessarily a permutation matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    n: usize,
    cells: Vec<bool>,
}

impl BinaryMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            cells: alloc::vec![false; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_permutation(&Permutation::identity(n))
    }

    /// The matrix with `P[i][π(i)] = 1`.
    pub fn from_permutation(perm: &Permutation) -> Self {
        let mut m = Self::zeros(perm.len());
        for (r, &c) in perm.images().iter().enumerate() {
            m.cells[r * m.n + c] = true;
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::ShapeMismatch {
                    side: row.len(),
                    p: n,
                    q: 1,
                    expected: n,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.cells[r * n + c] = true,
                    _ => return Err(Error::NonBinaryEntry),
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix with 1s exactly at the given 1-based cells.
    pub fn from_ones<I: IntoIterator<Item = (usize, usize)>>(n: usize, ones: I) -> Result<Self> {
        let mut m = Self::zeros(n);
        for (r, c) in ones {
            m.set(r, c, true)?;
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, r: usize, c: usize) -> Result<()> {
        for i in [r, c] {
            if i == 0 || i > self.n {
                return Err(Error::IndexOutOfRange { index: i, n: self.n });
            }
        }
        Ok(())
    }

    /// 1-based entry lookup.
    pub fn get(&self, r: usize, c: usize) -> Result<bool> {
        self.check(r, c)?;
        Ok(self.cells[(r - 1) * self.n + (c - 1)])
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) -> Result<()> {
        self.check(r, c)?;
        self.cells[(r - 1) * self.n + (c - 1)] = value;
        Ok(())
    }

    /// 1-based coordinates of the 1-entries in row-major order.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(move |(k, _)| (k / n + 1, k % n + 1))
    }

    pub fn count_ones(&self) -> usize {
        self.cells.iter().filter(|&&v| v).count()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.cells[c * n + r] = self.cells[r * n + c];
            }
        }
        out
    }

    fn check_shape(&self, shape: BlockShape) -> Result<()> {
        if shape.n() != self.n {
            return Err(Error::ShapeMismatch {
                side: self.n,
                p: shape.p(),
                q: shape.q(),
                expected: shape.n(),
            });
        }
        Ok(())
    }

    /// Transposes each of the `p²` blocks in place: the entry at
    /// `((u−1)q+i, (v−1)q+j)` moves to `((u−1)q+j, (v−1)q+i)`.
    pub fn partial_transpose(&self, shape: BlockShape) -> Result<Self> {
        self.check_shape(shape)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let (r2, c2) = shape.transpose_cell(r, c);
                out.cells[r2 * n + c2] = self.cells[r * n + c];
            }
        }
        Ok(out)
    }

    /// Moves block `(u, v)` to position `(v, u)` without transposing it.
    pub fn block_transpose(&self, shape: BlockShape) -> Result<Self> {
        self.check_shape(shape)?;
        let (n, q) = (self.n, shape.q());
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let (u, i) = (r / q, r % q);
                let (v, j) = (c / q, c % q);
                out.cells[(v * q + i) * n + (u * q + j)] = self.cells[r * n + c];
            }
        }
        Ok(out)
    }

    /// Number of 1-entries in each block, row-major over the `p × p` grid.
    pub fn block_counts(&self, shape: BlockShape) -> Result<Vec<usize>> {
        self.check_shape(shape)?;
        let (p, q) = (shape.p(), shape.q());
        let mut counts = alloc::vec![0; p * p];
        for (r, c) in self.ones() {
            counts[((r - 1) / q) * p + (c - 1) / q] += 1;
        }
        Ok(counts)
    }

    pub fn is_permutation_matrix(&self) -> bool {
        let n = self.n;
        let mut col_hits = alloc::vec![0usize; n];
        for r in 0..n {
            let row = &self.cells[r * n..(r + 1) * n];
            let mut hits = 0;
            for (c, &v) in row.iter().enumerate() {
                if v {
                    hits += 1;
                    col_hits[c] += 1;
                }
            }
            if hits != 1 {
                return false;
            }
        }
        col_hits.iter().all(|&h| h == 1)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|r| (0..r).all(|c| self.cells[r * n + c] == self.cells[c * n + r]))
    }

    pub fn to_permutation(&self) -> Option<Permutation> {
        if !self.is_permutation_matrix() {
            return None;
        }
        let images = self.ones().map(|(_, c)| c - 1).collect();
        Some(Permutation::from_images_unchecked(images))
    }

    /// Column indices of the 1-entries, scanned in row-major order.
    pub fn profile(&self) -> ProfileWord {
        ProfileWord(self.ones().map(|(_, c)| c).collect())
    }

    /// Sum of the row indices of all 1-entries.
    pub fn row_index_sum(&self) -> usize {
        self.ones().map(|(r, _)| r).sum()
    }

    /// Sum of the column indices of all 1-entries, i.e. the profile sum.
    pub fn column_index_sum(&self) -> usize {
        self.ones().map(|(_, c)| c).sum()
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            for c in 0..self.n {
                if c > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(if self.cells[r * self.n + c] { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Column indices of a matrix's 1-entries in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProfileWord(pub Vec<usize>);

impl ProfileWord {
    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ProfileWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.0.iter().all(|&v| v <= 9);
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 && !compact {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
