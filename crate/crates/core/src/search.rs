//! Ground-truth enumeration over `S_n`.
//!
//! Three independent routes live here:
//!
//! * [`count_naive`]: materialise every permutation matrix, apply the dense
//!   partial transpose and test the result. Slow, obviously correct.
//! * [`SearchProblem`]: depth-first search over one-line words with the
//!   image of every placed 1-entry checked as soon as it is placed. Same
//!   answer as the naive scan, but prunes dead prefixes. The search tree can
//!   be cut into independent prefix subtrees for parallel counting.
//! * [`count_by_block_maps`]: no scan of `S_n` at all. Each row offset `x`
//!   of a permutation whose partial transpose is a permutation determines a
//!   block map `σ_x ∈ S_p` (block row `u` holds row offset `x` in block
//!   column `σ_x(u)`), and likewise for column offsets. The count is a sum
//!   over pairs of such labelled assignments with equal per-block sizes,
//!   weighted by the placements inside each block.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::formulas::factorial;
use crate::perm::is_rearrangement;
use crate::{BigCount, BinaryMatrix, BlockShape, Error, Permutation, Result};

/// Hard upper bound on `n` for any scan of `S_n` or its involutions.
pub const MAX_SEARCH_N: usize = 12;

/// Largest `p` accepted by [`count_by_block_maps`].
pub const MAX_BLOCK_MAP_P: usize = 5;

fn guard_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SEARCH_N {
        return Err(Error::GuardExceeded {
            what: "n",
            value: n,
            limit: MAX_SEARCH_N,
        });
    }
    Ok(())
}

/// All permutations of `[n]` in lexicographic order.
#[derive(Debug, Clone)]
pub struct LexPermutations {
    current: Option<Vec<usize>>,
}

impl LexPermutations {
    pub fn new(n: usize) -> Self {
        Self {
            current: Some((0..n).collect()),
        }
    }
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        if let Some(i) = (1..next.len()).rev().find(|&i| next[i - 1] < next[i]) {
            let pivot = i - 1;
            let j = (i..next.len()).rev().find(|&j| next[j] > next[pivot]).unwrap();
            next.swap(pivot, j);
            next[i..].reverse();
            self.current = Some(next);
        }
        Some(Permutation::from_images_unchecked(cur))
    }
}

/// Lexicographic stream of `S_n`.
pub fn enumerate_permutations(n: usize) -> Result<LexPermutations> {
    guard_n(n)?;
    Ok(LexPermutations::new(n))
}

/// Every involution of `[n]`, identity included, in lexicographic order.
pub fn enumerate_symmetric(n: usize) -> Result<Vec<Permutation>> {
    guard_n(n)?;
    fn extend(images: &mut [Option<usize>], out: &mut Vec<Permutation>) {
        let Some(i) = images.iter().position(Option::is_none) else {
            out.push(Permutation::from_images_unchecked(
                images.iter().map(|v| v.unwrap()).collect(),
            ));
            return;
        };
        images[i] = Some(i);
        extend(images, out);
        for j in i + 1..images.len() {
            if images[j].is_none() {
                images[i] = Some(j);
                images[j] = Some(i);
                extend(images, out);
                images[j] = None;
            }
        }
        images[i] = None;
    }
    let mut out = Vec::new();
    extend(&mut alloc::vec![None; n], &mut out);
    out.sort_unstable();
    Ok(out)
}

/// What is asked of the partial transpose of a permutation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    /// The partial transpose is again a permutation matrix.
    IsPermutation,
    /// The partial transpose equals the original matrix.
    IsFixed,
}

impl Criterion {
    pub fn name(&self) -> &'static str {
        match self {
            Self::IsPermutation => "pt-permutation",
            Self::IsFixed => "pt-fixed",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pt-permutation" | "perm" => Ok(Self::IsPermutation),
            "pt-fixed" | "fixed" => Ok(Self::IsFixed),
            _ => Err(Error::Unknown {
                kind: "criterion",
                name: s.into(),
            }),
        }
    }
}

fn check_len(perm: &Permutation, shape: BlockShape) -> Result<()> {
    if perm.len() != shape.n() {
        return Err(Error::ShapeMismatch {
            side: perm.len(),
            p: shape.p(),
            q: shape.q(),
            expected: shape.n(),
        });
    }
    Ok(())
}

/// The partial transpose of a permutation matrix, if it is again one.
pub fn partial_transpose_permutation(
    perm: &Permutation,
    shape: BlockShape,
) -> Result<Option<Permutation>> {
    check_len(perm, shape)?;
    let n = shape.n();
    let mut images = alloc::vec![usize::MAX; n];
    for (r, &c) in perm.images().iter().enumerate() {
        let (r2, c2) = shape.transpose_cell(r, c);
        if images[r2] != usize::MAX {
            return Ok(None);
        }
        images[r2] = c2;
    }
    Ok(is_rearrangement(&images).then(|| Permutation::from_images_unchecked(images)))
}

/// Whether the partial transpose of `perm`'s matrix meets `criterion`,
/// computed on the one-line word.
pub fn satisfies(perm: &Permutation, shape: BlockShape, criterion: Criterion) -> Result<bool> {
    check_len(perm, shape)?;
    Ok(match criterion {
        Criterion::IsPermutation => partial_transpose_permutation(perm, shape)?.is_some(),
        Criterion::IsFixed => perm.images().iter().enumerate().all(|(r, &c)| {
            let (r2, c2) = shape.transpose_cell(r, c);
            perm.images()[r2] == c2
        }),
    })
}

/// Same predicate as [`satisfies`], evaluated on dense matrices.
pub fn satisfies_dense(perm: &Permutation, shape: BlockShape, criterion: Criterion) -> Result<bool> {
    let m = BinaryMatrix::from_permutation(perm);
    let g = m.partial_transpose(shape)?;
    Ok(match criterion {
        Criterion::IsPermutation => g.is_permutation_matrix(),
        Criterion::IsFixed => g == m,
    })
}

/// Counts by a plain scan of `S_n` (or its involutions) with dense matrices.
pub fn count_naive(shape: BlockShape, criterion: Criterion, symmetric_only: bool) -> Result<u64> {
    let n = shape.n();
    guard_n(n)?;
    let mut count = 0;
    for perm in LexPermutations::new(n) {
        if symmetric_only && !BinaryMatrix::from_permutation(&perm).is_symmetric() {
            continue;
        }
        if satisfies_dense(&perm, shape, criterion)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Pruned depth-first search over one-line words.
///
/// Rows are filled in order and columns tried in increasing order, so
/// solutions are produced in lexicographic order.
#[derive(Debug, Clone, Copy)]
pub struct SearchProblem {
    shape: BlockShape,
    criterion: Criterion,
}

#[derive(Debug, Clone)]
struct SearchState {
    word: Vec<usize>,
    used_cols: u64,
    image_rows: u64,
    image_cols: u64,
    // For `IsFixed`: rows whose value is already forced by an earlier entry.
    forced: Vec<Option<usize>>,
}

enum Undo {
    Plain { r2: usize, c2: usize },
    Forced { r2: Option<usize> },
}

impl SearchProblem {
    pub fn new(shape: BlockShape, criterion: Criterion) -> Result<Self> {
        guard_n(shape.n())?;
        Ok(Self { shape, criterion })
    }

    pub fn shape(&self) -> BlockShape {
        self.shape
    }

    pub fn criterion(&self) -> Criterion {
        self.criterion
    }

    fn empty_state(&self) -> SearchState {
        let n = self.shape.n();
        SearchState {
            word: Vec::with_capacity(n),
            used_cols: 0,
            image_rows: 0,
            image_cols: 0,
            forced: alloc::vec![None; n],
        }
    }

    /// Places `c` in the next row if consistent so far.
    fn push(&self, st: &mut SearchState, c: usize) -> Option<Undo> {
        let r = st.word.len();
        if st.used_cols >> c & 1 == 1 {
            return None;
        }
        let (r2, c2) = self.shape.transpose_cell(r, c);
        let undo = match self.criterion {
            Criterion::IsPermutation => {
                if st.image_rows >> r2 & 1 == 1 || st.image_cols >> c2 & 1 == 1 {
                    return None;
                }
                st.image_rows |= 1 << r2;
                st.image_cols |= 1 << c2;
                Undo::Plain { r2, c2 }
            }
            Criterion::IsFixed => {
                if st.forced[r].is_some_and(|f| f != c) {
                    return None;
                }
                if r2 < r {
                    if st.word[r2] != c2 {
                        return None;
                    }
                    Undo::Forced { r2: None }
                } else if r2 > r {
                    if st.used_cols >> c2 & 1 == 1 || c2 == c {
                        return None;
                    }
                    match st.forced[r2] {
                        Some(f) if f != c2 => return None,
                        Some(_) => Undo::Forced { r2: None },
                        None => {
                            st.forced[r2] = Some(c2);
                            Undo::Forced { r2: Some(r2) }
                        }
                    }
                } else {
                    Undo::Forced { r2: None }
                }
            }
        };
        st.used_cols |= 1 << c;
        st.word.push(c);
        Some(undo)
    }

    fn pop(&self, st: &mut SearchState, undo: Undo) {
        let c = st.word.pop().unwrap();
        st.used_cols &= !(1 << c);
        match undo {
            Undo::Plain { r2, c2 } => {
                st.image_rows &= !(1 << r2);
                st.image_cols &= !(1 << c2);
            }
            Undo::Forced { r2 } => {
                if let Some(r2) = r2 {
                    st.forced[r2] = None;
                }
            }
        }
    }

    fn replay(&self, prefix: &[usize]) -> Option<SearchState> {
        let mut st = self.empty_state();
        for &c in prefix {
            if c >= self.shape.n() {
                return None;
            }
            self.push(&mut st, c)?;
        }
        Some(st)
    }

    /// All consistent 0-based prefixes of the given length, in lexicographic
    /// order. Their subtrees partition the search space.
    pub fn prefixes(&self, depth: usize) -> Vec<Vec<usize>> {
        let depth = depth.min(self.shape.n());
        let mut out = Vec::new();
        let mut st = self.empty_state();
        self.collect_prefixes(&mut st, depth, &mut out);
        out
    }

    fn collect_prefixes(&self, st: &mut SearchState, depth: usize, out: &mut Vec<Vec<usize>>) {
        if st.word.len() == depth {
            out.push(st.word.clone());
            return;
        }
        for c in 0..self.shape.n() {
            if let Some(undo) = self.push(st, c) {
                self.collect_prefixes(st, depth, out);
                self.pop(st, undo);
            }
        }
    }

    /// Number of solutions extending `prefix` (0-based values).
    pub fn count_from(&self, prefix: &[usize]) -> u64 {
        match self.replay(prefix) {
            Some(mut st) => self.count_rec(&mut st),
            None => 0,
        }
    }

    pub fn count(&self) -> u64 {
        self.count_from(&[])
    }

    fn count_rec(&self, st: &mut SearchState) -> u64 {
        let n = self.shape.n();
        if st.word.len() == n {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            if let Some(undo) = self.push(st, c) {
                total += self.count_rec(st);
                self.pop(st, undo);
            }
        }
        total
    }

    /// The lexicographically first `limit` solutions extending `prefix`.
    pub fn first_solutions_from(&self, prefix: &[usize], limit: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        if let Some(mut st) = self.replay(prefix) {
            self.solutions_rec(&mut st, limit, &mut out);
        }
        out
    }

    fn solutions_rec(&self, st: &mut SearchState, limit: usize, out: &mut Vec<Permutation>) {
        if out.len() >= limit {
            return;
        }
        let n = self.shape.n();
        if st.word.len() == n {
            out.push(Permutation::from_images_unchecked(st.word.clone()));
            return;
        }
        for c in 0..n {
            if let Some(undo) = self.push(st, c) {
                self.solutions_rec(st, limit, out);
                self.pop(st, undo);
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
}

/// Counts over involutions for both criteria at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricCounts {
    pub pt_permutation: u64,
    pub pt_fixed: u64,
}

pub fn count_symmetric(shape: BlockShape, include_identity: bool) -> Result<SymmetricCounts> {
    let mut counts = SymmetricCounts {
        pt_permutation: 0,
        pt_fixed: 0,
    };
    for perm in enumerate_symmetric(shape.n())? {
        if !include_identity && perm.is_identity() {
            continue;
        }
        if satisfies(&perm, shape, Criterion::IsPermutation)? {
            counts.pt_permutation += 1;
        }
        if satisfies(&perm, shape, Criterion::IsFixed)? {
            counts.pt_fixed += 1;
        }
    }
    Ok(counts)
}

/// Involutions whose partial transpose is a permutation matrix other than
/// the identity and other than the involution itself, in lexicographic order.
pub fn symmetric_counterexamples(shape: BlockShape) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for perm in enumerate_symmetric(shape.n())? {
        if let Some(image) = partial_transpose_permutation(&perm, shape)? {
            if !image.is_identity() && image != perm {
                out.push(perm);
            }
        }
    }
    Ok(out)
}

/// Per-block row and column offset sets of a 0/1 matrix.
///
/// `rows(u, v)` is the set of offsets `i ∈ [q]` such that block `(u, v)` has a
/// 1 in its row `i`; `cols(u, v)` likewise for columns. Stored as bitmasks
/// with bit `i − 1` for offset `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockEntrySets {
    shape: BlockShape,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

impl BlockEntrySets {
    pub fn from_permutation(perm: &Permutation, shape: BlockShape) -> Result<Self> {
        check_len(perm, shape)?;
        if shape.q() > 64 {
            return Err(Error::GuardExceeded {
                what: "q",
                value: shape.q(),
                limit: 64,
            });
        }
        let (p, q) = (shape.p(), shape.q());
        let mut rows = alloc::vec![0u64; p * p];
        let mut cols = alloc::vec![0u64; p * p];
        for (r, &c) in perm.images().iter().enumerate() {
            let block = (r / q) * p + c / q;
            rows[block] |= 1 << (r % q);
            cols[block] |= 1 << (c % q);
        }
        Ok(Self { shape, rows, cols })
    }

    pub fn rows(&self, u: usize, v: usize) -> u64 {
        self.rows[(u - 1) * self.shape.p() + (v - 1)]
    }

    pub fn cols(&self, u: usize, v: usize) -> u64 {
        self.cols[(u - 1) * self.shape.p() + (v - 1)]
    }

    /// `|rows(u, v)|`, which always equals `|cols(u, v)|` for a permutation.
    pub fn size(&self, u: usize, v: usize) -> usize {
        self.rows(u, v).count_ones() as usize
    }

    fn full(&self) -> u64 {
        if self.shape.q() == 64 {
            u64::MAX
        } else {
            (1u64 << self.shape.q()) - 1
        }
    }

    /// Sets along `line` (fixed first index when `along_row`) are pairwise
    /// disjoint and cover `[q]`.
    fn partitions(&self, sets: &[u64], along_row: bool) -> bool {
        let p = self.shape.p();
        (0..p).all(|line| {
            let mut seen = 0u64;
            for k in 0..p {
                let s = if along_row {
                    sets[line * p + k]
                } else {
                    sets[k * p + line]
                };
                if seen & s != 0 {
                    return false;
                }
                seen |= s;
            }
            seen == self.full()
        })
    }

    /// Row sets along each block row and column sets along each block
    /// column partition `[q]`: the matrix is a permutation matrix.
    pub fn satisfies_permutation_constraints(&self) -> bool {
        self.partitions(&self.rows, true) && self.partitions(&self.cols, false)
    }

    /// Row sets along each block column and column sets along each block
    /// row partition `[q]`: the partial transpose is a permutation matrix.
    pub fn satisfies_partial_transpose_constraints(&self) -> bool {
        self.partitions(&self.rows, false) && self.partitions(&self.cols, true)
    }

    /// For each row offset `x`, the map `u ↦ v` with `x ∈ rows(u, v)`, and
    /// for each column offset `y`, the map `u ↦ v` with `y ∈ cols(u, v)`.
    /// `None` unless both constraint systems hold.
    pub fn offset_maps(&self) -> Option<(Vec<Permutation>, Vec<Permutation>)> {
        if !self.satisfies_permutation_constraints()
            || !self.satisfies_partial_transpose_constraints()
        {
            return None;
        }
        let (p, q) = (self.shape.p(), self.shape.q());
        let maps = |sets: &[u64]| -> Vec<Permutation> {
            (0..q)
                .map(|x| {
                    let images = (0..p)
                        .map(|u| (0..p).find(|&v| sets[u * p + v] >> x & 1 == 1).unwrap())
                        .collect();
                    Permutation::from_images_unchecked(images)
                })
                .collect()
        };
        Some((maps(&self.rows), maps(&self.cols)))
    }
}

type Table = Vec<u16>;

/// Counts `P ∈ S_{pq}` with a permutation partial transpose from the block
/// maps of the row and column offsets, without scanning `S_{pq}`.
///
/// Row side: a forward pass over offsets `1..=q` records, for each per-block
/// size table `T`, how many labelled assignments `x ↦ σ_x` produce it.
/// Column side: a memoised backtracking search that peels one block map at a
/// time off `T`, pruning as soon as a block size would go negative. Both
/// sides must agree on `T`; each block with `r` entries then admits `r!`
/// placements.
pub fn count_by_block_maps(p: usize, q: usize) -> Result<BigCount> {
    if p == 0 || p > MAX_BLOCK_MAP_P {
        return Err(Error::GuardExceeded {
            what: "p",
            value: p,
            limit: MAX_BLOCK_MAP_P,
        });
    }
    if q == 0 || q > u16::MAX as usize {
        return Err(Error::EmptyShape { p, q });
    }
    let patterns: Vec<Vec<usize>> = LexPermutations::new(p)
        .map(|pi| {
            pi.images()
                .iter()
                .enumerate()
                .map(|(u, &v)| u * p + v)
                .collect()
        })
        .collect();

    let mut layer: BTreeMap<Table, BigCount> = BTreeMap::new();
    layer.insert(alloc::vec![0; p * p], BigCount::from(1u32));
    for _ in 0..q {
        let mut next: BTreeMap<Table, BigCount> = BTreeMap::new();
        for (table, ways) in &layer {
            for cells in &patterns {
                let mut t = table.clone();
                for &k in cells {
                    t[k] += 1;
                }
                *next.entry(t).or_default() += ways;
            }
        }
        layer = next;
    }

    let mut memo: BTreeMap<Table, BigCount> = BTreeMap::new();
    let facts: Vec<BigCount> = (0..=q).map(factorial).collect();
    let mut total = BigCount::from(0u32);
    for (table, row_ways) in &layer {
        let col_ways = peel(table, &patterns, &mut memo);
        let placements: BigCount = table.iter().map(|&r| &facts[r as usize]).product();
        total += row_ways * col_ways * placements;
    }
    Ok(total)
}

fn peel(remaining: &Table, patterns: &[Vec<usize>], memo: &mut BTreeMap<Table, BigCount>) -> BigCount {
    if remaining.iter().all(|&r| r == 0) {
        return BigCount::from(1u32);
    }
    if let Some(v) = memo.get(remaining) {
        return v.clone();
    }
    let mut ways = BigCount::from(0u32);
    for cells in patterns {
        if cells.iter().all(|&k| remaining[k] > 0) {
            let mut t = remaining.clone();
            for &k in cells {
                t[k] -= 1;
            }
            ways += peel(&t, patterns, memo);
        }
    }
    memo.insert(remaining.clone(), ways.clone());
    ways
}

/// Distinct per-block size tables, row-major, over every permutation whose
/// partial transpose is a permutation. Scans `S_n`.
pub fn block_size_tables(shape: BlockShape) -> Result<BTreeSet<Vec<usize>>> {
    let mut out = BTreeSet::new();
    for perm in enumerate_permutations(shape.n())? {
        let sets = BlockEntrySets::from_permutation(&perm, shape)?;
        if sets.satisfies_partial_transpose_constraints() {
            let p = shape.p();
            out.insert(
                (1..=p)
                    .flat_map(|u| (1..=p).map(move |v| (u, v)))
                    .map(|(u, v)| sets.size(u, v))
                    .collect(),
            );
        }
    }
    Ok(out)
}
