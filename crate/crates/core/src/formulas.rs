//! Exact evaluators for the closed forms and composition sums.
//!
//! Everything here is integer arithmetic on [`BigCount`]; nothing in a
//! counting path touches floating point.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::search::LexPermutations;
use crate::{Error, Permutation, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// Largest `p` accepted by the composition-sum evaluators (`p! = 120` parts).
pub const MAX_FORMULA_P: usize = 5;

pub fn factorial(m: usize) -> BigCount {
    (2..=m).fold(BigCount::one(), |acc, k| acc * k)
}

/// `C(m, k)`, zero when `k > m`.
pub fn binomial(m: usize, k: usize) -> BigCount {
    if k > m {
        return BigCount::zero();
    }
    let k = k.min(m - k);
    // Each prefix product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigCount::one(), |acc, i| acc * (m - i) / (i + 1))
}

fn factorials_upto(m: usize) -> Vec<BigCount> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(BigCount::one());
    for k in 1..=m {
        let next = &out[k - 1] * k;
        out.push(next);
    }
    out
}

/// Number of involutions of `[q]` (identity included), by `I(q+1) = I(q) + q·I(q−1)`.
pub fn telephone(q: usize) -> BigCount {
    let value = telephone_upto(q).pop().unwrap_or_else(BigCount::one);
    debug_assert!(q > 30 || value == telephone_by_sum(q));
    value
}

/// `I(0), …, I(q)`.
pub fn telephone_upto(q: usize) -> Vec<BigCount> {
    let mut out = Vec::with_capacity(q + 1);
    out.push(BigCount::one());
    if q >= 1 {
        out.push(BigCount::one());
    }
    for k in 1..q {
        let next = &out[k] + &out[k - 1] * k;
        out.push(next);
    }
    out
}

/// `I(q)` as `Σ_{j even} C(q, j) · j! / (2^{j/2} (j/2)!)`: choose the `j` points
/// that lie in 2-cycles, then a perfect matching on them.
pub fn telephone_by_sum(q: usize) -> BigCount {
    (0..=q)
        .step_by(2)
        .map(|j| {
            let matchings = factorial(j) / ((BigCount::one() << (j / 2)) * factorial(j / 2));
            binomial(q, j) * matchings
        })
        .sum()
}

/// A nonnegative integer per permutation of `[p]` (in lexicographic order),
/// summing to `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositionVector(pub Vec<usize>);

impl CompositionVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// `p × p` table `r[i][j] = Σ_{π(i)=j} a_π`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarginalTable {
    p: usize,
    cells: Vec<usize>,
}

impl MarginalTable {
    pub fn p(&self) -> usize {
        self.p
    }

    /// 1-based cell lookup.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[(i - 1) * self.p + (j - 1)]
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.cells.chunks(self.p).map(|r| r.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<usize> {
        (0..self.p)
            .map(|j| (0..self.p).map(|i| self.cells[i * self.p + j]).sum())
            .collect()
    }
}

/// Iterator over all nonnegative vectors of a fixed length with a fixed sum
/// (stars and bars), in reverse lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<usize>>,
}

impl Compositions {
    pub fn new(parts: usize, total: usize) -> Self {
        let current = match parts {
            0 if total > 0 => None,
            0 => Some(Vec::new()),
            _ => {
                let mut v = alloc::vec![0; parts];
                v[0] = total;
                Some(v)
            }
        };
        Self { current }
    }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let m = out.len();
        if m >= 2 {
            let mut next = out.clone();
            let tail = core::mem::take(&mut next[m - 1]);
            if let Some(j) = (0..m - 1).rev().find(|&j| next[j] > 0) {
                next[j] -= 1;
                next[j + 1] = tail + 1;
                self.current = Some(next);
            }
        }
        Some(out)
    }
}

/// The permutations of `[p]` that index a [`CompositionVector`].
#[derive(Debug, Clone)]
pub struct CompositionSpace {
    p: usize,
    perms: Vec<Permutation>,
}

impl CompositionSpace {
    pub fn new(p: usize) -> Result<Self> {
        if p == 0 || p > MAX_FORMULA_P {
            return Err(Error::GuardExceeded {
                what: "p",
                value: p,
                limit: MAX_FORMULA_P,
            });
        }
        Ok(Self {
            p,
            perms: LexPermutations::new(p).collect(),
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    /// Every composition vector with sum `q`, once each. There are
    /// `C(q + p! − 1, p! − 1)` of them.
    pub fn compositions(&self, q: usize) -> impl Iterator<Item = CompositionVector> {
        Compositions::new(self.perms.len(), q).map(CompositionVector)
    }

    pub fn marginal_table(&self, a: &CompositionVector) -> MarginalTable {
        let p = self.p;
        let mut cells = alloc::vec![0; p * p];
        for (pi, &weight) in self.perms.iter().zip(&a.0) {
            if weight == 0 {
                continue;
            }
            for (i, &j) in pi.images().iter().enumerate() {
                cells[i * p + j] += weight;
            }
        }
        MarginalTable { p, cells }
    }
}

/// `q! / ∏ a_π!`, the number of ordered set partitions of `[q]` with block sizes `a`.
fn multinomial(facts: &[BigCount], q: usize, a: &CompositionVector) -> BigCount {
    let denom: BigCount = a.0.iter().map(|&k| &facts[k]).product();
    &facts[q] / denom
}

pub fn enumerate_compositions(p: usize, q: usize) -> Result<impl Iterator<Item = CompositionVector>> {
    Ok(CompositionSpace::new(p)?.compositions(q))
}

/// Number of `P ∈ S_{pq}` whose partial transpose is again a permutation
/// matrix, as a sum over pairs of composition vectors with equal marginal
/// tables.
///
/// Vectors are grouped by marginal table `T` first, so the double sum becomes
/// `Σ_T (Σ_{a → T} q!/∏a_π!)² · ∏ T_ij!`.
pub fn z_formula(p: usize, q: usize) -> Result<BigCount> {
    let space = CompositionSpace::new(p)?;
    let facts = factorials_upto(q);
    let mut classes: BTreeMap<MarginalTable, BigCount> = BTreeMap::new();
    for a in space.compositions(q) {
        let weight = multinomial(&facts, q, &a);
        *classes.entry(space.marginal_table(&a)).or_default() += weight;
    }
    Ok(classes
        .into_iter()
        .map(|(table, weight)| {
            let placements: BigCount = table.cells.iter().map(|&r| &facts[r]).product();
            &weight * &weight * placements
        })
        .sum())
}

/// `q!·(q+1)!`.
pub fn z2_closed(q: usize) -> BigCount {
    factorial(q) * factorial(q + 1)
}

/// Number of `P ∈ S_{pq}` fixed by the partial transpose:
/// `Σ_a (q!/∏a_π!) · ∏ I(r_ij)` with `I` the involution count.
pub fn ze_formula(p: usize, q: usize) -> Result<BigCount> {
    let space = CompositionSpace::new(p)?;
    let facts = factorials_upto(q);
    let inv = telephone_upto(q);
    Ok(space
        .compositions(q)
        .map(|a| {
            let table = space.marginal_table(&a);
            let fill: BigCount = table.cells.iter().map(|&r| &inv[r]).product();
            multinomial(&facts, q, &a) * fill
        })
        .sum())
}

/// Which form of the `p = 2` fixed-point closed form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ze2Variant {
    /// `Σ_r C(q,r)² I(r)² I(q−r)²`, as published.
    Printed,
    /// `Σ_r C(q,r) I(r)² I(q−r)²`, which is the general sum at `p = 2`.
    Corrected,
}

impl FromStr for Ze2Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(Self::Printed),
            "corrected" => Ok(Self::Corrected),
            _ => Err(Error::Unknown {
                kind: "variant",
                name: s.into(),
            }),
        }
    }
}

impl fmt::Display for Ze2Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Printed => "printed",
            Self::Corrected => "corrected",
        })
    }
}

pub fn ze2_closed(q: usize, variant: Ze2Variant) -> BigCount {
    let inv = telephone_upto(q);
    (0..=q)
        .map(|r| {
            let c = binomial(q, r);
            let c = match variant {
                Ze2Variant::Printed => &c * &c,
                Ze2Variant::Corrected => c,
            };
            let fill = &inv[r] * &inv[q - r];
            c * &fill * &fill
        })
        .sum()
}

/// `2p·C(q,2) + 2q·C(p,2)`, evaluated as published for every `p, q ≥ 1`.
pub fn zt_closed(p: usize, q: usize) -> BigCount {
    binomial(q, 2) * (2 * p) + binomial(p, 2) * (2 * q)
}

/// The two special cases of [`zt_closed`] in polynomial form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZtCorollaries {
    /// `Z_t(q+1, q) = q(q+1)(2q−1)`; half of it is the octagonal pyramidal number.
    pub superdiagonal: BigCount,
    /// `Z_t(q, q) = 2(q³ − q²)`.
    pub diagonal: BigCount,
}

pub fn zt_corollaries(q: usize) -> ZtCorollaries {
    let qb = BigCount::from(q);
    let superdiagonal = if q == 0 {
        BigCount::zero()
    } else {
        &qb * (q + 1) * (2 * q - 1)
    };
    let diagonal = (&qb * &qb * &qb - &qb * &qb) * 2u32;
    ZtCorollaries {
        superdiagonal,
        diagonal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial(0), big(1));
        assert_eq!(factorial(6), big(720));
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(60, 30), big(118264581564861424));
    }

    #[test]
    fn telephone_values() {
        assert_eq!(telephone(0), big(1));
        assert_eq!(telephone(1), big(1));
        assert_eq!(telephone(2), big(2));
        assert_eq!(telephone(4), big(10));
        assert_eq!(telephone_by_sum(4), big(10));
        assert_eq!(telephone(10), big(9496));
    }

    #[test]
    fn composition_counts() {
        assert_eq!(enumerate_compositions(2, 2).unwrap().count(), 3);
        assert_eq!(enumerate_compositions(2, 3).unwrap().count(), 4);
        let only: Vec<_> = enumerate_compositions(1, 5).unwrap().collect();
        assert_eq!(only, [CompositionVector(alloc::vec![5])]);
        assert_eq!(Compositions::new(0, 0).count(), 1);
        assert_eq!(Compositions::new(0, 3).count(), 0);
        assert!(enumerate_compositions(6, 1).is_err());
    }

    #[test]
    fn marginal_table_examples() {
        let s2 = CompositionSpace::new(2).unwrap();
        let t = s2.marginal_table(&CompositionVector(alloc::vec![2, 0]));
        assert_eq!(t.cells(), [2, 0, 0, 2]);
        let t = s2.marginal_table(&CompositionVector(alloc::vec![1, 1]));
        assert_eq!(t.cells(), [1, 1, 1, 1]);

        let s3 = CompositionSpace::new(3).unwrap();
        let idx = s3
            .permutations()
            .iter()
            .position(|pi| pi.word() == [2, 3, 1])
            .unwrap();
        let mut a = alloc::vec![0; 6];
        a[idx] = 2;
        let t = s3.marginal_table(&CompositionVector(a));
        assert_eq!(t.get(1, 2), 2);
        assert_eq!(t.get(2, 3), 2);
        assert_eq!(t.get(3, 1), 2);
        assert_eq!(t.cells().iter().sum::<usize>(), 6);
        assert_eq!(t.row_sums(), [2, 2, 2]);
        assert_eq!(t.column_sums(), [2, 2, 2]);
    }

    #[test]
    fn z_formula_examples() {
        assert_eq!(z_formula(2, 2).unwrap(), big(12));
        assert_eq!(z_formula(2, 4).unwrap(), big(2880));
        for p in 1..=4 {
            assert_eq!(z_formula(p, 1).unwrap(), factorial(p));
        }
        assert_eq!(z_formula(1, 7).unwrap(), factorial(7));
        assert!(z_formula(6, 1).is_err());
    }

    #[test]
    fn z2_closed_examples() {
        assert_eq!(z2_closed(1), big(2));
        assert_eq!(z2_closed(2), big(12));
        assert_eq!(z2_closed(3), big(144));
    }

    #[test]
    fn ze_formula_examples() {
        assert_eq!(ze_formula(2, 2).unwrap(), big(10));
        for p in 1..=4 {
            assert_eq!(ze_formula(p, 1).unwrap(), factorial(p));
        }
        // Frozen from an independent brute-force scan of S_6.
        assert_eq!(ze_formula(2, 3).unwrap(), big(56));
        assert_eq!(ze_formula(3, 2).unwrap(), big(96));
    }

    #[test]
    fn ze2_variants() {
        assert_eq!(ze2_closed(2, Ze2Variant::Printed), big(12));
        assert_eq!(ze2_closed(2, Ze2Variant::Corrected), big(10));
        assert_eq!(ze2_closed(1, Ze2Variant::Printed), big(2));
        assert_eq!(ze2_closed(1, Ze2Variant::Corrected), big(2));
        for q in 0..=6 {
            assert_eq!(
                ze2_closed(q, Ze2Variant::Corrected),
                ze_formula(2, q).unwrap()
            );
        }
    }

    #[test]
    fn zt_examples() {
        assert_eq!(zt_closed(2, 2), big(8));
        assert_eq!(zt_closed(1, 1), big(0));
        assert_eq!(zt_closed(2, 3), big(18));
        assert_eq!(
            zt_corollaries(2),
            ZtCorollaries {
                superdiagonal: big(18),
                diagonal: big(8)
            }
        );
        assert_eq!(zt_corollaries(1).superdiagonal, big(2));
        assert_eq!(zt_corollaries(1).diagonal, big(0));
        assert_eq!(zt_corollaries(3).superdiagonal, big(60));
        assert_eq!(zt_corollaries(3).diagonal, big(36));
    }
}
