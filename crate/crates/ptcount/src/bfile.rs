//! Sequence files: one `k value` line per term, `k` starting at 1.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use ptcount_core::formulas::{self, BigCount, Ze2Variant};

use crate::AppError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceStat {
    /// `Z_t(k+1, k) / 2`, the octagonal pyramidal numbers.
    ZtDiagHalf,
    /// `Z_t(k, k)`.
    ZtSquare,
    /// `k!·(k+1)!`.
    Z2,
    /// Fixed-point count at `p = 2`, single-binomial form.
    Ze2Corrected,
    /// Involution counts `I(k)`.
    Telephone,
}

impl SequenceStat {
    pub const ALL: [SequenceStat; 5] = [
        Self::ZtDiagHalf,
        Self::ZtSquare,
        Self::Z2,
        Self::Ze2Corrected,
        Self::Telephone,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::ZtDiagHalf => "zt-diag-half",
            Self::ZtSquare => "zt-square",
            Self::Z2 => "z2",
            Self::Ze2Corrected => "ze2-corrected",
            Self::Telephone => "telephone",
        }
    }

    pub fn term(&self, k: usize) -> BigCount {
        match self {
            Self::ZtDiagHalf => formulas::zt_closed(k + 1, k) / 2u32,
            Self::ZtSquare => formulas::zt_closed(k, k),
            Self::Z2 => formulas::z2_closed(k),
            Self::Ze2Corrected => formulas::ze2_closed(k, Ze2Variant::Corrected),
            Self::Telephone => formulas::telephone(k),
        }
    }

    pub fn terms(&self, count: usize) -> Vec<BigCount> {
        (1..=count).map(|k| self.term(k)).collect()
    }
}

impl fmt::Display for SequenceStat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceStat {
    type Err = AppError;

    fn from_str(s: &str) -> Result<Self, AppError> {
        Self::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| AppError::Usage(format!("unknown sequence {s:?}")))
    }
}

pub fn write_bfile<W: Write>(mut out: W, terms: &[BigCount]) -> io::Result<()> {
    for (k, v) in terms.iter().enumerate() {
        writeln!(out, "{} {}", k + 1, v)?;
    }
    out.flush()
}
