use std::fmt;
use std::str::FromStr;

use ptcount_core::search::Criterion;

use crate::AppError;

/// The four counted statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// Partial transpose is a permutation matrix.
    Z,
    /// Partial transpose equals the matrix.
    Ze,
    /// Involutions whose partial transpose is a permutation matrix.
    ZtPerm,
    /// Involutions fixed by the partial transpose.
    ZtFixed,
}

impl Statistic {
    pub const ALL: [Statistic; 4] = [Self::Z, Self::Ze, Self::ZtPerm, Self::ZtFixed];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Z => "z",
            Self::Ze => "ze",
            Self::ZtPerm => "zt-perm",
            Self::ZtFixed => "zt-fixed",
        }
    }

    pub fn criterion(&self) -> Criterion {
        match self {
            Self::Z | Self::ZtPerm => Criterion::IsPermutation,
            Self::Ze | Self::ZtFixed => Criterion::IsFixed,
        }
    }

    pub fn symmetric_only(&self) -> bool {
        matches!(self, Self::ZtPerm | Self::ZtFixed)
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = AppError;

    fn from_str(s: &str) -> Result<Self, AppError> {
        Self::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| AppError::Usage(format!("unknown statistic {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Formula,
    Oracle,
    Backtrack,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Formula => "formula",
            Self::Oracle => "oracle",
            Self::Backtrack => "backtrack",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = AppError;

    fn from_str(s: &str) -> Result<Self, AppError> {
        match s {
            "formula" => Ok(Self::Formula),
            "oracle" => Ok(Self::Oracle),
            "backtrack" => Ok(Self::Backtrack),
            _ => Err(AppError::Usage(format!("unknown method {s:?}"))),
        }
    }
}
