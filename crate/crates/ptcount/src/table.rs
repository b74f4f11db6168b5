//! Profile tables: every `π ∈ S_n` next to the profile word of its partial
//! transpose.

use std::fmt::Write as _;

use ptcount_core::search::enumerate_permutations;
use ptcount_core::{BinaryMatrix, BlockShape, Permutation, ProfileWord};

use crate::{AppError, Result};

pub const MAX_TABLE_N: usize = 8;

/// The published `n = 4`, `p = 2` table, cell by cell in lexicographic
/// order of `S_4`: `(printed permutation, printed profile)`.
pub const PUBLISHED_S4_TABLE: [(&str, &str); 24] = [
    ("1234", "1234"),
    ("1243", "1243"),
    ("1324", "1414"),
    ("1342", "1432"),
    ("1423", "1441"),
    ("1432", "1432"),
    ("2134", "2134"),
    ("2143", "2143"),
    ("2314", "4114"),
    ("2341", "4123"),
    ("2413", "1414"),
    ("2431", "1423"),
    ("3142", "2314"),
    ("3142", "2323"),
    ("3214", "3214"),
    ("3241", "3223"),
    ("3412", "3412"),
    ("3421", "3421"),
    ("4123", "2341"),
    ("4132", "2332"),
    ("4213", "2314"),
    ("4231", "2323"),
    ("4312", "4312"),
    ("4321", "4321"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub perm: Permutation,
    pub profile: ProfileWord,
    /// Set where the published cell differs from the computed one.
    pub annotation: Option<String>,
}

pub fn shape_for(n: usize, p: usize) -> Result<BlockShape> {
    if n == 0 || p == 0 || !n.is_multiple_of(p) {
        return Err(AppError::Usage(format!("p = {p} does not divide n = {n}")));
    }
    if n > MAX_TABLE_N {
        return Err(AppError::Usage(format!(
            "n = {n} exceeds the table limit {MAX_TABLE_N}"
        )));
    }
    Ok(BlockShape::new(p, n / p)?)
}

pub fn profile_of(perm: &Permutation, shape: BlockShape) -> Result<ProfileWord> {
    Ok(BinaryMatrix::from_permutation(perm)
        .partial_transpose(shape)?
        .profile())
}

pub fn run_table(n: usize, p: usize) -> Result<Vec<TableRow>> {
    let shape = shape_for(n, p)?;
    let published = (n == 4 && p == 2).then_some(&PUBLISHED_S4_TABLE);
    enumerate_permutations(n)?
        .enumerate()
        .map(|(k, perm)| {
            let profile = profile_of(&perm, shape)?;
            let annotation = published.and_then(|cells| {
                let (label, word) = cells[k];
                let (perm_s, prof_s) = (perm.to_string(), profile.to_string());
                match (label == perm_s, word == prof_s) {
                    (true, true) => None,
                    (false, _) => Some(format!(
                        "published cell reads {label},{word}; label should be {perm_s}"
                    )),
                    (true, false) => Some(format!(
                        "published profile {word} differs from computed {prof_s}"
                    )),
                }
            });
            Ok(TableRow {
                perm,
                profile,
                annotation,
            })
        })
        .collect()
}

pub fn render_table(rows: &[TableRow]) -> String {
    let mut out = String::new();
    for row in rows {
        match &row.annotation {
            Some(note) => writeln!(out, "{} {}  # {}", row.perm, row.profile, note),
            None => writeln!(out, "{} {}", row.perm, row.profile),
        }
        .unwrap();
    }
    out
}

/// Profile word of the partial transpose of `word` for block grid side `p`.
pub fn run_profile(word: &str, p: usize) -> Result<ProfileWord> {
    let perm: Permutation = word
        .parse()
        .map_err(|e| AppError::Usage(format!("malformed permutation {word:?}: {e}")))?;
    let n = perm.len();
    if p == 0 || !n.is_multiple_of(p) {
        return Err(AppError::Usage(format!("p = {p} does not divide n = {n}")));
    }
    profile_of(&perm, BlockShape::new(p, n / p)?)
}
