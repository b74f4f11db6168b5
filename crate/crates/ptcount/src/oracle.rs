//! Ground-truth counts with guards, timing and parallel partitioning.
//!
//! The scan of `S_n` is split into independent subtrees by fixing the first
//! two positions of the one-line word. Each subtree is counted on its own and
//! the partial counts are added, so the result does not depend on how many
//! workers run or in which order they finish.

use std::time::{Duration, Instant};

use ptcount_core::formulas::{self, BigCount};
use ptcount_core::search::{self, Criterion, SearchProblem};
use ptcount_core::{BlockShape, Permutation};
use rayon::prelude::*;
use serde::Serialize;

use crate::{AppError, Method, Result, Statistic};

const PARTITION_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `n = p·q` the `S_n` scan accepts.
    pub max_oracle_n: usize,
    /// Largest `p` the block-map backtracking counter accepts.
    pub max_backtrack_p: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_oracle_n: 10,
            max_backtrack_p: 4,
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub stat: String,
    pub p: usize,
    pub q: usize,
    pub method: String,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigCount,
    #[serde(rename = "elapsed_ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
    #[serde(skip_serializing_if = "Vec::is_empty", serialize_with = "as_words")]
    pub witnesses: Vec<Permutation>,
}

fn as_decimal<S: serde::Serializer>(v: &BigCount, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

fn as_words<S: serde::Serializer>(v: &[Permutation], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Cache/report name of a statistic, with the identity flag folded in.
pub fn stat_key(stat: Statistic, include_identity: bool) -> String {
    if stat.symmetric_only() && !include_identity {
        format!("{}-noid", stat.name())
    } else {
        stat.name().to_string()
    }
}

#[derive(Debug)]
pub struct Oracle {
    config: OracleConfig,
    pool: Option<rayon::ThreadPool>,
}

impl Oracle {
    pub fn new(config: OracleConfig) -> Result<Self> {
        let pool = match config.jobs {
            Some(jobs) => Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs.max(1))
                    .build()
                    .map_err(|e| AppError::Usage(format!("cannot start {jobs} workers: {e}")))?,
            ),
            None => None,
        };
        Ok(Self { config, pool })
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    fn shape(&self, p: usize, q: usize) -> Result<BlockShape> {
        let shape = BlockShape::new(p, q)?;
        if shape.n() > self.config.max_oracle_n {
            return Err(AppError::OracleGuard {
                n: shape.n(),
                limit: self.config.max_oracle_n,
            });
        }
        Ok(shape)
    }

    fn count_scan(&self, shape: BlockShape, criterion: Criterion) -> Result<BigCount> {
        let problem = SearchProblem::new(shape, criterion)?;
        let prefixes = problem.prefixes(PARTITION_DEPTH);
        let total: u64 = self.install(|| {
            prefixes
                .par_iter()
                .map(|prefix| problem.count_from(prefix))
                .sum()
        });
        Ok(BigCount::from(total))
    }

    /// `#{π ∈ S_pq : partial transpose of π is a permutation matrix}` by scanning `S_pq`.
    pub fn count_z(&self, p: usize, q: usize) -> Result<BigCount> {
        self.count_scan(self.shape(p, q)?, Criterion::IsPermutation)
    }

    /// `#{π ∈ S_pq : partial transpose of π equals π}` by scanning `S_pq`.
    pub fn count_ze(&self, p: usize, q: usize) -> Result<BigCount> {
        self.count_scan(self.shape(p, q)?, Criterion::IsFixed)
    }

    /// Counts involutions of `S_pq` meeting `variant`. The two variants are
    /// counted separately since they differ in general.
    pub fn count_zt(
        &self,
        p: usize,
        q: usize,
        variant: Criterion,
        include_identity: bool,
    ) -> Result<BigCount> {
        let counts = search::count_symmetric(self.shape(p, q)?, include_identity)?;
        Ok(BigCount::from(match variant {
            Criterion::IsPermutation => counts.pt_permutation,
            Criterion::IsFixed => counts.pt_fixed,
        }))
    }

    /// Involutions whose partial transpose is a permutation matrix other than
    /// the identity and other than itself. Empty means none exist at `(p, q)`.
    pub fn check_symmetric_claim(&self, p: usize, q: usize) -> Result<Vec<Permutation>> {
        Ok(search::symmetric_counterexamples(self.shape(p, q)?)?)
    }

    /// Same count as [`Oracle::count_z`] from block maps, with no `S_n` scan.
    pub fn count_z_backtrack(&self, p: usize, q: usize) -> Result<BigCount> {
        BlockShape::new(p, q)?;
        if p > self.config.max_backtrack_p {
            return Err(AppError::BacktrackGuard {
                p,
                limit: self.config.max_backtrack_p,
            });
        }
        Ok(search::count_by_block_maps(p, q)?)
    }

    /// The lexicographically first `limit` permutations counted by `stat`.
    pub fn witnesses(
        &self,
        p: usize,
        q: usize,
        stat: Statistic,
        include_identity: bool,
        limit: usize,
    ) -> Result<Vec<Permutation>> {
        let shape = self.shape(p, q)?;
        if !stat.symmetric_only() {
            let problem = SearchProblem::new(shape, stat.criterion())?;
            return Ok(problem.first_solutions_from(&[], limit));
        }
        let mut out = Vec::new();
        for perm in search::enumerate_symmetric(shape.n())? {
            if out.len() >= limit {
                break;
            }
            if !include_identity && perm.is_identity() {
                continue;
            }
            if search::satisfies(&perm, shape, stat.criterion())? {
                out.push(perm);
            }
        }
        Ok(out)
    }

    /// Witnesses by statistic name (`z`, `ze`, `zt-perm`, `zt-fixed`).
    pub fn witnesses_named(
        &self,
        p: usize,
        q: usize,
        predicate: &str,
        include_identity: bool,
        limit: usize,
    ) -> Result<Vec<Permutation>> {
        self.witnesses(p, q, predicate.parse()?, include_identity, limit)
    }

    /// Any statistic by any method, timed.
    pub fn count(
        &self,
        stat: Statistic,
        p: usize,
        q: usize,
        method: Method,
        include_identity: bool,
    ) -> Result<CountReport> {
        let start = Instant::now();
        let value = match (method, stat) {
            (Method::Formula, Statistic::Z) => formulas::z_formula(p, q)?,
            (Method::Formula, Statistic::Ze) => formulas::ze_formula(p, q)?,
            (Method::Formula, Statistic::ZtPerm | Statistic::ZtFixed) => {
                BlockShape::new(p, q)?;
                formulas::zt_closed(p, q)
            }
            (Method::Oracle, Statistic::Z) => self.count_z(p, q)?,
            (Method::Oracle, Statistic::Ze) => self.count_ze(p, q)?,
            (Method::Oracle, st) => self.count_zt(p, q, st.criterion(), include_identity)?,
            (Method::Backtrack, Statistic::Z) => self.count_z_backtrack(p, q)?,
            (Method::Backtrack, st) => {
                return Err(AppError::Usage(format!(
                    "method backtrack only counts z, not {st}"
                )))
            }
        };
        Ok(CountReport {
            stat: stat_key(stat, include_identity),
            p,
            q,
            method: method.name().to_string(),
            value,
            elapsed: start.elapsed(),
            witnesses: Vec::new(),
        })
    }
}
