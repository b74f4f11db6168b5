//! Driver layer over [`ptcount_core`]: parallel oracle runs with timing,
//! the verification report, table and b-file generation, and the result
//! cache used by the `ptcount` binary.

pub mod bfile;
pub mod cache;
mod error;
pub mod oracle;
pub mod report;
pub mod stat;
pub mod table;

pub use error::{AppError, Result};
pub use oracle::{CountReport, Oracle, OracleConfig};
pub use ptcount_core as core;
pub use stat::{Method, Statistic};
