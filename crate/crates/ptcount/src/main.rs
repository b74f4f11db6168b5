use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use ptcount::bfile::{write_bfile, SequenceStat};
use ptcount::cache::{Cache, CacheRecord};
use ptcount::oracle::stat_key;
use ptcount::report::run_verify;
use ptcount::table::{render_table, run_profile, run_table};
use ptcount::{AppError, CountReport, Method, Oracle, OracleConfig, Statistic};

#[derive(Parser, Debug)]
#[command(name = "ptcount", version, about = "Exact counts for partial transposes of permutation matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Guards {
    /// Largest p·q the exhaustive oracle will scan.
    #[arg(long, default_value_t = 10)]
    max_oracle_n: usize,
    /// Largest p the block-map backtracking counter accepts.
    #[arg(long, default_value_t = 4)]
    max_backtrack_p: usize,
    /// Worker threads for the oracle.
    #[arg(long)]
    jobs: Option<usize>,
}

impl Guards {
    fn oracle(self) -> Result<Oracle, AppError> {
        Oracle::new(OracleConfig {
            max_oracle_n: self.max_oracle_n,
            max_backtrack_p: self.max_backtrack_p,
            jobs: self.jobs,
        })
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count one statistic at one shape.
    Count {
        #[arg(long, value_parser = ["z", "ze", "zt-perm", "zt-fixed"])]
        stat: String,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_parser = ["formula", "oracle", "backtrack"], default_value = "formula")]
        method: String,
        /// Leave the identity out of the involution counts.
        #[arg(long)]
        exclude_identity: bool,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        /// Also list this many lexicographically first witnesses.
        #[arg(long)]
        witnesses: Option<usize>,
        #[arg(long)]
        no_cache: bool,
        #[arg(long, default_value = "ptcount-cache.csv")]
        cache: PathBuf,
        #[command(flatten)]
        guards: Guards,
    },
    /// Compare every evaluator against exhaustive counts for all p·q ≤ max-n.
    Verify {
        #[arg(long)]
        max_n: usize,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        guards: Guards,
    },
    /// Print every permutation of [n] with the profile word of its partial transpose.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// Profile word of the partial transpose of one permutation.
    Profile {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        p: usize,
    },
    /// Write a `k value` sequence file.
    Bfile {
        #[arg(long, value_parser = ["zt-diag-half", "zt-square", "z2", "ze2-corrected", "telephone"])]
        stat: String,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn render_count(report: &CountReport, format: Format) -> String {
    match format {
        Format::Plain => {
            let mut s = format!("{}\n", report.value);
            for w in &report.witnesses {
                s.push_str(&format!("{w}\n"));
            }
            s
        }
        Format::Csv => format!(
            "stat,p,q,method,value,elapsed_ms\n{},{},{},{},{},{:.3}\n",
            report.stat,
            report.p,
            report.q,
            report.method,
            report.value,
            report.elapsed.as_secs_f64() * 1e3
        ),
        Format::Json => format!("{}\n", serde_json::to_string(report).expect("report serializes")),
    }
}

fn run(cli: Cli) -> Result<i32, AppError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Count {
            stat,
            p,
            q,
            method,
            exclude_identity,
            format,
            witnesses,
            no_cache,
            cache,
            guards,
        } => {
            let stat: Statistic = stat.parse()?;
            let method: Method = method.parse()?;
            if p == 0 || q == 0 {
                return Err(AppError::Usage("p and q must be positive".into()));
            }
            let include_identity = !exclude_identity;
            let oracle = guards.oracle()?;
            let cache = (!no_cache).then(|| Cache::new(cache));
            let key = stat_key(stat, include_identity);
            let cached = match &cache {
                Some(c) => c.lookup(&key, p, q, method.name())?,
                None => None,
            };
            let mut report = match cached {
                Some(rec) => CountReport {
                    stat: rec.stat,
                    p,
                    q,
                    method: rec.method,
                    value: rec.value,
                    elapsed: Duration::ZERO,
                    witnesses: Vec::new(),
                },
                None => {
                    let report = oracle.count(stat, p, q, method, include_identity)?;
                    if let Some(c) = &cache {
                        c.append(&CacheRecord::from_report(&report))?;
                    }
                    report
                }
            };
            if let Some(limit) = witnesses {
                report.witnesses = oracle.witnesses(p, q, stat, include_identity, limit)?;
            }
            out.write_all(render_count(&report, format).as_bytes())?;
            Ok(0)
        }
        Command::Verify {
            max_n,
            report,
            guards,
        } => {
            let oracle = guards.oracle()?;
            let result = run_verify(&oracle, max_n)?;
            let text = result.render();
            out.write_all(text.as_bytes())?;
            if let Some(path) = report {
                std::fs::write(path, &text)?;
            }
            Ok(result.exit_code())
        }
        Command::Table { n, p } => {
            let rows = run_table(n, p)?;
            out.write_all(render_table(&rows).as_bytes())?;
            Ok(0)
        }
        Command::Profile { perm, p } => {
            writeln!(out, "{}", run_profile(&perm, p)?)?;
            Ok(0)
        }
        Command::Bfile {
            stat,
            count,
            out: path,
        } => {
            let stat: SequenceStat = stat.parse()?;
            let terms = stat.terms(count);
            match path {
                Some(path) => write_bfile(BufWriter::new(File::create(path)?), &terms)?,
                None => write_bfile(&mut out, &terms)?,
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
