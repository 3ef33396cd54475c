use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use tamechi::arith::prime_factors;
use tamechi::galois::FieldDatum;
use tamechi::verify::tables::{classify, gauss_table, orbit_detail};
use tamechi::verify::{run_verify, GridConfig, ReportFormat};
use tamechi::Error;

#[derive(Parser)]
#[command(name = "tamechi", version, about = "Exact checks of the Kaletha/Tam chi-data comparison for tame tori of GL_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check over a parameter grid and write a report.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        max_n: Option<u64>,
    },
    /// Print the root-orbit table of one datum.
    Classify {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Show the orbit of the root [1, σ^k φ^i].
    Orbit {
        #[command(flatten)]
        datum: DatumArgs,
        /// `k,i`
        #[arg(long)]
        root: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate normalized Gauss sums of 𝔽_{p^j}, j = 1..=m.
    Gauss {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<String>,
    },
}

#[derive(clap::Args)]
struct DatumArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    e: u64,
    #[arg(long)]
    f: u64,
    #[arg(long, default_value_t = 0)]
    t: i64,
}

impl DatumArgs {
    fn datum(&self) -> Result<FieldDatum, Error> {
        let factors = prime_factors(self.q);
        let [p] = factors.as_slice() else {
            return Err(Error::Config(format!("q = {} is not a prime power", self.q)));
        };
        let mut a = 0;
        let mut r = self.q;
        while r > 1 {
            r /= p;
            a += 1;
        }
        FieldDatum::new(*p, a, self.e, self.f, self.t)
    }
}

fn emit(bytes: &[u8], out: Option<&PathBuf>) -> Result<(), Error> {
    let res = match out {
        Some(path) => std::fs::write(path, bytes),
        None => std::io::stdout().write_all(bytes),
    };
    res.map_err(|e| Error::Config(format!("writing output: {e}")))
}

fn json<T: Serialize>(value: &T) -> Result<Vec<u8>, Error> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| Error::Config(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Verify { config, out, format, jobs, max_n } => {
            let mut cfg = match &config {
                Some(path) => GridConfig::from_file(path)?,
                None => GridConfig::default(),
            };
            if let Some(n) = max_n {
                cfg.max_n = n;
            }
            if let Some(fmt) = format {
                cfg.format = fmt.parse()?;
            }
            if out.is_some() {
                cfg.output = out;
            }
            cfg.validate()?;
            let report = run_verify(&cfg, jobs)?;
            emit(&report.to_bytes(cfg.format)?, cfg.output.as_ref())?;
            let s = &report.summary;
            eprintln!(
                "{} scenarios, {} records: identity {}/{} pass, oracles {} fail, aggregate {} fail; skipped {} (membership) + {} (parity)",
                s.scenarios,
                s.records,
                s.identity_pass,
                s.identity_pass + s.identity_fail,
                s.oracle_fail,
                s.aggregate_fail,
                s.skipped_membership_count,
                s.skipped_ramified_parity
            );
            Ok(s.all_pass)
        }
        Command::Classify { datum, out } => {
            emit(&json(&classify(&datum.datum()?)?)?, out.as_ref())?;
            Ok(true)
        }
        Command::Orbit { datum, root, out } => {
            let (k, i) = root
                .split_once(',')
                .and_then(|(k, i)| Some((k.trim().parse().ok()?, i.trim().parse().ok()?)))
                .ok_or_else(|| Error::Config(format!("--root expects k,i, got {root:?}")))?;
            emit(&json(&orbit_detail(&datum.datum()?, k, i)?)?, out.as_ref())?;
            Ok(true)
        }
        Command::Gauss { p, m, out, format } => {
            let rows = gauss_table(p, m)?;
            let fmt: ReportFormat = format.as_deref().unwrap_or("json").parse()?;
            let bytes = match fmt {
                ReportFormat::Json => json(&rows)?,
                ReportFormat::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &rows {
                        w.serialize(r).map_err(|e| Error::Config(e.to_string()))?;
                    }
                    w.into_inner().map_err(|e| Error::Config(e.to_string()))?
                }
            };
            emit(&bytes, out.as_ref())?;
            Ok(rows.iter().all(|r| r.numeric_agrees && r.exact_square_ok != Some(false)))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err @ (Error::Config(_) | Error::InvalidDatum(_) | Error::NotOddPrime(_) | Error::DegreeTooLarge { .. })) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
