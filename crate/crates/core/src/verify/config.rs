//! The grid configuration file: one `key = value` per line, `#` starts a
//! comment, lists are comma separated.
//!
//! ```text
//! primes = 3, 5, 7, 11
//! a_values = 1
//! max_n = 10
//! t_values = 0, 1
//! tower_depth_max = 2
//! level_max = 6
//! zeta_iprime_sweep = 3
//! format = json
//! output = report.json
//! ```

use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::galois::MAX_DEGREE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridConfig {
    pub primes: Vec<u64>,
    pub a_values: Vec<u32>,
    /// Bound on `n = ef`.
    pub max_n: u64,
    pub t_values: Vec<i64>,
    pub tower_depth_max: usize,
    pub level_max: u64,
    /// Number of `ζ^{(i')}` exponents `1..=count` tried when `e` is even.
    pub zeta_iprime_sweep: u64,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub format: ReportFormat,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            primes: vec![3, 5, 7, 11],
            a_values: vec![1],
            max_n: 10,
            t_values: vec![0, 1],
            tower_depth_max: 2,
            level_max: 6,
            zeta_iprime_sweep: 3,
            output: None,
            format: ReportFormat::Json,
        }
    }
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Config(format!("{key}: cannot parse {s:?}"))))
        .collect()
}

fn parse_one<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::Config(format!("{key}: cannot parse {value:?}")))
}

impl GridConfig {
    /// Parses the text of a configuration file; absent keys keep defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = GridConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let key = key.trim();
            match key {
                "primes" => cfg.primes = parse_list(key, value)?,
                "a_values" => cfg.a_values = parse_list(key, value)?,
                "max_n" => cfg.max_n = parse_one(key, value)?,
                "t_values" => cfg.t_values = parse_list(key, value)?,
                "tower_depth_max" => cfg.tower_depth_max = parse_one(key, value)?,
                "level_max" => cfg.level_max = parse_one(key, value)?,
                "zeta_iprime_sweep" => cfg.zeta_iprime_sweep = parse_one(key, value)?,
                "output" => cfg.output = Some(PathBuf::from(value.trim())),
                "format" => cfg.format = value.parse()?,
                other => return Err(Error::Config(format!("line {}: unknown key {other:?}", lineno + 1))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.primes.is_empty() || self.a_values.is_empty() || self.t_values.is_empty() {
            return bad("primes, a_values and t_values must be nonempty".into());
        }
        if let Some(p) = self.primes.iter().find(|&&p| p % 2 == 0 || !is_prime(p)) {
            return bad(format!("{p} is not an odd prime"));
        }
        if self.a_values.contains(&0) {
            return bad("a_values must be positive".into());
        }
        if self.max_n == 0 || self.max_n > MAX_DEGREE {
            return bad(format!("max_n must lie in 1..={MAX_DEGREE}"));
        }
        if self.tower_depth_max == 0 || self.level_max == 0 || self.zeta_iprime_sweep == 0 {
            return bad("tower_depth_max, level_max and zeta_iprime_sweep must be positive".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_defaults() {
        let cfg = GridConfig::parse("# grid\nprimes = 3, 5 # small\nformat=csv\n\nmax_n=4\n").unwrap();
        assert_eq!(cfg.primes, vec![3, 5]);
        assert_eq!(cfg.format, ReportFormat::Csv);
        assert_eq!(cfg.max_n, 4);
        assert_eq!(cfg.t_values, vec![0, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GridConfig::parse("primes = 2").is_err());
        assert!(GridConfig::parse("primes = 9").is_err());
        assert!(GridConfig::parse("bogus = 1").is_err());
        assert!(GridConfig::parse("max_n = 13").is_err());
        assert!(GridConfig::parse("no equals sign").is_err());
    }
}
