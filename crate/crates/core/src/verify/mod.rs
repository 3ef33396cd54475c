//! The grid runner: configuration, scenario expansion, concurrent
//! evaluation and report emission.

pub mod config;
pub mod grid;
pub mod report;
pub mod tables;

use rayon::prelude::*;

use crate::chars::check_scenario;
use crate::error::{Error, Result};
use crate::galois::OrbitKind;

pub use config::{GridConfig, ReportFormat};
pub use grid::{expand_grid, Grid, GridPoint, SkipReason, Skipped};
pub use report::{Record, Summary, VerifyReport};

fn evaluate(point: &GridPoint) -> Result<(Vec<Record>, bool)> {
    let datum = &point.datum;
    let context = |err: Error| {
        Error::Inconsistency(format!(
            "p={} a={} e={} f={} t={} scenario {}: {err}",
            datum.p, datum.a, datum.e, datum.f, datum.t, point.scenario_index
        ))
    };
    let ramified = point.orbits.iter().filter(|o| o.kind == OrbitKind::SymRamified).count();
    if ramified != usize::from(datum.e % 2 == 0) {
        return Err(context(Error::Inconsistency(format!("{ramified} symmetric ramified orbits"))));
    }
    let check = check_scenario(&point.scenario, &point.orbits).map_err(context)?;
    let rows = point
        .orbits
        .iter()
        .zip(&check.orbits)
        .map(|(orbit, oc)| Record::build(datum, point.scenario_index, &point.scenario, orbit, oc, &check))
        .collect();
    Ok((rows, check.aggregate_holds))
}

/// Runs every check on the grid with `jobs` worker threads; the report does
/// not depend on `jobs`.
pub fn run_verify(config: &GridConfig, jobs: usize) -> Result<VerifyReport> {
    let grid = expand_grid(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let results: Vec<(Vec<Record>, bool)> =
        pool.install(|| grid.points.par_iter().map(evaluate).collect::<Result<Vec<_>>>())?;
    Ok(VerifyReport::assemble(config, grid.data.len(), results, grid.skipped))
}
