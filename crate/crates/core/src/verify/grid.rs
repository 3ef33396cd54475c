//! Expansion of a [`GridConfig`] into field data and tower scenarios.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{enumerate_orbits, FieldDatum, OrbitClass, OrbitKind};
use crate::strata::{stratum_of, TowerScenario};
use crate::verify::config::GridConfig;

/// Why a generated scenario was not evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    /// A subfield of the chain has the wrong number of fixing cosets.
    MembershipCount,
    /// The symmetric ramified orbit sits at an even level.
    RamifiedParity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub p: u64,
    pub a: u32,
    pub e: u64,
    pub f: u64,
    pub t: String,
    pub chain: String,
    /// Empty when the whole chain was rejected.
    pub levels: String,
    pub reason: SkipReason,
    pub detail: String,
}

/// One `(datum, scenario)` pair ready for evaluation.
#[derive(Clone, Debug)]
pub struct GridPoint {
    pub datum: FieldDatum,
    pub orbits: Arc<Vec<OrbitClass>>,
    pub scenario_index: usize,
    pub scenario: TowerScenario,
}

#[derive(Clone, Debug, Default)]
pub struct Grid {
    pub data: Vec<FieldDatum>,
    pub points: Vec<GridPoint>,
    pub skipped: Vec<Skipped>,
}

pub fn format_chain(chain: &[(u64, u64)]) -> String {
    chain.iter().map(|(e, f)| format!("({e},{f})")).collect::<Vec<_>>().join(";")
}

pub fn format_levels(levels: &[u64]) -> String {
    levels.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// All chains `E_0 ⊋ E_1 ⊋ … ⊋ E_{d-1} ≠ F` with `E/E_0` unramified and
/// `1 ≤ d ≤ depth_max`, as `(e_j, f_j)` pairs.
pub fn tower_chains(e: u64, f: u64, depth_max: usize) -> Vec<Vec<(u64, u64)>> {
    fn extend(chain: &mut Vec<(u64, u64)>, depth_max: usize, out: &mut Vec<Vec<(u64, u64)>>) {
        let (el, fl) = *chain.last().expect("chains are nonempty");
        if (el, fl) == (1, 1) {
            return;
        }
        out.push(chain.clone());
        if chain.len() == depth_max {
            return;
        }
        for ej in divisors(el) {
            for fj in divisors(fl) {
                if (ej, fj) != (el, fl) {
                    chain.push((ej, fj));
                    extend(chain, depth_max, out);
                    chain.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    for f0 in divisors(f) {
        extend(&mut vec![(e, f0)], depth_max, &mut out);
    }
    out
}

/// Strictly increasing sequences of length `d` in `1..=level_max`.
pub fn level_sequences(d: usize, level_max: u64) -> Vec<Vec<u64>> {
    fn go(start: u64, left: usize, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for t in start..=max {
            cur.push(t);
            go(t + 1, left - 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, d, level_max, &mut Vec::new(), &mut out);
    out
}

/// Every datum with `ef ≤ max_n` and `p ∤ e`, in `(p, a, e, f, t)` order.
pub fn grid_data(config: &GridConfig) -> Result<Vec<FieldDatum>> {
    config.validate()?;
    let mut out = Vec::new();
    for &p in &config.primes {
        for &a in &config.a_values {
            for e in 1..=config.max_n {
                if e % p == 0 {
                    continue;
                }
                for f in 1..=config.max_n / e {
                    for &t in &config.t_values {
                        out.push(FieldDatum::new(p, a, e, f, t)?);
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Config("the grid is empty".into()));
    }
    Ok(out)
}

/// Expands the configuration into evaluable points, listing every rejected
/// scenario with its reason.
pub fn expand_grid(config: &GridConfig) -> Result<Grid> {
    let data = grid_data(config)?;
    let mut grid = Grid { data: data.clone(), ..Grid::default() };
    for datum in data {
        let orbits = Arc::new(enumerate_orbits(&datum)?);
        let ramified = orbits.iter().find(|o| o.kind == OrbitKind::SymRamified);
        let skip = |chain: &[(u64, u64)], levels: &str, reason, detail: String| Skipped {
            p: datum.p,
            a: datum.a,
            e: datum.e,
            f: datum.f,
            t: datum.t.to_string(),
            chain: format_chain(chain),
            levels: levels.to_string(),
            reason,
            detail,
        };
        let zetas: Vec<u64> = if datum.e % 2 == 0 { (1..=config.zeta_iprime_sweep).collect() } else { vec![1] };
        let mut index = 0;
        for chain in tower_chains(datum.e, datum.f, config.tower_depth_max) {
            let levels_all = level_sequences(chain.len(), config.level_max);
            let Some(first) = levels_all.first() else { continue };
            match TowerScenario::new(&datum, chain.clone(), first.clone(), 1u64) {
                Err(err @ Error::MembershipCount { .. }) => {
                    grid.skipped.push(skip(&chain, "", SkipReason::MembershipCount, err.to_string()));
                    continue;
                }
                Err(err) => return Err(err),
                Ok(_) => {}
            }
            for levels in levels_all {
                let probe = TowerScenario::new(&datum, chain.clone(), levels.clone(), 1u64)?;
                if let Some(orbit) = ramified {
                    let level = stratum_of(&probe, orbit).t_at_stratum;
                    if let Some(t) = level.filter(|t| t % 2 == 0) {
                        grid.skipped.push(skip(
                            &chain,
                            &format_levels(&levels),
                            SkipReason::RamifiedParity,
                            format!("symmetric ramified orbit at even level {t}"),
                        ));
                        continue;
                    }
                }
                for &z in &zetas {
                    let scenario = TowerScenario::new(&datum, chain.clone(), levels.clone(), z)?;
                    grid.points.push(GridPoint {
                        datum: datum.clone(),
                        orbits: Arc::clone(&orbits),
                        scenario_index: index,
                        scenario,
                    });
                    index += 1;
                }
            }
        }
    }
    Ok(grid)
}
