//! Report records and their JSON and CSV renderings. Exact values are
//! written as `num/den` strings.

use std::io::Write;

use serde::Serialize;

use crate::arith::RootOfUnity;
use crate::chars::{AggregateProbe, KalCharacter, OrbitCheck, OrbitRole, ScenarioCheck};
use crate::error::{Error, Result};
use crate::galois::{FieldDatum, OrbitClass};
use crate::strata::TowerScenario;
use crate::verify::config::{GridConfig, ReportFormat};
use crate::verify::grid::{format_chain, format_levels, SkipReason, Skipped};

pub const PSI_NORMALIZATION: &str = "residue additive characters are x -> zeta_p^Tr(x); \
psi_{K_{l-1}} induces x -> zeta_p^Tr(e' x) on k_E with e' = e(K_{l-1}/F) = 2^(l-1); \
the generator of mu_E is the fixed primitive element of the explicit residue field";

/// One row per `(datum, scenario, orbit)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub p: u64,
    pub a: u32,
    pub e: u64,
    pub f: u64,
    pub t: String,
    pub scenario_index: usize,
    pub chain: String,
    pub levels: String,
    pub zeta_exponent: String,
    pub orbit_index: usize,
    pub representative: String,
    pub kind: &'static str,
    pub ads_label: String,
    pub tam_label: String,
    pub orbit_size: u64,
    pub f_f_alpha: u64,
    pub role: &'static str,
    pub stratum_index: i64,
    pub level: Option<u64>,
    pub v_nonzero: bool,
    pub epsilon_mu: Option<String>,
    pub epsilon_unif: Option<String>,
    pub kal_mu: Option<String>,
    pub kal_unif: Option<String>,
    pub kal_2a_alpha: Option<String>,
    pub tam_mu: Option<String>,
    pub tam_unif: Option<String>,
    pub tam_2a_alpha: Option<String>,
    pub identity: &'static str,
    pub oracles: &'static str,
    pub failed_oracles: String,
    pub aggregate: &'static str,
    pub aggregate_probe: &'static str,
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn s(x: &RootOfUnity) -> Option<String> {
    Some(x.to_string())
}

impl Record {
    pub fn build(
        datum: &FieldDatum,
        scenario_index: usize,
        scenario: &TowerScenario,
        orbit: &OrbitClass,
        check: &OrbitCheck,
        scenario_check: &ScenarioCheck,
    ) -> Record {
        let (kal_mu, kal_unif, kal_2a) = match &check.kal {
            Some(KalCharacter::Full(k)) => (s(&k.on_mu_gen), s(&k.on_unif), None),
            Some(KalCharacter::Probe(p)) => (s(&p.on_mu_gen), None, s(&p.at_2a_alpha)),
            None => (None, None, None),
        };
        let failed: Vec<&str> = check.oracles.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        Record {
            p: datum.p,
            a: datum.a,
            e: datum.e,
            f: datum.f,
            t: datum.t.to_string(),
            scenario_index,
            chain: format_chain(&scenario.chain),
            levels: format_levels(&scenario.levels),
            zeta_exponent: scenario.zeta_i_prime_exponent.to_string(),
            orbit_index: orbit.index,
            representative: orbit.g().to_string(),
            kind: orbit.kind.name(),
            ads_label: orbit.ads_kind.to_string(),
            tam_label: orbit.tam_kind.to_string(),
            orbit_size: orbit.size,
            f_f_alpha: orbit.f_f_alpha,
            role: match check.role {
                OrbitRole::PairLeader { .. } => "pair_leader",
                OrbitRole::PairMember { .. } => "pair_member",
                OrbitRole::Symmetric => "symmetric",
            },
            stratum_index: check.stratum.stratum_index,
            level: check.stratum.t_at_stratum,
            v_nonzero: check.stratum.v_nonzero,
            epsilon_mu: check.epsilon.as_ref().and_then(|c| s(&c.on_mu_gen)),
            epsilon_unif: check.epsilon.as_ref().and_then(|c| s(&c.on_unif)),
            kal_mu,
            kal_unif,
            kal_2a_alpha: kal_2a,
            tam_mu: check.tam.as_ref().and_then(|c| s(&c.on_mu_gen)),
            tam_unif: check.tam.as_ref().and_then(|c| s(&c.on_unif)),
            tam_2a_alpha: check.tam_at_2a_alpha.as_ref().and_then(s),
            identity: match check.identity_holds {
                Some(b) => pass(b),
                None => "covered_by_pair",
            },
            oracles: pass(check.oracles_pass()),
            failed_oracles: failed.join(";"),
            aggregate: pass(scenario_check.aggregate_holds),
            aggregate_probe: match scenario_check.aggregate_probe {
                AggregateProbe::Uniformizer => "zeta,unif",
                AggregateProbe::TwoAAlpha => "zeta,2a_alpha",
            },
        }
    }

    pub fn passes(&self) -> bool {
        self.identity != "fail" && self.oracles == "pass" && self.aggregate == "pass"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub psi_normalization: &'static str,
    pub config: GridConfig,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub data: usize,
    pub scenarios: usize,
    pub records: usize,
    pub identity_pass: usize,
    pub identity_fail: usize,
    pub oracle_pass: usize,
    pub oracle_fail: usize,
    pub aggregate_pass: usize,
    pub aggregate_fail: usize,
    pub skipped_membership_count: usize,
    pub skipped_ramified_parity: usize,
    pub all_pass: bool,
    pub skipped: Vec<Skipped>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub meta: Meta,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn assemble(
        config: &GridConfig,
        data: usize,
        scenario_results: Vec<(Vec<Record>, bool)>,
        skipped: Vec<Skipped>,
    ) -> VerifyReport {
        let mut summary = Summary { data, scenarios: scenario_results.len(), ..Summary::default() };
        let mut records = Vec::new();
        for (rows, aggregate) in scenario_results {
            if aggregate {
                summary.aggregate_pass += 1;
            } else {
                summary.aggregate_fail += 1;
            }
            records.extend(rows);
        }
        for r in &records {
            match r.identity {
                "pass" => summary.identity_pass += 1,
                "fail" => summary.identity_fail += 1,
                _ => {}
            }
            if r.oracles == "pass" {
                summary.oracle_pass += 1;
            } else {
                summary.oracle_fail += 1;
            }
        }
        summary.records = records.len();
        summary.skipped_membership_count =
            skipped.iter().filter(|s| s.reason == SkipReason::MembershipCount).count();
        summary.skipped_ramified_parity =
            skipped.iter().filter(|s| s.reason == SkipReason::RamifiedParity).count();
        summary.all_pass = summary.identity_fail == 0 && summary.oracle_fail == 0 && summary.aggregate_fail == 0;
        summary.skipped = skipped;
        VerifyReport {
            meta: Meta {
                tool: "tamechi",
                version: env!("CARGO_PKG_VERSION"),
                psi_normalization: PSI_NORMALIZATION,
                config: config.clone(),
            },
            records,
            summary,
        }
    }

    pub fn write<W: Write>(&self, format: ReportFormat, out: W) -> Result<()> {
        let io = |e: std::io::Error| Error::Config(format!("writing report: {e}"));
        match format {
            ReportFormat::Json => {
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, self).map_err(|e| Error::Config(e.to_string()))?;
                writeln!(out).map_err(io)?;
            }
            ReportFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                for r in &self.records {
                    w.serialize(r).map_err(|e| Error::Config(e.to_string()))?;
                }
                w.flush().map_err(io)?;
            }
        }
        Ok(())
    }

    pub fn to_bytes(&self, format: ReportFormat) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        self.write(format, &mut buf)?;
        Ok(buf)
    }
}
