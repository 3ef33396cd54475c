//! A small grid run with a JSON report on stdout.

use tamechi::verify::{run_verify, GridConfig, ReportFormat};

fn main() -> tamechi::Result<()> {
    let config = GridConfig::parse("primes = 3, 5\nmax_n = 4\nlevel_max = 4\nzeta_iprime_sweep = 2\n")?;
    let report = run_verify(&config, 2)?;
    let s = &report.summary;
    eprintln!(
        "{} scenarios, {} records, all pass: {}, skipped {} + {}",
        s.scenarios, s.records, s.all_pass, s.skipped_membership_count, s.skipped_ramified_parity
    );
    let csv = report.to_bytes(ReportFormat::Csv)?;
    for line in String::from_utf8_lossy(&csv).lines().take(4) {
        println!("{line}");
    }
    Ok(())
}
