use num_bigint::BigInt;
use proptest::prelude::*;

use tamechi::chars::{check_scenario, KalCharacter, TameCharacter};
use tamechi::galois::{enumerate_orbits, FieldDatum, OrbitKind};
use tamechi::strata::{stratum_of, TowerScenario};
use tamechi::verify::grid::{level_sequences, tower_chains};
use tamechi::verify::{run_verify, GridConfig};
use tamechi::{Error, RootOfUnity};

/// A random valid scenario, or `None` when the drawn tower is rejected.
fn draw(p: u64, e: u64, f: u64, t: i64, chain_pick: usize, level_pick: usize, z: u64) -> Option<(TowerScenario, Vec<tamechi::galois::OrbitClass>)> {
    if e % p == 0 {
        return None;
    }
    let datum = FieldDatum::new(p, 1, e, f, t).ok()?;
    let chains = tower_chains(e, f, 2);
    if chains.is_empty() {
        return None;
    }
    let chain = chains[chain_pick % chains.len()].clone();
    let levels_all = level_sequences(chain.len(), 7);
    let levels = levels_all[level_pick % levels_all.len()].clone();
    let sc = TowerScenario::new(&datum, chain, levels, z).ok()?;
    let orbits = enumerate_orbits(&datum).ok()?;
    Some((sc, orbits))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn strata_invariants(pi in 0usize..4, e in 1u64..=6, f in 1u64..=2, t in 0i64..3, c in 0usize..50, l in 0usize..50) {
        let p = [3u64, 5, 7, 11][pi];
        if let Some((sc, orbits)) = draw(p, e, f, t, c, l, 1) {
            for o in &orbits {
                let info = stratum_of(&sc, o);
                prop_assert!(info.stratum_index >= -1 && info.stratum_index < sc.depth() as i64);
                prop_assert!(info.v_nonzero != info.w_nonzero);
                if info.stratum_index == -1 {
                    prop_assert!(!info.v_nonzero);
                }
                if o.kind == OrbitKind::SymRamified {
                    prop_assert!(info.stratum_index >= 0);
                }
                for m in &o.members {
                    prop_assert_eq!(sc.root_stratum(*m), info.stratum_index);
                }
            }
        }
    }

    #[test]
    fn identity_holds_and_ignores_zeta(pi in 0usize..4, e in 1u64..=6, f in 1u64..=2, t in 0i64..3, c in 0usize..50, l in 0usize..50, z in 0u64..7) {
        let p = [3u64, 5, 7, 11][pi];
        let Some((sc, orbits)) = draw(p, e, f, t, c, l, z) else { return Ok(()) };
        let check = match check_scenario(&sc, &orbits) {
            Err(Error::RamifiedParity(_)) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert!(check.all_identities_hold());
        prop_assert!(check.all_oracles_pass());
        let order: BigInt = sc.datum.mu_order().clone();
        for oc in &check.orbits {
            for chi in [oc.epsilon.as_ref(), oc.tam.as_ref()].into_iter().flatten() {
                prop_assert!(chi.on_mu_gen.order_divides(&order));
            }
        }
        let other = TowerScenario::new(&sc.datum, sc.chain.clone(), sc.levels.clone(), z + 1).unwrap();
        let again = check_scenario(&other, &orbits).unwrap();
        prop_assert!(again.all_identities_hold());
    }

    #[test]
    fn twisting_tam_breaks_the_identity(pi in 0usize..4, e in 2u64..=6, f in 1u64..=2, c in 0usize..50, l in 0usize..50) {
        let p = [3u64, 5, 7, 11][pi];
        let Some((sc, orbits)) = draw(p, e, f, 0, c, l, 1) else { return Ok(()) };
        let Ok(check) = check_scenario(&sc, &orbits) else { return Ok(()) };
        for oc in check.orbits.iter().filter(|o| o.identity_holds.is_some()) {
            let tam = oc.tam.clone().unwrap();
            let twisted = tam.mul(&TameCharacter::new(tam.residue_order.clone(), RootOfUnity::one(), RootOfUnity::minus_one()).unwrap());
            let holds = match (&oc.kal, &oc.epsilon) {
                (Some(KalCharacter::Full(k)), Some(eps)) => twisted.inv() == eps.inv().mul(k),
                (Some(KalCharacter::Probe(pv)), _) => {
                    let s = check.symram.as_ref().unwrap();
                    tamechi::chars::eval_at_2a_alpha(&twisted, &sc.datum, s).unwrap().inv() == pv.at_2a_alpha
                }
                _ => continue,
            };
            prop_assert!(!holds);
        }
    }
}

#[test]
fn report_independent_of_threads() {
    let cfg = GridConfig { primes: vec![3, 5], max_n: 6, level_max: 4, ..GridConfig::default() };
    let a = run_verify(&cfg, 1).unwrap();
    let b = run_verify(&cfg, 4).unwrap();
    assert_eq!(a, b);
    assert!(a.summary.all_pass);
}

#[test]
fn single_worked_point() {
    let cfg = GridConfig {
        primes: vec![3],
        max_n: 2,
        t_values: vec![0],
        tower_depth_max: 1,
        level_max: 1,
        zeta_iprime_sweep: 1,
        ..GridConfig::default()
    };
    let report = run_verify(&cfg, 1).unwrap();
    let ram: Vec<_> = report.records.iter().filter(|r| r.kind == "sym_ramified").collect();
    assert_eq!(ram.len(), 1);
    assert_eq!(ram[0].kal_2a_alpha.as_deref(), Some("1/4"));
    assert_eq!(ram[0].identity, "pass");
}
