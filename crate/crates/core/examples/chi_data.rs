//! The three character families on every orbit of one scenario and the
//! comparison identity, including the symmetric ramified probe at 2a_α.

use tamechi::chars::{check_scenario, discriminant_routes, toral_invariant_check, KalCharacter};
use tamechi::galois::{enumerate_orbits, FieldDatum};
use tamechi::strata::TowerScenario;

fn main() -> tamechi::Result<()> {
    let datum = FieldDatum::new(3, 1, 2, 1, 0)?;
    let orbits = enumerate_orbits(&datum)?;
    let scenario = TowerScenario::new(&datum, vec![(2, 1)], vec![1], 1)?;
    let check = check_scenario(&scenario, &orbits)?;
    let o = &check.orbits[0];
    if let Some(KalCharacter::Probe(p)) = &o.kal {
        println!("χ_Kal(2a_α) = {}", p.at_2a_alpha);
    }
    println!("χ_Tam(ϖ_E) = {}", o.tam.as_ref().expect("evaluated").on_unif);
    println!("χ_Tam(2a_α)^-1 = {}", o.tam_at_2a_alpha.as_ref().expect("evaluated").inv());

    let datum = FieldDatum::new(5, 1, 4, 1, 0)?;
    let orbits = enumerate_orbits(&datum)?;
    let scenario = TowerScenario::new(&datum, vec![(4, 1), (2, 1)], vec![3, 4], 2)?;
    let check = check_scenario(&scenario, &orbits)?;
    for oc in &check.orbits {
        println!("orbit {} ({:?}): identity {:?}", oc.orbit_index, oc.role, oc.identity_holds);
    }
    println!("ε = {:?}", check.epsilon_total);
    println!("μ_Tam = {:?}", check.mu_tam);
    println!("aggregate identity at {:?}: {}", check.aggregate_probe, check.aggregate_holds);

    println!("discriminant routes for q=5, s=3, m=3: {:?}", discriminant_routes(5, 1, 3, 3)?);
    println!("toral invariant for GL_4, (1,3): {}", toral_invariant_check(4, 1, 3));
    Ok(())
}
