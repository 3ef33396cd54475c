//! Placing root orbits in the strata of a tower of subfields.

use tamechi::galois::{enumerate_orbits, FieldDatum};
use tamechi::strata::{descent_check, k_tower, stratum_of, sym_ram_data, TowerScenario};

fn main() -> tamechi::Result<()> {
    let datum = FieldDatum::new(5, 1, 4, 1, 0)?;
    let orbits = enumerate_orbits(&datum)?;
    let scenario = TowerScenario::new(&datum, vec![(4, 1), (2, 1)], vec![3, 4], 1)?;
    for o in &orbits {
        let info = stratum_of(&scenario, o);
        println!(
            "[1, {}] {:<15} stratum {:>2} level {:?} V≠0: {}",
            o.g(),
            o.kind.name(),
            info.stratum_index,
            info.t_at_stratum,
            info.v_nonzero
        );
    }
    println!("h = {:?}, j = {:?}", scenario.h_values(), scenario.j_values());
    println!("{:?}", sym_ram_data(&scenario, &orbits)?);
    println!("K-tower {:?}, descent to (2,1): {}", k_tower(&datum), descent_check(&scenario, (2, 1)));

    match TowerScenario::new(&datum, vec![(4, 1), (2, 1)], vec![2, 3], 1).map(|s| sym_ram_data(&s, &orbits)) {
        Ok(Err(err)) => println!("levels 2,3 rejected: {err}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
