//! Γ_F-orbits of roots for a tame torus and their classification.

use tamechi::galois::{enumerate_orbits, FieldDatum};

fn main() -> tamechi::Result<()> {
    for (p, e, f, t) in [(3, 2, 1, 0), (3, 4, 1, 0), (5, 4, 1, 1), (7, 2, 3, 1)] {
        let datum = FieldDatum::new(p, 1, e, f, t)?;
        println!("q={p} e={e} f={f} t={t} (n = {})", datum.n());
        for o in enumerate_orbits(&datum)? {
            println!(
                "  [1, {}]  {:<15} ADS {:<10} Tam {:<10} size {:>3}  f(F_α/F) {}",
                o.g(),
                o.kind.name(),
                o.ads_kind,
                o.tam_kind,
                o.size,
                o.f_f_alpha
            );
        }
    }
    Ok(())
}
