//! Exact and normalized quadratic Gauss sums and the Langlands constant of a
//! quadratic ramified extension.

use tamechi::gauss::{gauss_sum_exact, lambda_quad_ramified, normalized_gauss, AdditiveCharSpec, Multiplier};

fn main() -> tamechi::Result<()> {
    for (p, m) in [(3, 1), (3, 2), (5, 1), (7, 1), (7, 3)] {
        let spec = AdditiveCharSpec::canonical(p, m);
        let g = gauss_sum_exact(&spec)?;
        println!("p={p} m={m}: 𝔫 = {}, 𝔤 coefficients {:?}", normalized_gauss(&spec)?, g.coeffs());
    }
    let twisted = AdditiveCharSpec::with_multiplier(5, 1, Multiplier::Integer(2));
    println!("𝔫 for x -> ζ_5^(2x): {}", normalized_gauss(&twisted)?);
    for (q, m) in [(3, 1), (7, 3), (25, 3)] {
        println!("λ for |k| = {q}, m = {m}: {}", lambda_quad_ramified(q, m)?);
    }
    Ok(())
}
