//! Roots of unity as elements of ℚ/ℤ, Jacobi symbols and ℤ[ζ_p].

use num_bigint::BigInt;
use tamechi::arith::{jacobi, quad_char_cyclic, CyclotomicInt, RootOfUnity};

fn main() -> tamechi::Result<()> {
    let z = RootOfUnity::new(3, 8);
    println!("z = {z}, z^4 = {}, z^-1 = {}, order {}", z.pow(4), z.inv(), z.order());
    println!("quadratic value of z in a group of order 8: {}", z.quadratic_value(&BigInt::from(8))?);

    for (m, n) in [(2, 15), (-1, 9), (5, 21), (7, 11)] {
        println!("({m}/{n}) = {}", jacobi(&BigInt::from(m), &BigInt::from(n))?);
    }
    println!("quad char of g^5 in a cyclic group of order 24: {}", quad_char_cyclic(&BigInt::from(24), &BigInt::from(5))?);

    let zeta = CyclotomicInt::zeta_pow(5, 1);
    let one_minus = CyclotomicInt::from_integer(5, 1).sub(&zeta)?;
    let mut norm = CyclotomicInt::from_integer(5, 1);
    for j in 1..5 {
        norm = norm.mul(&CyclotomicInt::from_integer(5, 1).sub(&CyclotomicInt::zeta_pow(5, j))?)?;
    }
    println!("1 - ζ_5 = {:?}; N(1 - ζ_5) = {:?}", one_minus.coeffs(), norm.as_integer());
    Ok(())
}
