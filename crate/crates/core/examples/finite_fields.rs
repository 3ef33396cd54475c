//! Explicit residue fields: tables, discrete logs, traces and the
//! permutation-sign oracle for the quadratic character.

use num_bigint::BigInt;
use tamechi::ffield::{discrete_log, mult_perm_sign, norm_one_quad_char, shared_field, trace_to_prime};
use tamechi::RootOfUnity;

fn main() -> tamechi::Result<()> {
    let field = shared_field(3, 2)?;
    println!("F_9 with modulus {:?}, generator index {}", field.modulus(), field.generator_index());
    for x in field.elements().skip(1) {
        println!(
            "  index {:>2}: log {:>2}, trace {}",
            x.index(),
            discrete_log(&x)?,
            trace_to_prime(&x)
        );
    }

    let big = shared_field(7, 2)?;
    for k in 0..6 {
        println!("sign of x -> g^{k} x on F_49: {}", mult_perm_sign(&big, k)?);
    }

    let beta = RootOfUnity::new(1, 4);
    println!("(i / k^1) for |k'| = 3: {}", norm_one_quad_char(&BigInt::from(3), &beta)?);
    Ok(())
}
