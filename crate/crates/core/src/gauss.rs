//! Quadratic Gauss sums over finite fields: exact sums in ℤ[ζ_p], the
//! closed-form normalized sum as a fourth root of unity, and the Langlands
//! constant of a quadratic ramified extension.

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::arith::{big_pow, jacobi, jacobi_i64, CyclotomicInt, RootOfUnity, Sign};
use crate::error::{Error, Result};
use crate::ffield::{build_field, discrete_log, trace_to_prime, FiniteField, ENUM_CAP};

/// How the additive character `x ↦ ζ_p^{Tr(a·x)}` picks its multiplier `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Multiplier {
    /// `a = 1`.
    Canonical,
    /// `a = generator^j` for the field's fixed generator.
    GeneratorPower(i64),
    /// `a` is the image of an integer prime to `p`.
    Integer(i64),
}

/// A nontrivial additive character of `𝔽_{p^m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdditiveCharSpec {
    pub p: u64,
    pub m: u32,
    pub multiplier: Multiplier,
}

impl AdditiveCharSpec {
    pub fn canonical(p: u64, m: u32) -> Self {
        AdditiveCharSpec { p, m, multiplier: Multiplier::Canonical }
    }

    pub fn with_multiplier(p: u64, m: u32, multiplier: Multiplier) -> Self {
        AdditiveCharSpec { p, m, multiplier }
    }

    /// `|k| = p^m`.
    pub fn order(&self) -> BigInt {
        big_pow(self.p, self.m as u64)
    }

    fn check_multiplier(&self) -> Result<()> {
        if let Multiplier::Integer(a) = self.multiplier {
            if a.rem_euclid(self.p as i64) == 0 {
                return Err(Error::MultiplierNotUnit { multiplier: a, modulus: BigInt::from(self.p) });
            }
        }
        Ok(())
    }

    fn multiplier_elem<'f>(&self, field: &'f FiniteField) -> crate::ffield::FFElem<'f> {
        match self.multiplier {
            Multiplier::Canonical => field.one(),
            Multiplier::GeneratorPower(j) => field.gen_pow(j),
            Multiplier::Integer(a) => field.from_int(a),
        }
    }
}

/// `(a/k^×)` for the multiplier of `spec`.
pub fn multiplier_twist(spec: &AdditiveCharSpec) -> Result<Sign> {
    spec.check_multiplier()?;
    Ok(match spec.multiplier {
        Multiplier::Canonical => Sign::Plus,
        Multiplier::GeneratorPower(j) => Sign::from_parity(&BigInt::from(j)),
        Multiplier::Integer(a) => {
            let s = jacobi(&BigInt::from(a), &spec.order())?;
            Sign::from_i8(s).expect("a is prime to p")
        }
    })
}

/// `𝔤(ψ) = Σ_{x ∈ k^×} (x/k^×) ψ(x)` as an exact element of ℤ[ζ_p].
///
/// The square is checked against `(−1/|k|)·|k|` before returning.
pub fn gauss_sum_exact(spec: &AdditiveCharSpec) -> Result<CyclotomicInt> {
    spec.check_multiplier()?;
    let q = spec.order();
    if q > BigInt::from(ENUM_CAP) {
        return Err(Error::FieldTooLarge { order: u64::try_from(&q).unwrap_or(u64::MAX), cap: ENUM_CAP });
    }
    let field = build_field(spec.p, spec.m)?;
    let a = spec.multiplier_elem(&field);
    let mut coeffs = vec![BigInt::from(0); spec.p as usize];
    for x in field.elements().skip(1) {
        let chi = if discrete_log(&x)? % 2 == 0 { 1 } else { -1 };
        let tr = trace_to_prime(&a.mul(&x));
        coeffs[tr as usize] += chi;
    }
    let g = CyclotomicInt::from_power_coeffs(spec.p as u32, coeffs);

    let expected = BigInt::from(jacobi(&BigInt::from(-1), &q)?) * &q;
    let sq = g.mul(&g)?;
    if sq.as_integer() != Some(&expected) {
        return Err(Error::Inconsistency(format!(
            "Gauss sum over F_{}^{} squares to {:?}, expected {}",
            spec.p, spec.m, sq.coeffs(), expected
        )));
    }
    Ok(g)
}

/// The same sum evaluated in floating point; only used as a numeric
/// cross-check of the closed form.
pub fn gauss_sum_numeric(spec: &AdditiveCharSpec) -> Result<Complex64> {
    spec.check_multiplier()?;
    let field = build_field(spec.p, spec.m)?;
    if field.order() > ENUM_CAP {
        return Err(Error::FieldTooLarge { order: field.order(), cap: ENUM_CAP });
    }
    let a = spec.multiplier_elem(&field);
    let p = spec.p as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for x in field.elements().skip(1) {
        let chi = if discrete_log(&x)? % 2 == 0 { 1.0 } else { -1.0 };
        let tr = trace_to_prime(&a.mul(&x)) as f64;
        acc += Complex64::from_polar(chi, 2.0 * std::f64::consts::PI * tr / p);
    }
    Ok(acc)
}

/// `𝔫(ψ) = |k|^{-1/2}·𝔤(ψ)` in closed form.
///
/// Over `𝔽_p` with the canonical character the classical sign gives `1` or
/// `i` according to `p mod 4`; Hasse–Davenport `𝔤_m = −(−𝔤_1)^m` lifts it to
/// `𝔽_{p^m}`, and `𝔫(ψ_a) = (a/k^×)·𝔫(ψ_1)`.
pub fn normalized_gauss(spec: &AdditiveCharSpec) -> Result<RootOfUnity> {
    let base = if spec.p % 4 == 1 { RootOfUnity::one() } else { RootOfUnity::i() };
    let lifted = RootOfUnity::minus_one().mul(&RootOfUnity::minus_one().mul(&base).pow(spec.m));
    Ok(lifted.mul(&multiplier_twist(spec)?.to_root()))
}

fn prime_power_parts(q: u64) -> Result<(u64, u32)> {
    let factors = crate::arith::prime_factors(q);
    match factors.as_slice() {
        [p] if p % 2 == 1 => {
            let mut m = 0;
            let mut r = q;
            while r > 1 {
                r /= p;
                m += 1;
            }
            Ok((*p, m))
        }
        _ => Err(Error::InvalidDatum(format!("{q} is not a power of an odd prime"))),
    }
}

/// The Langlands constant `λ_{E/K}` of a quadratic ramified extension whose
/// residue field has `residue_field_order` elements, reached from a base of
/// canonical residue character through a totally ramified step of odd
/// degree `m_mult`.
pub fn lambda_quad_ramified(residue_field_order: u64, m_mult: u64) -> Result<RootOfUnity> {
    let (p, m) = prime_power_parts(residue_field_order)?;
    lambda_quad_ramified_with(&AdditiveCharSpec::canonical(p, m), m_mult)
}

/// As [`lambda_quad_ramified`], with the residue character of the base given
/// explicitly: returns `𝔫(ψ_base)·(m_mult/|k|)^{-1}`.
pub fn lambda_quad_ramified_with(base: &AdditiveCharSpec, m_mult: u64) -> Result<RootOfUnity> {
    if m_mult % 2 == 0 {
        return Err(Error::EvenMultiplier(m_mult));
    }
    let q = base.order();
    let sym = jacobi(&BigInt::from(m_mult), &q)?;
    let sign = Sign::from_i8(sym).ok_or(Error::MultiplierNotUnit {
        multiplier: m_mult as i64,
        modulus: q.clone(),
    })?;
    Ok(normalized_gauss(base)?.mul(&sign.to_root().inv()))
}

/// `(−1/Q)` as a sign.
pub fn minus_one_symbol(q: &BigInt) -> Result<Sign> {
    Ok(Sign::from_i8(jacobi(&BigInt::from(-1), q)?).expect("Q is odd"))
}

/// `(−1/Q)` over machine integers.
pub fn minus_one_symbol_u64(q: u64) -> Result<Sign> {
    Ok(Sign::from_i8(jacobi_i64(-1, q as i64)?).expect("Q is odd"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snap(z: Complex64, q: f64) -> RootOfUnity {
        let w = z / q.sqrt();
        let candidates = [(0, 1), (1, 4), (1, 2), (3, 4)];
        let (n, d) = candidates
            .into_iter()
            .min_by(|a, b| {
                let da = (RootOfUnity::new(a.0, a.1).to_complex() - w).norm();
                let db = (RootOfUnity::new(b.0, b.1).to_complex() - w).norm();
                da.partial_cmp(&db).unwrap()
            })
            .unwrap();
        RootOfUnity::new(n, d)
    }

    #[test]
    fn gauss_sum_exact_examples() {
        let g3 = gauss_sum_exact(&AdditiveCharSpec::canonical(3, 1)).unwrap();
        let expected = CyclotomicInt::zeta_pow(3, 1).sub(&CyclotomicInt::zeta_pow(3, 2)).unwrap();
        assert_eq!(g3, expected);
        assert_eq!(g3.mul(&g3).unwrap().as_integer(), Some(&BigInt::from(-3)));
        let g5 = gauss_sum_exact(&AdditiveCharSpec::canonical(5, 1)).unwrap();
        assert_eq!(g5.mul(&g5).unwrap().as_integer(), Some(&BigInt::from(5)));
    }

    #[test]
    fn normalized_gauss_examples() {
        assert_eq!(normalized_gauss(&AdditiveCharSpec::canonical(5, 1)).unwrap(), RootOfUnity::one());
        assert_eq!(normalized_gauss(&AdditiveCharSpec::canonical(3, 1)).unwrap(), RootOfUnity::i());
        let z = gauss_sum_numeric(&AdditiveCharSpec::canonical(5, 1)).unwrap();
        assert!((z.re - 5f64.sqrt()).abs() < 1e-9 && z.im.abs() < 1e-9);
        let z = gauss_sum_numeric(&AdditiveCharSpec::canonical(3, 1)).unwrap();
        assert!((z.im - 3f64.sqrt()).abs() < 1e-9 && z.re.abs() < 1e-9);
    }

    #[test]
    fn hasse_davenport_against_numeric() {
        for p in [3u64, 5, 7] {
            let spec = AdditiveCharSpec::canonical(p, 2);
            let z = gauss_sum_numeric(&spec).unwrap();
            assert_eq!(snap(z, (p * p) as f64), normalized_gauss(&spec).unwrap());
            let g = gauss_sum_exact(&spec).unwrap();
            let sq = g.mul(&g).unwrap();
            let n2 = normalized_gauss(&spec).unwrap().pow(2);
            let sign = if n2.is_one() { 1 } else { -1 };
            assert_eq!(sq.as_integer(), Some(&BigInt::from(sign * (p * p) as i64)));
        }
    }

    #[test]
    fn twist_rule_exact_over_prime_fields() {
        for p in [3u64, 5, 7, 11, 13] {
            let g1 = gauss_sum_exact(&AdditiveCharSpec::canonical(p, 1)).unwrap();
            for a in 1..p as i64 {
                let spec = AdditiveCharSpec::with_multiplier(p, 1, Multiplier::Integer(a));
                let ga = gauss_sum_exact(&spec).unwrap();
                let twist = multiplier_twist(&spec).unwrap().to_i8();
                assert_eq!(ga, g1.scale(&BigInt::from(twist)), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_quad_ramified(3, 1).unwrap(), RootOfUnity::i());
        assert_eq!(lambda_quad_ramified(5, 1).unwrap(), RootOfUnity::one());
        assert!(lambda_quad_ramified(3, 3).is_err());
        assert!(lambda_quad_ramified(5, 2).is_err());
        // 𝔫 over F_7 is i and (3/7) = −1
        assert_eq!(lambda_quad_ramified(7, 3).unwrap(), RootOfUnity::new(3, 4));
    }

    #[test]
    fn normalized_square_is_minus_one_symbol() {
        for (p, m) in [(3u64, 1u32), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 3), (11, 2), (13, 1)] {
            for mult in [Multiplier::Canonical, Multiplier::GeneratorPower(1), Multiplier::Integer(2)] {
                let spec = AdditiveCharSpec::with_multiplier(p, m, mult);
                let n = normalized_gauss(&spec).unwrap();
                assert_eq!(n.pow(2).as_sign(), Some(minus_one_symbol_u64(p.pow(m)).unwrap()));
            }
        }
    }
}
