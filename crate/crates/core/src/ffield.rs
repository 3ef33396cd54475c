//! Explicit finite fields `𝔽_{p^m}` with deterministic moduli and
//! generators, discrete logarithms, traces, norm-one quadratic characters
//! and the brute-force permutation-sign oracle.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{is_prime, pow_mod, prime_factors, RootOfUnity, Sign};
use crate::error::{Error, Result};

/// Largest field order for which arithmetic tables are built.
pub const ARITH_CAP: u64 = 1_000_000;
/// Largest field order for which full-enumeration oracles run.
pub const ENUM_CAP: u64 = 10_000;

/// An explicit finite field `𝔽_p[x]/(modulus)`.
///
/// Elements are addressed by their index `Σ c_j p^j`, where `c_j` are the
/// coefficients of the reduced polynomial representative.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    m: u32,
    order: u64,
    /// Monic modulus, coefficients from degree 0 up to degree m.
    modulus: Vec<u64>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
            && self.generator == other.generator
    }
}

impl Eq for FiniteField {}

/// An element of a [`FiniteField`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFElem<'f> {
    field: &'f FiniteField,
    coeffs: Vec<u64>,
}

/// Builds `𝔽_{p^m}` with the smallest monic irreducible modulus and the
/// smallest primitive element (both in index order).
pub fn build_field(p: u64, m: u32) -> Result<FiniteField> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidDatum("field degree must be positive".into()));
    }
    let order = checked_pow(p, m).filter(|&q| q <= ARITH_CAP).ok_or(Error::FieldTooLarge {
        order: checked_pow(p, m).unwrap_or(u64::MAX),
        cap: ARITH_CAP,
    })?;

    let modulus = smallest_irreducible(p, m);
    let mut field = FiniteField {
        p,
        m,
        order,
        modulus,
        generator: 0,
        exp: Vec::new(),
        log: Vec::new(),
    };

    let unit_order = order - 1;
    let factors = prime_factors(unit_order);
    let generator = (1..order)
        .find(|&g| {
            let x = field.digits(g);
            factors.iter().all(|r| !field.poly_pow(&x, unit_order / r).is_one_poly())
        })
        .expect("the unit group of a finite field is cyclic");
    field.generator = generator as u32;

    let mut exp = Vec::with_capacity(unit_order as usize);
    let mut log = vec![0u32; order as usize];
    let g = field.digits(generator);
    let mut x = field.digits(1);
    for k in 0..unit_order {
        let idx = field.index(&x);
        exp.push(idx as u32);
        log[idx as usize] = k as u32;
        x = field.poly_mul(&x, &g);
    }
    debug_assert!(x.is_one_poly());
    field.exp = exp;
    field.log = log;
    Ok(field)
}

/// Fields are cached per `(p, m)`; descriptors are immutable once built.
pub fn shared_field(p: u64, m: u32) -> Result<Arc<FiniteField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<FiniteField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().expect("field cache poisoned").get(&(p, m)) {
        return Ok(f.clone());
    }
    let built = Arc::new(build_field(p, m)?);
    let mut guard = cache.lock().expect("field cache poisoned");
    Ok(guard.entry((p, m)).or_insert(built).clone())
}

fn checked_pow(p: u64, m: u32) -> Option<u64> {
    p.checked_pow(m)
}

trait PolyExt {
    fn is_one_poly(&self) -> bool;
}

impl PolyExt for Vec<u64> {
    fn is_one_poly(&self) -> bool {
        self.first() == Some(&1) && self[1..].iter().all(|&c| c == 0)
    }
}

/// Remainder of `a` modulo the monic polynomial `b` over `𝔽_p`.
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    while a.len() > db {
        let lead = a.pop().expect("nonempty");
        if lead == 0 {
            continue;
        }
        let shift = a.len() - db;
        for (j, &bj) in b[..db].iter().enumerate() {
            a[shift + j] = (a[shift + j] + (p - bj) * lead) % p;
        }
    }
    a
}

fn monic_from_index(p: u64, deg: u32, idx: u64) -> Vec<u64> {
    let mut c = Vec::with_capacity(deg as usize + 1);
    let mut r = idx;
    for _ in 0..deg {
        c.push(r % p);
        r /= p;
    }
    c.push(1);
    c
}

fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
    let count = p.pow(m);
    (0..count)
        .map(|idx| monic_from_index(p, m, idx))
        .find(|cand| is_irreducible(cand, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = (poly.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d) {
            let div = monic_from_index(p, d, idx);
            if poly_rem(poly.to_vec(), &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `|k| = p^m`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn unit_order(&self) -> u64 {
        self.order - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Index of the fixed multiplicative generator.
    pub fn generator_index(&self) -> u64 {
        self.generator as u64
    }

    fn digits(&self, mut idx: u64) -> Vec<u64> {
        let mut c = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            c.push(idx % self.p);
            idx /= self.p;
        }
        c
    }

    fn index(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = poly_rem(prod, &self.modulus, self.p);
        r.resize(self.m as usize, 0);
        r
    }

    fn poly_pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.digits(1);
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(&acc, &b);
            }
            b = self.poly_mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn zero(&self) -> FFElem<'_> {
        FFElem { field: self, coeffs: vec![0; self.m as usize] }
    }

    pub fn one(&self) -> FFElem<'_> {
        self.from_int(1)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FFElem<'_> {
        let mut coeffs = vec![0; self.m as usize];
        coeffs[0] = n.rem_euclid(self.p as i64) as u64;
        FFElem { field: self, coeffs }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FFElem<'_> {
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % self.p).collect();
        c.resize(self.m as usize, 0);
        if coeffs.len() > self.m as usize {
            c = poly_rem(coeffs.iter().map(|&x| x % self.p).collect(), &self.modulus, self.p);
            c.resize(self.m as usize, 0);
        }
        FFElem { field: self, coeffs: c }
    }

    pub fn from_index(&self, idx: u64) -> FFElem<'_> {
        FFElem { field: self, coeffs: self.digits(idx % self.order) }
    }

    pub fn generator(&self) -> FFElem<'_> {
        self.from_index(self.generator as u64)
    }

    /// `generator^k`, any integer `k`.
    pub fn gen_pow(&self, k: i64) -> FFElem<'_> {
        let n = self.unit_order() as i64;
        self.from_index(self.exp[k.rem_euclid(n) as usize] as u64)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem<'_>> + '_ {
        (0..self.order).map(move |i| self.from_index(i))
    }

    /// The Teichmüller exponent of a unit as a root of unity of order
    /// dividing `|k| - 1`.
    pub fn to_root(&self, x: &FFElem<'_>) -> Result<RootOfUnity> {
        Ok(RootOfUnity::new(discrete_log(x)?, self.unit_order()))
    }
}

impl<'f> FFElem<'f> {
    pub fn field(&self) -> &'f FiniteField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn index(&self) -> u64 {
        self.field.index(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FFElem<'f>) -> FFElem<'f> {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % p).collect();
        FFElem { field: self.field, coeffs }
    }

    pub fn scale(&self, k: u64) -> FFElem<'f> {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|a| a * (k % p) % p).collect();
        FFElem { field: self.field, coeffs }
    }

    /// Product computed by polynomial multiplication (not via the log table).
    pub fn mul(&self, other: &FFElem<'f>) -> FFElem<'f> {
        FFElem { field: self.field, coeffs: self.field.poly_mul(&self.coeffs, &other.coeffs) }
    }

    pub fn pow(&self, e: u64) -> FFElem<'f> {
        FFElem { field: self.field, coeffs: self.field.poly_pow(&self.coeffs, e) }
    }

    /// The value in the prime field, if the element lies there.
    pub fn as_prime_field(&self) -> Option<u64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }
}

/// The unique `k ∈ [0, p^m - 1)` with `generator^k = x`.
pub fn discrete_log(x: &FFElem<'_>) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::LogOfZero);
    }
    Ok(x.field.log[x.index() as usize] as u64)
}

/// `Tr_{𝔽_{p^m}/𝔽_p}(x) = Σ_{j<m} x^{p^j}`.
pub fn trace_to_prime(x: &FFElem<'_>) -> u64 {
    let field = x.field;
    let mut acc = field.zero();
    let mut y = x.clone();
    for _ in 0..field.m {
        acc = acc.add(&y);
        y = y.pow(field.p);
    }
    acc.as_prime_field().expect("the trace lies in the prime field")
}

/// Parity of `x ↦ u·x` on the whole field, where `u = generator^u_exponent`,
/// found by decomposing the permutation into cycles.
pub fn mult_perm_sign(field: &FiniteField, u_exponent: i64) -> Result<Sign> {
    if field.order > ENUM_CAP {
        return Err(Error::FieldTooLarge { order: field.order, cap: ENUM_CAP });
    }
    let u = field.gen_pow(u_exponent);
    let n = field.order as usize;
    let image: Vec<usize> = (0..field.order)
        .map(|i| u.mul(&field.from_index(i)).index() as usize)
        .collect();
    let mut seen = vec![false; n];
    let mut cycles = 0usize;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = image[j];
        }
    }
    Ok(if (n - cycles) % 2 == 0 { Sign::Plus } else { Sign::Minus })
}

/// Sign of multiplication by `generator^u_exponent` on a field with `order`
/// elements, read off its cycle type: an element of order `d` splits the
/// units into `(order-1)/d` cycles of length `d`.
pub fn perm_sign_by_cycle_type(order: &BigInt, u_exponent: &BigInt) -> Sign {
    let n: BigInt = order - 1;
    let g = u_exponent.mod_floor(&n).gcd(&n);
    let d: BigInt = &n / &g;
    let transpositions = (&d - 1) * &g;
    Sign::from_parity(&transpositions)
}

/// The quadratic character of the norm-one subgroup `k^1 ⊂ k^×`, where
/// `[k : k'] = 2` and `|k'| = qprime`, evaluated at `beta`.
pub fn norm_one_quad_char(qprime: &BigInt, beta: &RootOfUnity) -> Result<Sign> {
    let n: BigInt = qprime + 1;
    if !beta.order_divides(&n) {
        return Err(Error::NotNormOne { beta: beta.to_string(), qprime: qprime.clone() });
    }
    let half: BigInt = n / 2;
    Ok(beta.pow(half).as_sign().expect("beta^(Q'+1) = 1"))
}

/// Order of `p` modulo `n` over machine integers (`gcd(p, n) = 1`).
pub fn order_mod(p: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if p.gcd(&n) != 1 {
        return None;
    }
    let mut x = p % n;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * p as u128) % n as u128) as u64;
        k += 1;
        if k > n {
            return None;
        }
    }
    Some(k)
}

/// True if `x^{(Q-1)/r} ≠ 1` for every prime `r | Q-1`.
pub fn is_primitive_mod(g: u64, p: u64) -> bool {
    prime_factors(p - 1).iter().all(|r| pow_mod(g, (p - 1) / r, p) != 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::quad_char_cyclic;

    #[test]
    fn build_field_examples() {
        let f3 = build_field(3, 1).unwrap();
        assert_eq!(f3.generator_index(), 2);
        let f9 = build_field(3, 2).unwrap();
        let g = f9.generator();
        let orders: Vec<u64> = (1..=8).filter(|&k| g.pow(k).index() == 1).collect();
        assert_eq!(orders, vec![8]);
        let f5 = build_field(5, 1).unwrap();
        assert_eq!(f5.generator_index(), 2);
        assert!(build_field(2, 3).is_err());
        assert!(build_field(3, 13).is_err());
        assert_eq!(build_field(7, 3).unwrap(), build_field(7, 3).unwrap());
    }

    #[test]
    fn moduli_are_irreducible_by_root_count() {
        for (p, m) in [(3, 2), (3, 3), (5, 2), (7, 2), (3, 4)] {
            let f = build_field(p, m).unwrap();
            assert_eq!(f.modulus().len(), m as usize + 1);
            // no roots in the prime field
            for a in 0..p {
                let val = f.modulus().iter().rev().fold(0, |acc, &c| (acc * a + c) % p);
                assert_ne!(val, 0, "modulus of F_{p}^{m} has root {a}");
            }
        }
    }

    #[test]
    fn discrete_log_examples() {
        let f5 = build_field(5, 1).unwrap();
        assert_eq!(discrete_log(&f5.one()).unwrap(), 0);
        assert_eq!(discrete_log(&f5.generator()).unwrap(), 1);
        assert_eq!(discrete_log(&f5.from_int(4)).unwrap(), 2);
        assert_eq!(discrete_log(&f5.zero()), Err(Error::LogOfZero));
        let f27 = build_field(3, 3).unwrap();
        for x in f27.elements().skip(1) {
            let k = discrete_log(&x).unwrap();
            assert_eq!(f27.generator().pow(k), x);
        }
    }

    #[test]
    fn trace_examples() {
        let f9 = build_field(3, 2).unwrap();
        assert_eq!(trace_to_prime(&f9.zero()), 0);
        assert_eq!(trace_to_prime(&f9.one()), 2);
        let i = f9
            .elements()
            .find(|x| x.mul(x).index() == f9.from_int(-1).index())
            .unwrap();
        assert_eq!(trace_to_prime(&i), 0);
    }

    #[test]
    fn trace_linear_and_frobenius_invariant() {
        for (p, m) in [(3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (7, 2)] {
            let f = build_field(p, m).unwrap();
            let elems: Vec<_> = f.elements().collect();
            for x in &elems {
                assert_eq!(trace_to_prime(&x.pow(p)), trace_to_prime(x));
                for c in 0..p {
                    assert_eq!(trace_to_prime(&x.scale(c)), trace_to_prime(x) * c % p);
                }
            }
            for x in elems.iter().step_by(3) {
                for y in elems.iter().step_by(5) {
                    assert_eq!(
                        trace_to_prime(&x.add(y)),
                        (trace_to_prime(x) + trace_to_prime(y)) % p
                    );
                }
            }
        }
    }

    #[test]
    fn mult_perm_sign_examples() {
        let f7 = build_field(7, 1).unwrap();
        assert_eq!(mult_perm_sign(&f7, 0).unwrap(), Sign::Plus);
        assert_eq!(mult_perm_sign(&f7, 1).unwrap(), Sign::Minus);
        assert_eq!(mult_perm_sign(&f7, 2).unwrap(), Sign::Plus);
    }

    #[test]
    fn perm_sign_matches_quadratic_character_small() {
        for (p, m) in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (11, 1), (3, 3)] {
            let f = build_field(p, m).unwrap();
            let n = BigInt::from(f.unit_order());
            for j in 0..f.unit_order() as i64 {
                let closed = quad_char_cyclic(&n, &BigInt::from(j)).unwrap();
                assert_eq!(mult_perm_sign(&f, j).unwrap(), closed);
                assert_eq!(perm_sign_by_cycle_type(&BigInt::from(f.order()), &BigInt::from(j)), closed);
            }
        }
    }

    #[test]
    fn norm_one_examples() {
        assert_eq!(norm_one_quad_char(&BigInt::from(3), &RootOfUnity::one()).unwrap(), Sign::Plus);
        assert_eq!(
            norm_one_quad_char(&BigInt::from(3), &RootOfUnity::minus_one()).unwrap(),
            Sign::Plus
        );
        assert_eq!(
            norm_one_quad_char(&BigInt::from(5), &RootOfUnity::minus_one()).unwrap(),
            Sign::Minus
        );
        assert!(norm_one_quad_char(&BigInt::from(5), &RootOfUnity::new(1, 5)).is_err());
    }

    #[test]
    fn norm_one_multiplicative() {
        for qp in [3u64, 5, 7, 9, 11, 13, 25, 27] {
            let n = qp + 1;
            let qb = BigInt::from(qp);
            for a in 0..n {
                let x = RootOfUnity::new(a, n);
                let sx = norm_one_quad_char(&qb, &x).unwrap();
                assert_eq!(sx * sx, Sign::Plus);
                for b in 0..n {
                    let y = RootOfUnity::new(b, n);
                    let lhs = norm_one_quad_char(&qb, &x.mul(&y)).unwrap();
                    assert_eq!(lhs, sx * norm_one_quad_char(&qb, &y).unwrap());
                }
            }
        }
    }

    #[test]
    fn helpers() {
        assert_eq!(order_mod(3, 8), Some(2));
        assert_eq!(order_mod(3, 6), None);
        assert!(is_primitive_mod(3, 7));
        assert!(!is_primitive_mod(2, 7));
        assert!(Arc::ptr_eq(&shared_field(5, 2).unwrap(), &shared_field(5, 2).unwrap()));
    }
}
