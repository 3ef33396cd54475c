//! Exact arithmetic substrate: roots of unity as elements of ℚ/ℤ, signs,
//! Jacobi symbols, quadratic characters of cyclic groups and the ring
//! ℤ[ζ_p].

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A root of unity `exp(2πi·num/den)`, stored as a reduced fraction in ℚ/ℤ.
///
/// Multiplication of roots of unity is addition of exponents, so every
/// identity between character values reduces to exact fraction arithmetic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: BigInt,
    den: BigInt,
}

impl RootOfUnity {
    /// Builds `num/den mod 1`. Panics if `den` is not positive.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let num = num.into();
        let den = den.into();
        assert!(den.is_positive(), "root of unity needs a positive denominator");
        Self::reduce(num, den)
    }

    fn reduce(num: BigInt, den: BigInt) -> Self {
        let num = num.mod_floor(&den);
        if num.is_zero() {
            return Self::one();
        }
        let g = num.gcd(&den);
        RootOfUnity { num: num / &g, den: den / g }
    }

    pub fn one() -> Self {
        RootOfUnity { num: BigInt::zero(), den: BigInt::one() }
    }

    /// The root of unity `-1`.
    pub fn minus_one() -> Self {
        Self::new(1, 2)
    }

    /// `i`, the exponent `1/4`.
    pub fn i() -> Self {
        Self::new(1, 4)
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    /// Multiplicative order; equals the reduced denominator.
    pub fn order(&self) -> &BigInt {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num.is_zero()
    }

    /// Product of roots of unity (sum of exponents mod 1).
    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let den = self.den.lcm(&other.den);
        let num = &self.num * (&den / &self.den) + &other.num * (&den / &other.den);
        Self::reduce(num, den)
    }

    /// `self^n`, negative `n` allowed.
    pub fn pow(&self, n: impl Into<BigInt>) -> RootOfUnity {
        let n: BigInt = n.into();
        Self::reduce(&self.num * n, self.den.clone())
    }

    pub fn inv(&self) -> RootOfUnity {
        self.pow(-1)
    }

    /// True when the order divides `n`.
    pub fn order_divides(&self, n: &BigInt) -> bool {
        (n % &self.den).is_zero()
    }

    /// Interprets the value as a sign if it is `±1`.
    pub fn as_sign(&self) -> Option<Sign> {
        if self.is_one() {
            Some(Sign::Plus)
        } else if self.den == BigInt::from(2) {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    /// Value of the unique quadratic character of a cyclic group of order
    /// `group_order` containing `self`: `self^(group_order/2)`.
    pub fn quadratic_value(&self, group_order: &BigInt) -> Result<Sign> {
        if group_order.is_odd() || !group_order.is_positive() {
            return Err(Error::OddGroupOrder(group_order.clone()));
        }
        if !self.order_divides(group_order) {
            return Err(Error::NotInSubgroup {
                value: self.to_string(),
                order: group_order.clone(),
            });
        }
        let half: BigInt = group_order / 2;
        Ok(self.pow(half).as_sign().expect("square of the value is 1"))
    }

    /// Floating-point value `(cos, sin)`; only used for numeric cross-checks.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let x = self.num.to_f64().unwrap_or(0.0) / self.den.to_f64().unwrap_or(1.0);
        num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x)
    }
}

impl Default for RootOfUnity {
    fn default() -> Self {
        Self::one()
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootOfUnity({}/{})", self.num, self.den)
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Mul for &RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, rhs: &RootOfUnity) -> RootOfUnity {
        RootOfUnity::mul(self, rhs)
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        RootOfUnity::mul(&self, &rhs)
    }
}

/// `x·y` in the multiplicative notation of the roots of unity.
pub fn qz_mul(x: &RootOfUnity, y: &RootOfUnity) -> RootOfUnity {
    x.mul(y)
}

/// `x^n`.
pub fn qz_pow(x: &RootOfUnity, n: impl Into<BigInt>) -> RootOfUnity {
    x.pow(n)
}

/// A value in `{+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn from_parity(exponent: &BigInt) -> Sign {
        if exponent.is_even() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_root(self) -> RootOfUnity {
        match self {
            Sign::Plus => RootOfUnity::one(),
            Sign::Minus => RootOfUnity::minus_one(),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Jacobi symbol `(m/n)` for odd positive `n`; `(m/1) = 1`.
pub fn jacobi(m: &BigInt, n: &BigInt) -> Result<i8> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::BadJacobiModulus(n.clone()));
    }
    let mut a = m.mod_floor(n);
    let mut n = n.clone();
    let mut acc: i8 = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let r = &n % &eight;
        if tz % 2 == 1 && (r == three || r == five) {
            acc = -acc;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == three && (&n % 4u32) == three {
            acc = -acc;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { acc } else { 0 })
}

/// Convenience wrapper over machine integers.
pub fn jacobi_i64(m: i64, n: i64) -> Result<i8> {
    jacobi(&BigInt::from(m), &BigInt::from(n))
}

/// Value of the nontrivial quadratic character of a cyclic group of even
/// order at `generator^exponent`.
pub fn quad_char_cyclic(order: &BigInt, exponent: &BigInt) -> Result<Sign> {
    if order.is_odd() || !order.is_positive() {
        return Err(Error::OddGroupOrder(order.clone()));
    }
    Ok(Sign::from_parity(exponent))
}

/// An element of ℤ[ζ_p] in the basis `1, ζ, …, ζ^{p-2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 3 && p % 2 == 1, "ℤ[ζ_p] needs an odd prime p");
        CyclotomicInt { p, coeffs: vec![BigInt::zero(); (p - 1) as usize] }
    }

    pub fn from_integer(p: u32, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = n.into();
        z
    }

    /// `ζ_p^j` for any integer `j`.
    pub fn zeta_pow(p: u32, j: i64) -> Self {
        let mut acc = vec![BigInt::zero(); p as usize];
        acc[j.rem_euclid(p as i64) as usize] = BigInt::one();
        Self::from_power_coeffs(p, acc)
    }

    /// Builds the element `Σ c_j ζ^j` from coefficients indexed by
    /// exponents `0..p`, reducing `ζ^{p-1} = -(1 + ζ + … + ζ^{p-2})`.
    pub fn from_power_coeffs(p: u32, mut c: Vec<BigInt>) -> Self {
        let p_us = p as usize;
        assert_eq!(c.len(), p_us);
        let top = c.pop().expect("p >= 3");
        for x in c.iter_mut() {
            *x -= &top;
        }
        debug_assert_eq!(c.len(), p_us - 1);
        CyclotomicInt { p, coeffs: c }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The integer value if the element lies in ℤ.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &CyclotomicInt) -> Result<CyclotomicInt> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclotomicInt { p: self.p, coeffs })
    }

    pub fn sub(&self, other: &CyclotomicInt) -> Result<CyclotomicInt> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CyclotomicInt { p: self.p, coeffs })
    }

    pub fn scale(&self, k: &BigInt) -> CyclotomicInt {
        CyclotomicInt { p: self.p, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Exact product in ℤ[ζ_p].
    pub fn mul(&self, other: &CyclotomicInt) -> Result<CyclotomicInt> {
        self.check_same(other)?;
        let p = self.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % p] += a * b;
            }
        }
        Ok(Self::from_power_coeffs(self.p, acc))
    }

    fn check_same(&self, other: &CyclotomicInt) -> Result<()> {
        if self.p != other.p {
            return Err(Error::CyclotomicMismatch(self.p, other.p));
        }
        Ok(())
    }

    /// Floating-point embedding with `ζ_p = exp(2πi/p)`.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let p = self.p as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let w = num_complex::Complex64::from_polar(
                    1.0,
                    2.0 * std::f64::consts::PI * j as f64 / p,
                );
                w * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }
}

/// `cyc_mul` from the operation list: exact multiplication in ℤ[ζ_p].
pub fn cyc_mul(x: &CyclotomicInt, y: &CyclotomicInt) -> Result<CyclotomicInt> {
    x.mul(y)
}

/// Multiplicative order of `base` modulo `modulus`, if it exists and is at
/// most `limit`.
pub fn mul_order(base: &BigInt, modulus: &BigInt, limit: u64) -> Option<u64> {
    if modulus.is_one() {
        return Some(1);
    }
    let b = base.mod_floor(modulus);
    if !b.gcd(modulus).is_one() {
        return None;
    }
    let mut x = b.clone();
    for k in 1..=limit {
        if x.is_one() {
            return Some(k);
        }
        x = (x * &b) % modulus;
    }
    None
}

/// `q^k` as a big integer.
pub fn big_pow(q: u64, k: u64) -> BigInt {
    num_traits::pow(BigInt::from(q), k as usize)
}

/// 2-adic valuation and odd part of a positive integer.
pub fn split_two_power(n: u64) -> (u32, u64) {
    assert!(n > 0);
    let l = n.trailing_zeros();
    (l, n >> l)
}

/// Distinct prime factors of `n` by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == vec![n]
}

/// Modular exponentiation over machine integers.
pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = (base as u128) % m;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}
