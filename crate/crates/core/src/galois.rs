//! The Galois frame of a tame extension `E/F`: the group `⟨σ⟩ ⋊ ⟨φ⟩`, its
//! coset representatives `σ^kφ^i` modulo `Γ_E`, roots as ordered pairs of
//! cosets, and the classification of `Γ_F`-orbits of roots.
//!
//! `σ` fixes every root of unity and sends `ϖ_E` to `ζ_e ϖ_E`; `φ` acts as
//! `q`-th power on roots of unity and sends `ϖ_E` to `ζ_φ ϖ_E`, where
//! `ζ_φ^{(q^f-1)/(q-1)} = ζ_{E/F,e}^{q-1}` is fixed by `ϖ_E^e = ζ_{E/F} ϖ_F`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::{big_pow, is_prime, mul_order, pow_mod, RootOfUnity};
use crate::error::{Error, Result};

/// Largest `n = ef` accepted by [`enumerate_orbits`].
pub const MAX_DEGREE: u64 = 12;

/// Parameters of a tame extension `E/F` of degree `n = ef` over a field with
/// residue field of order `q = p^a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldDatum {
    pub p: u64,
    pub a: u32,
    pub e: u64,
    pub f: u64,
    /// Exponent of `ζ_{E/F}` over the fixed generator of `μ_E`, reduced mod `q^f - 1`.
    #[serde(serialize_with = "ser_big")]
    pub t: BigInt,
    pub q: u64,
    /// `c ≡ -t (mod e)`, so that `σ^cφ^f` generates `Γ_{L/E}`.
    pub c: u64,
    #[serde(skip)]
    mu_order: BigInt,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl FieldDatum {
    pub fn new(p: u64, a: u32, e: u64, f: u64, t: impl Into<BigInt>) -> Result<Self> {
        if p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if a == 0 || e == 0 || f == 0 {
            return Err(Error::InvalidDatum("a, e and f must be positive".into()));
        }
        if e % p == 0 {
            return Err(Error::InvalidDatum(format!("p = {p} divides e = {e}: not tame")));
        }
        let q = p
            .checked_pow(a)
            .ok_or_else(|| Error::InvalidDatum("q does not fit in 64 bits".into()))?;
        let mu_order = big_pow(q, f) - 1;
        let t = t.into().mod_floor(&mu_order);
        let c = (-&t).mod_floor(&BigInt::from(e)).to_u64().expect("c < e");
        let datum = FieldDatum { p, a, e, f, t, q, c, mu_order };

        // σ^cφ^f must fix ϖ_E (it fixes μ_E since q^f ≡ 1 mod q^f - 1)
        if !datum.raw_multiplier(c as i64, f).is_one() {
            return Err(Error::InvalidDatum("σ^cφ^f does not fix ϖ_E".into()));
        }
        Ok(datum)
    }

    /// `n = [E : F]`.
    pub fn n(&self) -> u64 {
        self.e * self.f
    }

    /// `|μ_E| = q^f - 1`.
    pub fn mu_order(&self) -> &BigInt {
        &self.mu_order
    }

    fn q_pow_mod_e(&self, i: i64) -> i64 {
        let e = self.e;
        if e == 1 {
            return 0;
        }
        if i >= 0 {
            pow_mod(self.q, i as u64, e) as i64
        } else {
            let inv = BigInt::from(self.q)
                .modpow(&BigInt::from(e_phi(e) - 1), &BigInt::from(e))
                .to_u64()
                .expect("inverse mod e");
            pow_mod(inv, i.unsigned_abs(), e) as i64
        }
    }

    /// Multiplier of `σ^kφ^i` on `ϖ_E` for `i ≥ 0`:
    /// `k/e + t(q^i - 1)/(e(q^f - 1))`.
    fn raw_multiplier(&self, k: i64, i: u64) -> RootOfUnity {
        let e = BigInt::from(self.e);
        let qi = big_pow(self.q, i) - 1;
        let num = BigInt::from(k) * &self.mu_order + &self.t * qi;
        RootOfUnity::new(num, e * &self.mu_order)
    }
}

/// Euler's totient, for inverting `q` modulo `e`.
fn e_phi(n: u64) -> u64 {
    crate::arith::prime_factors(n).iter().fold(n, |acc, p| acc / p * (p - 1))
}

/// A normalized coset representative `σ^kφ^i Γ_E` with `0 ≤ k < e`,
/// `0 ≤ i < f`. Ordered by `(i, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CosetRep {
    pub k: u64,
    pub i: u64,
}

impl CosetRep {
    pub const IDENTITY: CosetRep = CosetRep { k: 0, i: 0 };

    pub fn new(k: u64, i: u64) -> Self {
        CosetRep { k, i }
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.i == 0
    }
}

impl PartialOrd for CosetRep {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CosetRep {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.i, self.k).cmp(&(other.i, other.k))
    }
}

impl fmt::Display for CosetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.i) {
            (0, 0) => write!(f, "1"),
            (k, 0) => write!(f, "σ^{k}"),
            (0, i) => write!(f, "φ^{i}"),
            (k, i) => write!(f, "σ^{k}φ^{i}"),
        }
    }
}

/// The root `[g_src, g_dst] = δ_src − δ_dst`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    pub src: CosetRep,
    pub dst: CosetRep,
}

impl Root {
    pub fn new(src: CosetRep, dst: CosetRep) -> Self {
        Root { src, dst }
    }

    pub fn negate(&self) -> Root {
        Root { src: self.dst, dst: self.src }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.src, self.dst)
    }
}

/// Reduces `σ^{k_raw}φ^{i_raw}` to its normalized coset representative,
/// using `φ^fΓ_E = σ^{-c}Γ_E`.
pub fn normalize(datum: &FieldDatum, k_raw: i64, i_raw: i64) -> CosetRep {
    let e = datum.e as i64;
    let f = datum.f as i64;
    let c = datum.c as i64;
    let mut k = k_raw.rem_euclid(e);
    let mut i = i_raw;
    while i >= f {
        k = (k - c * datum.q_pow_mod_e(i - f)).rem_euclid(e);
        i -= f;
    }
    while i < 0 {
        k = (k + c * datum.q_pow_mod_e(i)).rem_euclid(e);
        i += f;
    }
    CosetRep { k: k as u64, i: i as u64 }
}

/// Product in `⟨σ⟩ ⋊ ⟨φ⟩`: `σ^{k1}φ^{i1}·σ^{k2}φ^{i2} = σ^{k1+q^{i1}k2}φ^{i1+i2}`,
/// with `σ`-exponents reduced mod `e`.
pub fn group_mul(datum: &FieldDatum, g1: (i64, i64), g2: (i64, i64)) -> (i64, i64) {
    let e = datum.e as i64;
    let k = (g1.0 + datum.q_pow_mod_e(g1.1) * g2.0).rem_euclid(e);
    (k, g1.1 + g2.1)
}

/// `g · (rep Γ_E)`.
pub fn left_act(datum: &FieldDatum, g: (i64, i64), rep: CosetRep) -> CosetRep {
    let (k, i) = group_mul(datum, g, (rep.k as i64, rep.i as i64));
    normalize(datum, k, i)
}

/// The root of unity `u` with `g(ϖ_E) = u·ϖ_E`.
pub fn unif_multiplier(datum: &FieldDatum, g: CosetRep) -> RootOfUnity {
    datum.raw_multiplier(g.k as i64, g.i)
}

/// Coset equality read off the action on `E = F[μ_E, ϖ_E]`: two elements
/// agree on `E` iff they act by the same power of Frobenius on `μ_E` and
/// move `ϖ_E` by the same root of unity.
pub fn same_coset(datum: &FieldDatum, a: (i64, u64), b: (i64, u64)) -> bool {
    (a.1 % datum.f == b.1 % datum.f)
        && datum.raw_multiplier(a.0, a.1) == datum.raw_multiplier(b.0, b.1)
}

/// All normalized coset representatives, ordered by `(i, k)`.
pub fn coset_reps(datum: &FieldDatum) -> Vec<CosetRep> {
    let mut v: Vec<CosetRep> = (0..datum.f)
        .flat_map(|i| (0..datum.e).map(move |k| CosetRep { k, i }))
        .collect();
    v.sort();
    v
}

/// Symmetry and ramification in the sense of Adler–DeBacker–Spice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootLabel {
    Asymmetric,
    Unramified,
    Ramified,
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootLabel::Asymmetric => "asymmetric",
            RootLabel::Unramified => "unramified",
            RootLabel::Ramified => "ramified",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitKind {
    Asymmetric { partner: CosetRep },
    SymUnramified,
    SymRamified,
}

impl OrbitKind {
    pub fn name(&self) -> &'static str {
        match self {
            OrbitKind::Asymmetric { .. } => "asymmetric",
            OrbitKind::SymUnramified => "sym_unramified",
            OrbitKind::SymRamified => "sym_ramified",
        }
    }

    pub fn is_symmetric(&self) -> bool {
        !matches!(self, OrbitKind::Asymmetric { .. })
    }
}

/// A `Γ_F`-orbit of roots with its numerical data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitClass {
    pub index: usize,
    /// `[1, g]` with `g` the smallest representative in `D`.
    pub representative: Root,
    pub kind: OrbitKind,
    pub ads_kind: RootLabel,
    pub tam_kind: RootLabel,
    pub size: u64,
    pub deg_f_alpha: u64,
    pub e_f_alpha: u64,
    pub f_f_alpha: u64,
    pub deg_f_pm_alpha: u64,
    /// `α(ϖ_E) = u^{-1}`.
    pub alpha_of_unif: RootOfUnity,
    /// `α(ζ) = ζ^{1 - q^i}`.
    #[serde(serialize_with = "ser_big")]
    pub alpha_unit_exponent_factor: BigInt,
    /// `u = g(ϖ_E)/ϖ_E`.
    pub unif_multiplier: RootOfUnity,
    /// The `r` with `g·(σ^cφ^f)^r·g ∈ Γ_E`, for symmetric orbits.
    pub xg_witness: Option<u64>,
    #[serde(skip)]
    pub members: Vec<Root>,
}

impl OrbitClass {
    /// The coset `g` of the representative `[1, g]`.
    pub fn g(&self) -> CosetRep {
        self.representative.dst
    }

    /// `|k_{F_α}| = q^{f_{F_α}}`.
    pub fn residue_order(&self, datum: &FieldDatum) -> BigInt {
        big_pow(datum.q, self.f_f_alpha)
    }

    /// For asymmetric orbits: is this the member of the pair `{α, −α}` that
    /// carries the pair's data?
    pub fn is_pair_leader(&self) -> bool {
        match self.kind {
            OrbitKind::Asymmetric { partner } => self.g() < partner,
            _ => true,
        }
    }
}

/// `α(γ)` for `γ = ζ^{unit_exponent}·ϖ_E^{valuation}`, which is always a unit.
pub fn alpha_value(
    datum: &FieldDatum,
    orbit: &OrbitClass,
    unit_exponent: &BigInt,
    valuation: &BigInt,
) -> RootOfUnity {
    let unit = RootOfUnity::new(unit_exponent * &orbit.alpha_unit_exponent_factor, datum.mu_order.clone());
    unit.mul(&orbit.alpha_of_unif.pow(valuation.clone()))
}

/// Searches `r ∈ [0, ord_{eN}(q^f))` for `g·(σ^cφ^f)^r·g ∈ Γ_E`.
pub fn find_xg(datum: &FieldDatum, g: CosetRep) -> Option<u64> {
    let modulus = BigInt::from(datum.e) * &datum.mu_order;
    let qf = big_pow(datum.q, datum.f);
    let bound = mul_order(&qf, &modulus, 1 << 20).expect("q is prime to eN");
    let gen = (datum.c as i64, datum.f as i64);
    let g_raw = (g.k as i64, g.i as i64);
    let mut x: (i64, i64) = (0, 0);
    for r in 0..bound {
        let prod = group_mul(datum, group_mul(datum, g_raw, x), g_raw);
        if normalize(datum, prod.0, prod.1).is_identity() {
            return Some(r);
        }
        x = group_mul(datum, x, gen);
    }
    None
}

/// Whether `τ = g·x_g` fixes the residue field of `F_α = E[u]`, i.e.
/// `q^{i+fr} ≡ 1` modulo `lcm(q^f - 1, order(u))`.
fn residue_fixed_by(datum: &FieldDatum, g: CosetRep, r: u64) -> bool {
    let d = datum.mu_order.lcm(unif_multiplier(datum, g).den());
    let exp = g.i + datum.f * r;
    BigInt::from(datum.q).modpow(&BigInt::from(exp), &d).is_one()
}

/// Whether `τ = g·x_g` fixes `μ_E`.
fn mu_e_fixed_by(datum: &FieldDatum, g: CosetRep, r: u64) -> bool {
    let exp = g.i + datum.f * r;
    BigInt::from(datum.q).modpow(&BigInt::from(exp), &datum.mu_order).is_one()
}

/// Partitions the `n² − n` roots into `Γ_F`-orbits and classifies each one,
/// cross-checking the brute-force symmetry test against the `x_g`
/// criterion and the closed-form descriptions.
pub fn enumerate_orbits(datum: &FieldDatum) -> Result<Vec<OrbitClass>> {
    let n = datum.n();
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge { n, cap: MAX_DEGREE });
    }
    let reps = coset_reps(datum);
    let mut orbit_of: BTreeMap<Root, usize> = BTreeMap::new();
    let mut orbits: Vec<Vec<Root>> = Vec::new();
    let generators = [(1i64, 0i64), (0, 1)];
    for &a in &reps {
        for &b in &reps {
            if a == b {
                continue;
            }
            let root = Root::new(a, b);
            if orbit_of.contains_key(&root) {
                continue;
            }
            let id = orbits.len();
            let mut members = vec![root];
            orbit_of.insert(root, id);
            let mut queue = VecDeque::from([root]);
            while let Some(r) = queue.pop_front() {
                for &g in &generators {
                    let img = Root::new(left_act(datum, g, r.src), left_act(datum, g, r.dst));
                    if !orbit_of.contains_key(&img) {
                        orbit_of.insert(img, id);
                        members.push(img);
                        queue.push_back(img);
                    }
                }
            }
            members.sort();
            orbits.push(members);
        }
    }

    let mut with_rep: Vec<(CosetRep, Vec<Root>)> = orbits
        .into_iter()
        .map(|members| {
            let g = members
                .iter()
                .filter(|r| r.src.is_identity())
                .map(|r| r.dst)
                .min()
                .expect("Γ_F is transitive on cosets");
            (g, members)
        })
        .collect();
    with_rep.sort_by_key(|(g, _)| *g);
    let rep_of_orbit: Vec<CosetRep> = with_rep.iter().map(|(g, _)| *g).collect();
    let orbit_index: BTreeMap<Root, usize> = with_rep
        .iter()
        .enumerate()
        .flat_map(|(idx, (_, members))| members.iter().map(move |r| (*r, idx)))
        .collect();

    let mut out = Vec::with_capacity(with_rep.len());
    for (index, (g, members)) in with_rep.into_iter().enumerate() {
        let root = Root::new(CosetRep::IDENTITY, g);
        let neg_idx = orbit_index[&root.negate()];
        let symmetric_bf = neg_idx == index;
        let xg = find_xg(datum, g);
        if symmetric_bf != xg.is_some() {
            return Err(Error::SymmetryDisagreement {
                rep: g.to_string(),
                detail: format!("orbit test says {symmetric_bf}, x_g search says {}", xg.is_some()),
            });
        }

        let u = unif_multiplier(datum, g);
        let d = datum.mu_order.lcm(u.den());
        let f_f_alpha = mul_order(&BigInt::from(datum.q), &d, 1 << 32).expect("q is prime to d");
        let deg = members.len() as u64;
        if deg != datum.e * f_f_alpha {
            return Err(Error::Inconsistency(format!(
                "orbit [1, {g}] has size {deg} but e·f(F_α/F) = {}·{f_f_alpha}",
                datum.e
            )));
        }

        let half_e = (datum.e % 2 == 0).then_some(datum.e / 2);
        let closed_ramified = g.i == 0 && Some(g.k) == half_e;
        let (kind, ads_kind, tam_kind) = match xg {
            None => {
                let partner = rep_of_orbit[neg_idx];
                (OrbitKind::Asymmetric { partner }, RootLabel::Asymmetric, RootLabel::Asymmetric)
            }
            Some(r) => {
                let ramified = residue_fixed_by(datum, g, r);
                if ramified != closed_ramified {
                    return Err(Error::SymmetryDisagreement {
                        rep: g.to_string(),
                        detail: format!(
                            "residue test says ramified = {ramified}, closed form says {closed_ramified}"
                        ),
                    });
                }
                if !ramified && !(g.i == 0 || 2 * g.i == datum.f) {
                    return Err(Error::SymmetryDisagreement {
                        rep: g.to_string(),
                        detail: "symmetric unramified root with i ∉ {0, f/2}".into(),
                    });
                }
                let tam_ramified = mu_e_fixed_by(datum, g, r);
                if tam_ramified != (g.i == 0) {
                    return Err(Error::SymmetryDisagreement {
                        rep: g.to_string(),
                        detail: "Tam label disagrees with the table".into(),
                    });
                }
                let tam = if tam_ramified { RootLabel::Ramified } else { RootLabel::Unramified };
                if ramified {
                    (OrbitKind::SymRamified, RootLabel::Ramified, tam)
                } else {
                    (OrbitKind::SymUnramified, RootLabel::Unramified, tam)
                }
            }
        };

        let alpha_unit_exponent_factor = BigInt::one() - big_pow(datum.q, g.i);
        out.push(OrbitClass {
            index,
            representative: root,
            kind,
            ads_kind,
            tam_kind,
            size: deg,
            deg_f_alpha: deg,
            e_f_alpha: datum.e,
            f_f_alpha,
            deg_f_pm_alpha: if kind.is_symmetric() { deg / 2 } else { deg },
            alpha_of_unif: u.inv(),
            alpha_unit_exponent_factor,
            unif_multiplier: u,
            xg_witness: xg,
            members,
        });
    }

    let total: u64 = out.iter().map(|o| o.size).sum();
    if total != n * n - n {
        return Err(Error::Inconsistency(format!("orbit sizes sum to {total}, expected {}", n * n - n)));
    }
    Ok(out)
}

/// Finds the orbit containing `[1, g]`.
pub fn orbit_containing<'a>(orbits: &'a [OrbitClass], g: CosetRep) -> Option<&'a OrbitClass> {
    let root = Root::new(CosetRep::IDENTITY, g);
    orbits.iter().find(|o| o.members.binary_search(&root).is_ok())
}

/// `k·(1 + q^{fr}) mod e`, the symmetric-ramified congruence for `g = σ^k`.
pub fn ramified_congruence(datum: &FieldDatum, k: u64, r: u64) -> u64 {
    let qfr = pow_mod(datum.q, datum.f * r, datum.e);
    (k as u128 * (1 + qfr as u128) % datum.e as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn d(q: u64, e: u64, f: u64, t: i64) -> FieldDatum {
        let p = crate::arith::prime_factors(q)[0];
        let mut a = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            a += 1;
        }
        FieldDatum::new(p, a, e, f, t).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&d(3, 4, 1, 0), 0, 0), CosetRep::new(0, 0));
        assert_eq!(normalize(&d(3, 4, 1, 0), 0, 1), CosetRep::new(0, 0));
        assert_eq!(normalize(&d(3, 2, 1, 1), 0, 1), CosetRep::new(1, 0));
    }

    #[test]
    fn left_act_examples() {
        let dt = d(3, 4, 1, 0);
        for rep in coset_reps(&dt) {
            assert_eq!(left_act(&dt, (0, 0), rep), rep);
        }
        assert_eq!(left_act(&dt, (1, 0), CosetRep::new(2, 0)), CosetRep::new(3, 0));
        let dt = d(3, 4, 2, 0);
        assert_eq!(left_act(&dt, (0, 1), CosetRep::new(1, 0)), CosetRep::new(3, 1));
    }

    #[test]
    fn unif_multiplier_examples() {
        assert!(unif_multiplier(&d(3, 2, 1, 0), CosetRep::IDENTITY).is_one());
        assert_eq!(unif_multiplier(&d(3, 2, 1, 0), CosetRep::new(1, 0)), RootOfUnity::new(1, 2));
        assert_eq!(unif_multiplier(&d(3, 4, 2, 1), CosetRep::new(0, 1)), RootOfUnity::new(1, 16));
    }

    #[test]
    fn right_multiplication_by_gamma_e_is_trivial() {
        for (q, e, f, t) in [(3, 4, 2, 1), (5, 2, 3, 1), (7, 3, 2, 0), (3, 2, 5, 1)] {
            let dt = d(q, e, f, t);
            for rep in coset_reps(&dt) {
                let (k, i) = group_mul(&dt, (rep.k as i64, rep.i as i64), (dt.c as i64, f as i64));
                assert_eq!(normalize(&dt, k, i), rep);
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let o = enumerate_orbits(&d(3, 2, 1, 0)).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].kind, OrbitKind::SymRamified);
        assert_eq!(o[0].g(), CosetRep::new(1, 0));

        let o = enumerate_orbits(&d(3, 1, 2, 0)).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].kind, OrbitKind::SymUnramified);
        assert_eq!(o[0].g(), CosetRep::new(0, 1));

        let o = enumerate_orbits(&d(3, 4, 1, 0)).unwrap();
        assert_eq!(o.len(), 2);
        assert_eq!(o[0].g(), CosetRep::new(1, 0));
        assert_eq!(o[0].kind, OrbitKind::SymUnramified);
        assert_eq!((o[0].ads_kind, o[0].tam_kind), (RootLabel::Unramified, RootLabel::Ramified));
        assert_eq!((o[0].size, o[0].e_f_alpha, o[0].f_f_alpha), (8, 4, 2));
        assert_eq!(o[1].g(), CosetRep::new(2, 0));
        assert_eq!(o[1].kind, OrbitKind::SymRamified);
        assert_eq!(o[1].size, 4);
    }

    #[test]
    fn asymmetric_pair() {
        let o = enumerate_orbits(&d(7, 3, 1, 0)).unwrap();
        assert_eq!(o.len(), 2);
        assert_eq!(o[0].kind, OrbitKind::Asymmetric { partner: CosetRep::new(2, 0) });
        assert_eq!(o[1].kind, OrbitKind::Asymmetric { partner: CosetRep::new(1, 0) });
        assert!(o[0].is_pair_leader() && !o[1].is_pair_leader());
    }

    #[test]
    fn alpha_value_examples() {
        let dt = d(3, 4, 1, 0);
        let o = enumerate_orbits(&dt).unwrap();
        assert!(alpha_value(&dt, &o[0], &BigInt::from(1), &BigInt::zero()).is_one());

        let dt = d(3, 1, 2, 0);
        let o = enumerate_orbits(&dt).unwrap();
        assert_eq!(alpha_value(&dt, &o[0], &BigInt::from(1), &BigInt::zero()), RootOfUnity::new(-2, 8));

        let dt = d(3, 2, 1, 0);
        let o = enumerate_orbits(&dt).unwrap();
        assert_eq!(alpha_value(&dt, &o[0], &BigInt::zero(), &BigInt::one()), RootOfUnity::minus_one());
    }

    #[test]
    fn ramified_witness_satisfies_congruence() {
        for (q, e, f, t) in [(3, 2, 1, 0), (3, 4, 2, 1), (5, 6, 1, 1), (7, 4, 2, 0), (5, 8, 1, 1)] {
            let dt = d(q, e, f, t);
            let o = enumerate_orbits(&dt).unwrap();
            let ram: Vec<_> = o.iter().filter(|x| x.kind == OrbitKind::SymRamified).collect();
            assert_eq!(ram.len(), 1);
            let r = ram[0].xg_witness.unwrap();
            assert_eq!(ramified_congruence(&dt, ram[0].g().k, r), 0);
        }
    }

    #[test]
    fn rejects_wild_and_even() {
        assert!(FieldDatum::new(3, 1, 3, 1, 0).is_err());
        assert!(FieldDatum::new(2, 1, 1, 1, 0).is_err());
        assert!(enumerate_orbits(&d(3, 13, 1, 0)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn normalize_agrees_with_action_on_e(
            (q, e, f) in prop_oneof![Just((3u64, 4u64, 2u64)), Just((5, 3, 2)), Just((7, 2, 3)), Just((3, 5, 1)), Just((5, 6, 1))],
            t in 0i64..20,
            k in -30i64..30,
            i in 0i64..12,
        ) {
            let dt = d(q, e, f, t);
            let rep = normalize(&dt, k, i);
            prop_assert!(rep.k < e && rep.i < f);
            prop_assert!(same_coset(&dt, (k, i as u64), (rep.k as i64, rep.i)));
        }

        #[test]
        fn negative_exponents_invert(
            (q, e, f) in prop_oneof![Just((3u64, 4u64, 2u64)), Just((5, 3, 2)), Just((7, 2, 3))],
            t in 0i64..20,
            k in 0i64..12,
            i in 0i64..6,
        ) {
            // g · g^{-1} Γ_E = Γ_E with g^{-1} = σ^{-q^{-i}k} φ^{-i}
            let dt = d(q, e, f, t);
            let kinv = -(dt.q_pow_mod_e(-i) * k);
            let (kk, ii) = group_mul(&dt, (k, i), (kinv, -i));
            prop_assert!(normalize(&dt, kk, ii).is_identity());
        }
    }
}
