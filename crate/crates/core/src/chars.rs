//! Tamely ramified characters of `E^×` and the three families attached to a
//! root orbit: the DeBacker–Spice sign `ε_α`, Kaletha's `χ_Kal,α` and Tam's
//! `χ_Tam,α`, together with the per-orbit and aggregate comparison checks.
//!
//! A tamely ramified character is trivial on `1 + 𝔭_E`, so it is pinned by
//! its values on the fixed generator `ζ` of `μ_E` and on `ϖ_E`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{big_pow, jacobi, mul_order, pow_mod, quad_char_cyclic, RootOfUnity, Sign};
use crate::error::{Error, Result};
use crate::ffield::{
    discrete_log, mult_perm_sign, norm_one_quad_char, perm_sign_by_cycle_type, shared_field,
    ARITH_CAP, ENUM_CAP,
};
use crate::galois::{alpha_value, FieldDatum, OrbitClass, OrbitKind};
use crate::gauss::{lambda_quad_ramified_with, minus_one_symbol, normalized_gauss, AdditiveCharSpec, Multiplier};
use crate::strata::{stratum_of, sym_ram_data, StratumInfo, SymRamData, TowerScenario};

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// A character of `E^×` trivial on `1 + 𝔭_E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameCharacter {
    /// `q^f`, so that `μ_E` has order `q^f − 1`.
    #[serde(serialize_with = "ser_big")]
    pub residue_order: BigInt,
    pub on_mu_gen: RootOfUnity,
    pub on_unif: RootOfUnity,
}

impl TameCharacter {
    pub fn new(residue_order: BigInt, on_mu_gen: RootOfUnity, on_unif: RootOfUnity) -> Result<Self> {
        let n: BigInt = &residue_order - 1;
        if !on_mu_gen.order_divides(&n) {
            return Err(Error::NotInSubgroup { value: on_mu_gen.to_string(), order: n });
        }
        Ok(TameCharacter { residue_order, on_mu_gen, on_unif })
    }

    pub fn trivial(residue_order: BigInt) -> Self {
        TameCharacter { residue_order, on_mu_gen: RootOfUnity::one(), on_unif: RootOfUnity::one() }
    }

    fn from_signs(residue_order: BigInt, on_mu_gen: Sign, on_unif: Sign) -> Self {
        TameCharacter { residue_order, on_mu_gen: on_mu_gen.to_root(), on_unif: on_unif.to_root() }
    }

    pub fn is_trivial(&self) -> bool {
        self.on_mu_gen.is_one() && self.on_unif.is_one()
    }

    /// Value at `ζ^unit_exponent · ϖ_E^valuation · (1 + 𝔭_E)`.
    pub fn eval(&self, unit_exponent: &BigInt, valuation: &BigInt) -> RootOfUnity {
        self.on_mu_gen.pow(unit_exponent.clone()).mul(&self.on_unif.pow(valuation.clone()))
    }

    pub fn mul(&self, other: &TameCharacter) -> TameCharacter {
        TameCharacter {
            residue_order: self.residue_order.clone(),
            on_mu_gen: self.on_mu_gen.mul(&other.on_mu_gen),
            on_unif: self.on_unif.mul(&other.on_unif),
        }
    }

    pub fn inv(&self) -> TameCharacter {
        TameCharacter {
            residue_order: self.residue_order.clone(),
            on_mu_gen: self.on_mu_gen.inv(),
            on_unif: self.on_unif.inv(),
        }
    }
}

/// Kaletha's character in the symmetric ramified case, known only on `μ_E`
/// and at the element `2a_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeValues {
    pub on_mu_gen: RootOfUnity,
    pub at_2a_alpha: RootOfUnity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum KalCharacter {
    Full(TameCharacter),
    Probe(ProbeValues),
}

/// Outcome of one independent cross-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub name: &'static str,
    pub passed: bool,
}

fn oracle(name: &'static str, passed: bool) -> OracleCheck {
    OracleCheck { name, passed }
}

fn residue_order(datum: &FieldDatum) -> BigInt {
    datum.mu_order() + 1
}

/// `(α(ζ), α(ϖ_E))` for the representative of `orbit`.
fn alpha_pair(datum: &FieldDatum, orbit: &OrbitClass) -> (RootOfUnity, RootOfUnity) {
    let (one, zero) = (BigInt::one(), BigInt::zero());
    (alpha_value(datum, orbit, &one, &zero), alpha_value(datum, orbit, &zero, &one))
}

/// `√|k_{F_α}|` for a symmetric unramified orbit.
fn half_residue_order(datum: &FieldDatum, orbit: &OrbitClass) -> Result<BigInt> {
    if orbit.f_f_alpha % 2 != 0 {
        return Err(Error::Inconsistency(format!(
            "symmetric unramified orbit {} has odd residue degree {}",
            orbit.index, orbit.f_f_alpha
        )));
    }
    Ok(big_pow(datum.q, orbit.f_f_alpha / 2))
}

/// Sign of multiplication by `x` on `𝔽_{p^m}`, where `x` is read as a power
/// of the field's generator. Small fields are enumerated and compared with
/// the cycle-type count; the flag reports that comparison.
pub fn perm_sign_of(p: u64, m: u32, x: &RootOfUnity) -> Result<(Sign, Option<bool>)> {
    let order = big_pow(p, m as u64);
    let units: BigInt = &order - 1;
    if !x.order_divides(&units) {
        return Err(Error::NotInSubgroup { value: x.to_string(), order: units });
    }
    let exponent = (x.num() * (&units / x.den())).mod_floor(&units);
    let by_type = perm_sign_by_cycle_type(&order, &exponent);
    if order <= BigInt::from(ENUM_CAP) {
        let field = shared_field(p, m)?;
        let exp = exponent.to_i64().expect("exponent below the enumeration cap");
        let brute = mult_perm_sign(&field, exp)?;
        return Ok((brute, Some(brute == by_type)));
    }
    Ok((by_type, None))
}

/// `ε_α` for an asymmetric or symmetric unramified orbit; trivial when
/// `𝔙_{[g]} = 0`.
pub fn epsilon_alpha(datum: &FieldDatum, orbit: &OrbitClass, stratum: &StratumInfo) -> Result<TameCharacter> {
    let ro = residue_order(datum);
    if !stratum.v_nonzero {
        return Ok(TameCharacter::trivial(ro));
    }
    let (at_mu, at_unif) = alpha_pair(datum, orbit);
    match orbit.kind {
        OrbitKind::Asymmetric { .. } => {
            let units: BigInt = orbit.residue_order(datum) - 1;
            Ok(TameCharacter::from_signs(
                ro,
                at_mu.quadratic_value(&units)?,
                at_unif.quadratic_value(&units)?,
            ))
        }
        OrbitKind::SymUnramified => {
            let qprime = half_residue_order(datum, orbit)?;
            Ok(TameCharacter::from_signs(
                ro,
                norm_one_quad_char(&qprime, &at_mu)?,
                norm_one_quad_char(&qprime, &at_unif)?,
            ))
        }
        OrbitKind::SymRamified => Ok(TameCharacter::trivial(ro)),
    }
}

/// The residue character of `ψ_{K_{l-1}}`, obtained from the canonical one
/// on `k_E` through the ramification index `e(K_{l-1}/F)`.
pub fn k_below_char(datum: &FieldDatum, symram: &SymRamData) -> AdditiveCharSpec {
    AdditiveCharSpec::with_multiplier(
        datum.p,
        datum.a * datum.f as u32,
        Multiplier::Integer(symram.e_k_below() as i64),
    )
}

/// Kaletha's χ-data restricted to `E^×`.
pub fn chi_kal(
    datum: &FieldDatum,
    orbit: &OrbitClass,
    symram: Option<&SymRamData>,
) -> Result<KalCharacter> {
    let ro = residue_order(datum);
    match orbit.kind {
        OrbitKind::Asymmetric { .. } => Ok(KalCharacter::Full(TameCharacter::trivial(ro))),
        OrbitKind::SymUnramified => Ok(KalCharacter::Full(TameCharacter::from_signs(ro, Sign::Plus, Sign::Minus))),
        OrbitKind::SymRamified => {
            let data = symram.ok_or(Error::MissingSymRam)?;
            Ok(KalCharacter::Probe(ProbeValues {
                on_mu_gen: RootOfUnity::minus_one(),
                at_2a_alpha: lambda_quad_ramified_with(&k_below_char(datum, data), data.m)?,
            }))
        }
    }
}

/// Tam's χ-data restricted to `E^×`; for an asymmetric orbit this is the
/// product over the pair `{α, α'}`.
pub fn chi_tam(
    datum: &FieldDatum,
    orbit: &OrbitClass,
    stratum: &StratumInfo,
    symram: Option<&SymRamData>,
) -> Result<(TameCharacter, Vec<OracleCheck>)> {
    let ro = residue_order(datum);
    let mut checks = Vec::new();
    let character = match orbit.kind {
        OrbitKind::Asymmetric { .. } => {
            if !stratum.v_nonzero {
                TameCharacter::trivial(ro)
            } else {
                let (at_mu, at_unif) = alpha_pair(datum, orbit);
                let m = datum.a * orbit.f_f_alpha as u32;
                let (mu_sign, mu_flag) = perm_sign_of(datum.p, m, &at_mu)?;
                let (unif_sign, unif_flag) = perm_sign_of(datum.p, m, &at_unif)?;
                for flag in [mu_flag, unif_flag].into_iter().flatten() {
                    checks.push(oracle("perm_sign_cycle_type", flag));
                }
                TameCharacter::from_signs(ro, mu_sign, unif_sign)
            }
        }
        OrbitKind::SymUnramified => {
            let (mu_sign, unif_sign) = sym_unram_tam(datum, orbit, stratum, &mut checks)?;
            TameCharacter::from_signs(ro, mu_sign, unif_sign)
        }
        OrbitKind::SymRamified => return chi_tam_ramified(datum, symram.ok_or(Error::MissingSymRam)?),
    };
    Ok((character, checks))
}

/// Tam's character at the symmetric ramified orbit, which depends only on
/// the datum and the tower data.
pub fn chi_tam_ramified(datum: &FieldDatum, data: &SymRamData) -> Result<(TameCharacter, Vec<OracleCheck>)> {
    let mut checks = Vec::new();
    let on_unif = sym_ram_tam_unif(datum, data, &mut checks)?;
    Ok((TameCharacter::new(residue_order(datum), RootOfUnity::minus_one(), on_unif)?, checks))
}

fn sym_unram_tam(
    datum: &FieldDatum,
    orbit: &OrbitClass,
    stratum: &StratumInfo,
    checks: &mut Vec<OracleCheck>,
) -> Result<(Sign, Sign)> {
    if !stratum.v_nonzero {
        return Ok((Sign::Plus, Sign::Minus));
    }
    let g = orbit.g();
    let at_half = 2 * g.i == datum.f;
    let mu_sign = if at_half { Sign::Minus } else { Sign::Plus };
    let beta = orbit.alpha_of_unif.clone();
    let beta_sign = beta.as_sign();

    if at_half && orbit.f_f_alpha % datum.f == 0 {
        let r = orbit.f_f_alpha / datum.f;
        if r % 2 == 1 {
            checks.push(oracle("exponent_congruence", exponent_congruence(datum.q, datum.f, r)));
            checks.push(oracle("mod4_congruence", mod4_congruence(datum.q, datum.f, r)));
        }
    }

    let t0_mu = if at_half && beta_sign == Some(Sign::Plus) { Sign::Minus } else { Sign::Plus };
    let t0_unif = if at_half && beta_sign.is_some() { Sign::Plus } else { Sign::Minus };
    let t1_unif = match (at_half, beta_sign) {
        (true, Some(Sign::Plus)) => Sign::Plus,
        (true, Some(Sign::Minus)) => {
            let qh: BigInt = big_pow(datum.q, datum.f / 2);
            Sign::from_parity(&((qh - 1) / 2))
        }
        _ => {
            let local = subfield_norm_one_char(datum.p, &beta)?;
            let qprime = half_residue_order(datum, orbit)?;
            let ambient = norm_one_quad_char(&qprime, &beta)?;
            checks.push(oracle("norm_one_descent", local == ambient));
            local
        }
    };
    Ok((mu_sign, t0_mu * t0_unif * t1_unif))
}

/// `(β/𝔽_p[β]^1)`: the quadratic character of the norm-one subgroup of
/// `𝔽_p[β]` over its index-2 subfield.
pub fn subfield_norm_one_char(p: u64, beta: &RootOfUnity) -> Result<Sign> {
    let order = beta.order();
    let deg = mul_order(&BigInt::from(p), order, 1 << 32)
        .ok_or_else(|| Error::Inconsistency(format!("p = {p} has no order modulo {order}")))?;
    if deg % 2 != 0 {
        return Err(Error::Inconsistency(format!(
            "𝔽_{p}[β] for β = {beta} has odd degree {deg} and no norm-one subgroup"
        )));
    }
    let qb = big_pow(p, deg / 2);
    norm_one_quad_char(&qb, beta).map_err(|_| {
        Error::Inconsistency(format!("β = {beta} is not of norm one in 𝔽_{p}[β]"))
    })
}

/// `(β/k^1)` over `|k| = qprime²` against `(β/𝔽_p[β]^1)`.
pub fn norm_one_descent(p: u64, qprime: &BigInt, beta: &RootOfUnity) -> Result<(Sign, Sign)> {
    Ok((norm_one_quad_char(qprime, beta)?, subfield_norm_one_char(p, beta)?))
}

/// `(1 − q^{f/2})(q^{fr/2} + 1)/2 ≡ (q^f − 1)/2 (mod q^f − 1)`.
pub fn exponent_congruence(q: u64, f: u64, r: u64) -> bool {
    let n: BigInt = big_pow(q, f) - 1;
    let lhs: BigInt = (BigInt::one() - big_pow(q, f / 2)) * (big_pow(q, f * r / 2) + 1) / 2;
    let diff: BigInt = lhs - &n / 2;
    diff.mod_floor(&n).is_zero()
}

/// `q^{fr/2} − q^{f/2} ≡ 0 (mod 4)`.
pub fn mod4_congruence(q: u64, f: u64, r: u64) -> bool {
    (big_pow(q, f * r / 2) - big_pow(q, f / 2)).mod_floor(&BigInt::from(4)).is_zero()
}

/// `χ_Tam(ϖ_E) = (ζ^{(i')}/k_E^×)·𝔫(ψ_{K_{l-1}})·((−1)^s m / q^f)`, with the
/// discriminant symbol also recomputed from the explicit quadratic form.
fn sym_ram_tam_unif(datum: &FieldDatum, data: &SymRamData, checks: &mut Vec<OracleCheck>) -> Result<RootOfUnity> {
    let qf = residue_order(datum);
    let units: BigInt = &qf - 1;
    let zeta_symbol = quad_char_cyclic(&units, &data.zeta_i_prime_exponent)?;
    let n_psi = normalized_gauss(&k_below_char(datum, data))?;
    let (closed, explicit) = discriminant_routes(datum.p, datum.a * datum.f as u32, data.s, data.m)?;
    checks.push(oracle("discriminant_dual_route", closed == explicit));
    let value = zeta_symbol.to_root().mul(&n_psi).mul(&closed.to_root());
    checks.push(oracle("tam_unif_square", value.pow(2) == minus_one_symbol(&qf)?.to_root()));
    Ok(value)
}

/// The class of the discriminant of `v(a) ↦ ν(2v(a)·(−1)^s v(a))` on the
/// `−1`-eigenline of the cyclic shift of `k_E^{2m}`, where `|k_E| = p^deg`:
/// first from the closed form `(−1)^s m`, then from the explicit model.
pub fn discriminant_routes(p: u64, deg: u32, s: u64, m: u64) -> Result<(Sign, Sign)> {
    let qf = big_pow(p, deg as u64);
    let sign_s: i64 = if s % 2 == 0 { 1 } else { -1 };
    let closed = Sign::from_i8(jacobi(&BigInt::from(sign_s * m as i64), &qf)?)
        .ok_or_else(|| Error::Inconsistency(format!("m = {m} is not prime to p = {p}")))?;
    let explicit = explicit_discriminant(p, deg, sign_s, m as usize)?;
    Ok((closed, explicit))
}

fn explicit_discriminant(p: u64, deg: u32, sign_s: i64, m: usize) -> Result<Sign> {
    let len = 2 * m;
    let v: Vec<i64> = (0..len).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
    let shifted: Vec<i64> = (0..len).map(|j| v[(j + 1) % len]).collect();
    if shifted.iter().zip(&v).any(|(a, b)| *a != -b) {
        return Err(Error::Inconsistency("v(1) is not a −1-eigenvector of the shift".into()));
    }
    if big_pow(p, deg as u64) <= BigInt::from(ARITH_CAP) {
        let field = shared_field(p, deg)?;
        let mut form = field.zero();
        for &x in &v {
            let xe = field.from_int(x);
            form = form.add(&field.from_int(2 * sign_s).mul(&xe).mul(&xe));
        }
        if form.is_zero() {
            return Err(Error::Inconsistency("degenerate quadratic form".into()));
        }
        return Ok(Sign::from_parity(&BigInt::from(discrete_log(&form)?)));
    }
    let form = v.iter().map(|x| 2 * sign_s * x * x).sum::<i64>().rem_euclid(p as i64) as u64;
    if form == 0 {
        return Err(Error::Inconsistency("degenerate quadratic form".into()));
    }
    let legendre = if pow_mod(form, (p - 1) / 2, p) == 1 { Sign::Plus } else { Sign::Minus };
    Ok(if deg % 2 == 0 { Sign::Plus } else { legendre })
}

/// Exponent of `4·ζ^{(i')}(ϖ_E)` over the generator of `μ_E`, and the
/// valuation `−(2s+1)` of `2a_α`. When `k_E` is too large for tables only the
/// parity of the exponent is returned, which suffices for characters that
/// are quadratic on `μ_E`.
fn two_a_alpha_coords(datum: &FieldDatum, data: &SymRamData) -> Result<(BigInt, BigInt, bool)> {
    let deg = datum.a * datum.f as u32;
    let valuation = -BigInt::from(2 * data.s + 1);
    if residue_order(datum) <= BigInt::from(ARITH_CAP) {
        let field = shared_field(datum.p, deg)?;
        let log4 = discrete_log(&field.from_int(4))?;
        return Ok((BigInt::from(log4) + &data.zeta_i_prime_exponent, valuation, true));
    }
    Ok((data.zeta_i_prime_exponent.clone(), valuation, false))
}

/// `χ(2a_α)` with `2a_α = 4·ζ^{(i')}(ϖ_E)·ϖ_E^{−(2s+1)}`.
pub fn eval_at_2a_alpha(chi: &TameCharacter, datum: &FieldDatum, data: &SymRamData) -> Result<RootOfUnity> {
    let (unit, valuation, exact) = two_a_alpha_coords(datum, data)?;
    if !exact && !chi.on_mu_gen.order_divides(&BigInt::from(2)) {
        return Err(Error::FieldTooLarge {
            order: residue_order(datum).to_u64().unwrap_or(u64::MAX),
            cap: ARITH_CAP,
        });
    }
    Ok(chi.eval(&unit, &valuation))
}

/// Componentwise product of per-orbit characters.
pub fn mu_chi<'a>(residue_order: BigInt, parts: impl IntoIterator<Item = &'a TameCharacter>) -> TameCharacter {
    parts.into_iter().fold(TameCharacter::trivial(residue_order), |acc, c| acc.mul(c))
}

/// Checks `E_ij·E_ji − E_ji·E_ij = E_ii − E_jj` for `n×n` matrix units
/// (1-based indices).
pub fn toral_invariant_check(n: usize, i: usize, j: usize) -> bool {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return false;
    }
    let unit = |r: usize, c: usize| {
        let mut m = vec![vec![0i64; n]; n];
        m[r - 1][c - 1] = 1;
        m
    };
    let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| {
        let mut out = vec![vec![0i64; n]; n];
        for r in 0..n {
            for k in 0..n {
                if a[r][k] != 0 {
                    for c in 0..n {
                        out[r][c] += a[r][k] * b[k][c];
                    }
                }
            }
        }
        out
    };
    let (eij, eji) = (unit(i, j), unit(j, i));
    let (x, y) = (mul(&eij, &eji), mul(&eji, &eij));
    let (eii, ejj) = (unit(i, i), unit(j, j));
    (0..n).all(|r| (0..n).all(|c| x[r][c] - y[r][c] == eii[r][c] - ejj[r][c]))
}

/// How an orbit takes part in the products over `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum OrbitRole {
    /// Carries the characters of an asymmetric pair.
    PairLeader { partner: usize },
    /// Covered by the pair leader's entry.
    PairMember { leader: usize },
    Symmetric,
}

/// Everything computed for one orbit in one scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCheck {
    pub orbit_index: usize,
    pub role: OrbitRole,
    pub stratum: StratumInfo,
    pub epsilon: Option<TameCharacter>,
    pub kal: Option<KalCharacter>,
    pub tam: Option<TameCharacter>,
    /// `χ_Tam(2a_α)` for the symmetric ramified orbit.
    pub tam_at_2a_alpha: Option<RootOfUnity>,
    /// `None` for pair members, whose identity is the leader's.
    pub identity_holds: Option<bool>,
    pub oracles: Vec<OracleCheck>,
}

impl OrbitCheck {
    pub fn oracles_pass(&self) -> bool {
        self.oracles.iter().all(|c| c.passed)
    }
}

/// The point at which the aggregate identity was tested besides `ζ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregateProbe {
    Uniformizer,
    TwoAAlpha,
}

/// Per-orbit and aggregate results for one `(datum, scenario)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioCheck {
    pub orbits: Vec<OrbitCheck>,
    pub symram: Option<SymRamData>,
    pub epsilon_total: TameCharacter,
    pub mu_tam: TameCharacter,
    /// Product of the Kaletha characters that are known in full.
    pub mu_kal_full: TameCharacter,
    pub kal_probe: Option<ProbeValues>,
    pub aggregate_probe: AggregateProbe,
    pub aggregate_holds: bool,
}

impl ScenarioCheck {
    pub fn all_identities_hold(&self) -> bool {
        self.aggregate_holds && self.orbits.iter().all(|o| o.identity_holds != Some(false))
    }

    pub fn all_oracles_pass(&self) -> bool {
        self.orbits.iter().all(OrbitCheck::oracles_pass)
    }
}

/// `ε = ∏ ε_α` over asymmetric pairs and symmetric unramified orbits.
pub fn epsilon_total(residue_order: BigInt, checks: &[OrbitCheck]) -> TameCharacter {
    mu_chi(residue_order, checks.iter().filter_map(|c| c.epsilon.as_ref()))
}

/// Evaluates all three families on every orbit of the scenario and checks
/// `χ_Tam,α^{-1} = ε_α^{-1}·χ_Kal,α` orbit by orbit and in aggregate.
pub fn check_scenario(scenario: &TowerScenario, orbits: &[OrbitClass]) -> Result<ScenarioCheck> {
    let datum = &scenario.datum;
    let ro = residue_order(datum);
    let symram = if orbits.iter().any(|o| o.kind == OrbitKind::SymRamified) {
        Some(sym_ram_data(scenario, orbits)?)
    } else {
        None
    };

    let mut out = Vec::with_capacity(orbits.len());
    for orbit in orbits {
        let stratum = stratum_of(scenario, orbit);
        if let OrbitKind::Asymmetric { partner } = orbit.kind {
            let partner_orbit = orbits
                .iter()
                .find(|o| o.g() == partner)
                .ok_or_else(|| Error::Inconsistency(format!("partner {partner} of orbit {} missing", orbit.index)))?;
            if !orbit.is_pair_leader() {
                out.push(OrbitCheck {
                    orbit_index: orbit.index,
                    role: OrbitRole::PairMember { leader: partner_orbit.index },
                    stratum,
                    epsilon: None,
                    kal: None,
                    tam: None,
                    tam_at_2a_alpha: None,
                    identity_holds: None,
                    oracles: Vec::new(),
                });
                continue;
            }
            let partner_stratum = stratum_of(scenario, partner_orbit);
            let eps = epsilon_alpha(datum, orbit, &stratum)?;
            let kal = chi_kal(datum, orbit, None)?;
            let (tam, mut oracles) = chi_tam(datum, orbit, &stratum, None)?;
            oracles.push(oracle("pair_parity_agrees", partner_stratum.v_nonzero == stratum.v_nonzero));
            let holds = match &kal {
                KalCharacter::Full(k) => tam.inv() == eps.inv().mul(k),
                KalCharacter::Probe(_) => false,
            };
            out.push(OrbitCheck {
                orbit_index: orbit.index,
                role: OrbitRole::PairLeader { partner: partner_orbit.index },
                stratum,
                epsilon: Some(eps),
                kal: Some(kal),
                tam: Some(tam),
                tam_at_2a_alpha: None,
                identity_holds: Some(holds),
                oracles,
            });
            continue;
        }

        let (eps, kal, tam, oracles, at_2a, holds) = match orbit.kind {
            OrbitKind::SymUnramified => {
                let eps = epsilon_alpha(datum, orbit, &stratum)?;
                let kal = chi_kal(datum, orbit, None)?;
                let (tam, oracles) = chi_tam(datum, orbit, &stratum, None)?;
                let holds = match &kal {
                    KalCharacter::Full(k) => tam.inv() == eps.inv().mul(k),
                    KalCharacter::Probe(_) => false,
                };
                (Some(eps), kal, tam, oracles, None, holds)
            }
            _ => {
                let data = symram.as_ref().ok_or(Error::MissingSymRam)?;
                let kal = chi_kal(datum, orbit, Some(data))?;
                let (tam, oracles) = chi_tam(datum, orbit, &stratum, Some(data))?;
                let at_2a = eval_at_2a_alpha(&tam, datum, data)?;
                let holds = match &kal {
                    KalCharacter::Probe(p) => {
                        tam.on_mu_gen.inv() == p.on_mu_gen && at_2a.inv() == p.at_2a_alpha
                    }
                    KalCharacter::Full(_) => false,
                };
                (None, kal, tam, oracles, Some(at_2a), holds)
            }
        };
        out.push(OrbitCheck {
            orbit_index: orbit.index,
            role: OrbitRole::Symmetric,
            stratum,
            epsilon: eps,
            kal: Some(kal),
            tam: Some(tam),
            tam_at_2a_alpha: at_2a,
            identity_holds: Some(holds),
            oracles,
        });
    }

    let eps_total = epsilon_total(ro.clone(), &out);
    let mu_tam = mu_chi(ro.clone(), out.iter().filter_map(|c| c.tam.as_ref()));
    let mu_kal_full = mu_chi(
        ro.clone(),
        out.iter().filter_map(|c| match &c.kal {
            Some(KalCharacter::Full(k)) => Some(k),
            _ => None,
        }),
    );
    let kal_probe = out.iter().find_map(|c| match &c.kal {
        Some(KalCharacter::Probe(p)) => Some(p.clone()),
        _ => None,
    });

    let rhs_full = eps_total.inv().mul(&mu_kal_full);
    let lhs = mu_tam.inv();
    let (aggregate_probe, aggregate_holds) = match (&symram, &kal_probe) {
        (Some(data), Some(probe)) => {
            let at_mu = lhs.on_mu_gen == rhs_full.on_mu_gen.mul(&probe.on_mu_gen);
            let at_2a = eval_at_2a_alpha(&lhs, datum, data)?
                == eval_at_2a_alpha(&rhs_full, datum, data)?.mul(&probe.at_2a_alpha);
            (AggregateProbe::TwoAAlpha, at_mu && at_2a)
        }
        _ => (AggregateProbe::Uniformizer, lhs == rhs_full),
    };

    Ok(ScenarioCheck {
        orbits: out,
        symram,
        epsilon_total: eps_total,
        mu_tam,
        mu_kal_full,
        kal_probe,
        aggregate_probe,
        aggregate_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::enumerate_orbits;
    use proptest::prelude::*;

    fn scenario(p: u64, e: u64, f: u64, t: i64, chain: Vec<(u64, u64)>, levels: Vec<u64>, z: i64) -> (TowerScenario, Vec<OrbitClass>) {
        let datum = FieldDatum::new(p, 1, e, f, t).unwrap();
        let orbits = enumerate_orbits(&datum).unwrap();
        (TowerScenario::new(&datum, chain, levels, z).unwrap(), orbits)
    }

    #[test]
    fn worked_ramified_example() {
        let (sc, orbits) = scenario(3, 2, 1, 0, vec![(2, 1)], vec![1], 1);
        assert_eq!(orbits.len(), 1);
        let check = check_scenario(&sc, &orbits).unwrap();
        let o = &check.orbits[0];
        let kal = match o.kal.as_ref().unwrap() {
            KalCharacter::Probe(p) => p.clone(),
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(kal.at_2a_alpha, RootOfUnity::i());
        assert_eq!(o.tam_at_2a_alpha.as_ref().unwrap().inv(), RootOfUnity::i());
        assert_eq!(o.identity_holds, Some(true));
        assert!(check.all_identities_hold() && check.all_oracles_pass());
    }

    #[test]
    fn worked_ramified_trivial_zeta() {
        let (sc, orbits) = scenario(3, 2, 1, 0, vec![(2, 1)], vec![1], 0);
        let check = check_scenario(&sc, &orbits).unwrap();
        assert_eq!(check.orbits[0].tam.as_ref().unwrap().on_unif, RootOfUnity::i());
    }

    #[test]
    fn unramified_epsilon_at_zeta() {
        let (sc, orbits) = scenario(3, 1, 2, 0, vec![(1, 2)], vec![2], 1);
        let check = check_scenario(&sc, &orbits).unwrap();
        let sym = orbits.iter().position(|o| o.kind == OrbitKind::SymUnramified).unwrap();
        let eps = check.orbits[sym].epsilon.as_ref().unwrap();
        assert_eq!(eps.on_mu_gen, RootOfUnity::minus_one());
        assert!(check.all_identities_hold());
    }

    #[test]
    fn unramified_w_side_is_minus_one() {
        let (sc, orbits) = scenario(3, 1, 2, 0, vec![(1, 2)], vec![1], 1);
        let check = check_scenario(&sc, &orbits).unwrap();
        let sym = orbits.iter().position(|o| o.kind == OrbitKind::SymUnramified).unwrap();
        assert_eq!(check.orbits[sym].tam.as_ref().unwrap().on_unif, RootOfUnity::minus_one());
        let kal = check.orbits[sym].kal.as_ref().unwrap();
        assert_eq!(
            kal,
            &KalCharacter::Full(TameCharacter::from_signs(BigInt::from(9), Sign::Plus, Sign::Minus))
        );
    }

    #[test]
    fn seven_unit_part_square() {
        let datum = FieldDatum::new(7, 1, 2, 1, 0).unwrap();
        let field = shared_field(7, 1).unwrap();
        assert_eq!(discrete_log(&field.from_int(4)).unwrap() % 2, 0);
        let orbits = enumerate_orbits(&datum).unwrap();
        let sc = TowerScenario::new(&datum, vec![(2, 1)], vec![1], 0).unwrap();
        assert!(check_scenario(&sc, &orbits).unwrap().all_identities_hold());
    }

    #[test]
    fn asymmetric_pair_at_even_level() {
        let (sc, orbits) = scenario(5, 4, 1, 0, vec![(4, 1), (2, 1)], vec![3, 4], 1);
        let check = check_scenario(&sc, &orbits).unwrap();
        assert!(check.all_identities_hold(), "{check:#?}");
        assert!(check.all_oracles_pass());
        let leader = check
            .orbits
            .iter()
            .find(|o| matches!(o.role, OrbitRole::PairLeader { .. }))
            .unwrap();
        assert!(leader.stratum.v_nonzero);
        let orbit = &orbits[leader.orbit_index];
        let units: BigInt = orbit.residue_order(&sc.datum) - 1;
        let expected = orbit.alpha_of_unif.quadratic_value(&units).unwrap().to_root();
        assert_eq!(leader.epsilon.as_ref().unwrap().on_unif, expected);
    }

    #[test]
    fn matrix_units() {
        assert!(toral_invariant_check(2, 1, 2));
        assert!(toral_invariant_check(5, 2, 4));
        for i in 1..=8 {
            for j in 1..=8 {
                if i != j {
                    assert!(toral_invariant_check(8, i, j));
                }
            }
        }
        assert!(!toral_invariant_check(3, 2, 2));
    }

    #[test]
    fn trivial_products() {
        let ro = BigInt::from(9);
        let t = TameCharacter::trivial(ro.clone());
        assert!(mu_chi(ro.clone(), [&t, &t]).is_trivial());
        let c = TameCharacter::new(ro.clone(), RootOfUnity::new(1, 4), RootOfUnity::new(1, 3)).unwrap();
        assert_eq!(mu_chi(ro, [&c]), c);
        assert!(TameCharacter::new(BigInt::from(9), RootOfUnity::new(1, 3), RootOfUnity::one()).is_err());
    }

    #[test]
    fn discriminant_small() {
        for (p, deg, s, m) in [(3, 1, 0, 1), (5, 2, 3, 3), (7, 1, 5, 5)] {
            let (a, b) = discriminant_routes(p, deg, s, m).unwrap();
            assert_eq!(a, b);
        }
    }

    proptest! {
        #[test]
        fn congruences_hold(pi in 0usize..8, fh in 1u64..=3, rh in 0u64..=4) {
            let q = [3u64, 5, 7, 11, 13, 17, 19, 23][pi];
            let (f, r) = (2 * fh, 2 * rh + 1);
            prop_assert!(exponent_congruence(q, f, r));
            prop_assert!(mod4_congruence(q, f, r));
        }

        #[test]
        fn eval_is_additive(a in -50i64..50, v in -50i64..50, b in -50i64..50, w in -50i64..50) {
            let c = TameCharacter::new(BigInt::from(25), RootOfUnity::new(5, 24), RootOfUnity::new(2, 7)).unwrap();
            let lhs = c.eval(&BigInt::from(a + b), &BigInt::from(v + w));
            let rhs = c.eval(&BigInt::from(a), &BigInt::from(v)).mul(&c.eval(&BigInt::from(b), &BigInt::from(w)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
