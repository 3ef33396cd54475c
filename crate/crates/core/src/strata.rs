//! Jump data of a tamely ramified character, modeled as a descending tower
//! of subfields `E ⊇ E_0 ⊋ … ⊋ E_{d-1} ⊋ F` with increasing `E`-levels, and
//! the assignment of root orbits to strata.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::split_two_power;
use crate::error::{Error, Result};
use crate::galois::{coset_reps, unif_multiplier, CosetRep, FieldDatum, OrbitClass, OrbitKind, Root};

/// A tower of subfields `E_j = F[μ_{q^{f_j}-1}, ϖ_E^{e/e_j}]` with levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerScenario {
    #[serde(skip)]
    pub datum: FieldDatum,
    /// `(e_j, f_j)` for `j = 0..d`.
    pub chain: Vec<(u64, u64)>,
    /// `t_0 < t_1 < … < t_{d-1}`.
    pub levels: Vec<u64>,
    /// Exponent of `ζ^{(i')}(ϖ_E)` over the generator of `μ_E`.
    #[serde(serialize_with = "ser_big")]
    pub zeta_i_prime_exponent: BigInt,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl TowerScenario {
    /// Validates the chain shape, the levels and the subfield membership
    /// counts.
    pub fn new(
        datum: &FieldDatum,
        chain: Vec<(u64, u64)>,
        levels: Vec<u64>,
        zeta_i_prime_exponent: impl Into<BigInt>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidScenario(msg));
        if chain.is_empty() {
            return bad("a tower needs at least one subfield".into());
        }
        if chain.len() != levels.len() {
            return bad(format!("{} subfields but {} levels", chain.len(), levels.len()));
        }
        let (e0, f0) = chain[0];
        if e0 != datum.e {
            return bad(format!("E/E_0 must be unramified: e_0 = {e0}, e = {}", datum.e));
        }
        if f0 == 0 || datum.f % f0 != 0 {
            return bad(format!("f_0 = {f0} does not divide f = {}", datum.f));
        }
        for w in chain.windows(2) {
            let ((ea, fa), (eb, fb)) = (w[0], w[1]);
            if eb == 0 || fb == 0 || ea % eb != 0 || fa % fb != 0 {
                return bad(format!("({eb}, {fb}) is not a subfield of ({ea}, {fa})"));
            }
            if (ea, fa) == (eb, fb) {
                return bad(format!("containment ({ea}, {fa}) ⊋ ({eb}, {fb}) is not strict"));
            }
        }
        if chain.last() == Some(&(1, 1)) {
            return bad("E_{d-1} must differ from F".into());
        }
        if levels[0] == 0 || levels.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("levels {levels:?} are not positive and strictly increasing"));
        }

        let scenario = TowerScenario {
            datum: datum.clone(),
            chain,
            levels,
            zeta_i_prime_exponent: zeta_i_prime_exponent.into(),
        };
        let n = datum.n();
        let reps = coset_reps(datum);
        for (index, &(e_j, f_j)) in scenario.chain.iter().enumerate() {
            let found = reps.iter().filter(|g| scenario.fixes(index, **g)).count() as u64;
            let expected = n / (e_j * f_j);
            if found != expected {
                return Err(Error::MembershipCount { index, e_j, f_j, found, expected });
            }
        }
        Ok(scenario)
    }

    pub fn depth(&self) -> usize {
        self.chain.len()
    }

    /// Does `g` fix `E_j`? `E_d = F` is fixed by everything.
    pub fn fixes(&self, j: usize, g: CosetRep) -> bool {
        if j >= self.chain.len() {
            return true;
        }
        let (e_j, f_j) = self.chain[j];
        g.i % f_j == 0 && unif_multiplier(&self.datum, g).pow(self.datum.e / e_j).is_one()
    }

    /// Do `h1` and `h2` agree on `E_j`?
    pub fn same_on(&self, j: usize, h1: CosetRep, h2: CosetRep) -> bool {
        if j >= self.chain.len() {
            return true;
        }
        let (e_j, f_j) = self.chain[j];
        let pw = self.datum.e / e_j;
        h1.i % f_j == h2.i % f_j
            && unif_multiplier(&self.datum, h1).pow(pw) == unif_multiplier(&self.datum, h2).pow(pw)
    }

    /// Stratum of an arbitrary root: the `i` with `α ∈ Φ(S, G^{i+1}) − Φ(S, G^i)`.
    pub fn root_stratum(&self, root: Root) -> i64 {
        let j = (0..=self.depth())
            .find(|&j| self.same_on(j, root.src, root.dst))
            .expect("every root lies in Φ(S, G)");
        j as i64 - 1
    }

    /// `h_i = ⌊t_i/2⌋ + 1`.
    pub fn h_values(&self) -> Vec<u64> {
        self.levels.iter().map(|t| t / 2 + 1).collect()
    }

    /// `j_i = ⌊(t_i + 1)/2⌋`.
    pub fn j_values(&self) -> Vec<u64> {
        self.levels.iter().map(|t| (t + 1) / 2).collect()
    }
}

/// Where an orbit sits in the tower, and which of `𝔙_{[g]}`, `𝔚_{[g]}` is
/// nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumInfo {
    pub orbit_index: usize,
    pub stratum_index: i64,
    pub t_at_stratum: Option<u64>,
    pub v_nonzero: bool,
    pub w_nonzero: bool,
}

/// Assigns the orbit of `[1, g]` to the unique stratum `i` with
/// `g ∈ Γ_{E_{i+1}} − Γ_{E_i}`.
pub fn stratum_of(scenario: &TowerScenario, orbit: &OrbitClass) -> StratumInfo {
    let stratum_index = scenario.root_stratum(orbit.representative);
    let t_at_stratum = (stratum_index >= 0).then(|| scenario.levels[stratum_index as usize]);
    let v_nonzero = matches!(t_at_stratum, Some(t) if t % 2 == 0);
    StratumInfo {
        orbit_index: orbit.index,
        stratum_index,
        t_at_stratum,
        v_nonzero,
        w_nonzero: !v_nonzero,
    }
}

/// Auxiliary data of the symmetric ramified orbit: `e = 2^l·m`, the level
/// `2s + 1`, and the residue field of `K_{l-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymRamData {
    pub l: u32,
    pub m: u64,
    pub s: u64,
    pub level: u64,
    #[serde(serialize_with = "ser_big")]
    pub k_tower_residue_order: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub zeta_i_prime_exponent: BigInt,
}

impl SymRamData {
    /// `e(K_{l-1}/F) = e/(2m) = 2^{l-1}`.
    pub fn e_k_below(&self) -> u64 {
        1 << (self.l - 1)
    }
}

/// Computes `l`, `m`, `s` from the stratum of the symmetric ramified orbit.
pub fn sym_ram_data(scenario: &TowerScenario, orbits: &[OrbitClass]) -> Result<SymRamData> {
    let orbit = orbits
        .iter()
        .find(|o| o.kind == OrbitKind::SymRamified)
        .ok_or(Error::NoRamifiedOrbit)?;
    let info = stratum_of(scenario, orbit);
    let level = info.t_at_stratum.ok_or_else(|| {
        Error::Inconsistency("symmetric ramified root at stratum -1".into())
    })?;
    if level % 2 == 0 {
        return Err(Error::RamifiedParity(level));
    }
    let datum = &scenario.datum;
    let (l, m) = split_two_power(datum.e);
    Ok(SymRamData {
        l,
        m,
        s: (level - 1) / 2,
        level,
        k_tower_residue_order: datum.mu_order() + 1,
        zeta_i_prime_exponent: scenario.zeta_i_prime_exponent.clone(),
    })
}

/// The tower `F = K_{-1} ⊊ K_0 ⊊ … ⊊ K_{l+1} = E` as `(e(K_j/F), f(K_j/F))`
/// for `j = -1..=l+1`, with `K_j = F[μ_E, ϖ_E^{2^{l-j}m}]` for `j ≥ 0`.
pub fn k_tower(datum: &FieldDatum) -> Vec<(u64, u64)> {
    let (l, m) = split_two_power(datum.e);
    let mut out = vec![(1, 1), (1, datum.f)];
    for j in 1..=l as u64 {
        out.push((1 << j, datum.f));
    }
    if m > 1 || l == 0 {
        out.push((datum.e, datum.f));
    }
    out.dedup();
    out
}

/// Descent to the centralizer `H` of a subfield `E_H = (e_H, f_H)`: the
/// strata realized by roots of `H` form a subset of the ambient strata and
/// the restricted jump levels are among the ambient levels.
pub fn descent_check(scenario: &TowerScenario, sub: (u64, u64)) -> bool {
    let (e_h, f_h) = sub;
    let datum = &scenario.datum;
    if e_h == 0 || f_h == 0 || datum.e % e_h != 0 || datum.f % f_h != 0 {
        return false;
    }
    let reps = coset_reps(datum);
    let in_h = |g: CosetRep| {
        g.i % f_h == 0 && unif_multiplier(datum, g).pow(datum.e / e_h).is_one()
    };
    let ambient: BTreeSet<i64> = reps
        .iter()
        .filter(|g| !g.is_identity())
        .map(|&g| scenario.root_stratum(Root::new(CosetRep::IDENTITY, g)))
        .collect();
    let restricted: BTreeSet<i64> = reps
        .iter()
        .filter(|g| !g.is_identity() && in_h(**g))
        .map(|&g| scenario.root_stratum(Root::new(CosetRep::IDENTITY, g)))
        .collect();
    let levels_ok = restricted
        .iter()
        .filter(|&&i| i >= 0)
        .all(|&i| scenario.levels.contains(&scenario.levels[i as usize]));
    restricted.is_subset(&ambient) && levels_ok
}
