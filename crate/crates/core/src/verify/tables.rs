//! Tables behind the `classify`, `orbit` and `gauss` commands.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{CyclotomicInt, RootOfUnity};
use crate::error::{Error, Result};
use crate::ffield::ENUM_CAP;
use crate::galois::{enumerate_orbits, normalize, orbit_containing, FieldDatum, OrbitClass, OrbitKind};
use crate::gauss::{gauss_sum_exact, gauss_sum_numeric, minus_one_symbol, normalized_gauss, AdditiveCharSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub index: usize,
    pub representative: String,
    pub kind: &'static str,
    pub partner: Option<String>,
    pub ads_label: String,
    pub tam_label: String,
    pub size: u64,
    pub e_f_alpha: u64,
    pub f_f_alpha: u64,
    pub deg_f_pm_alpha: u64,
    pub unif_multiplier: String,
    pub xg_witness: Option<u64>,
}

impl ClassRow {
    pub fn from_orbit(o: &OrbitClass) -> ClassRow {
        ClassRow {
            index: o.index,
            representative: o.g().to_string(),
            kind: o.kind.name(),
            partner: match o.kind {
                OrbitKind::Asymmetric { partner } => Some(partner.to_string()),
                _ => None,
            },
            ads_label: o.ads_kind.to_string(),
            tam_label: o.tam_kind.to_string(),
            size: o.size,
            e_f_alpha: o.e_f_alpha,
            f_f_alpha: o.f_f_alpha,
            deg_f_pm_alpha: o.deg_f_pm_alpha,
            unif_multiplier: o.unif_multiplier.to_string(),
            xg_witness: o.xg_witness,
        }
    }
}

/// The orbit table of one datum.
pub fn classify(datum: &FieldDatum) -> Result<Vec<ClassRow>> {
    Ok(enumerate_orbits(datum)?.iter().map(ClassRow::from_orbit).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDetail {
    pub root: String,
    pub class: ClassRow,
    pub members: Vec<String>,
}

/// The orbit of `[1, σ^kφ^i]`.
pub fn orbit_detail(datum: &FieldDatum, k: i64, i: i64) -> Result<OrbitDetail> {
    let g = normalize(datum, k, i);
    if g.is_identity() {
        return Err(Error::InvalidDatum(format!("σ^{k}φ^{i} lies in Γ_E and gives no root")));
    }
    let orbits = enumerate_orbits(datum)?;
    let orbit = orbit_containing(&orbits, g).ok_or_else(|| Error::Inconsistency(format!("no orbit contains {g}")))?;
    Ok(OrbitDetail {
        root: format!("[1, {g}]"),
        class: ClassRow::from_orbit(orbit),
        members: orbit.members.iter().map(|r| r.to_string()).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussRow {
    pub p: u64,
    pub m: u32,
    #[serde(serialize_with = "ser_big")]
    pub q: BigInt,
    pub normalized: RootOfUnity,
    pub numeric_re: f64,
    pub numeric_im: f64,
    pub numeric_agrees: bool,
    /// `None` above the enumeration cap.
    pub exact_square_ok: Option<bool>,
    pub minus_one_symbol: String,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Gauss sums of the canonical character of `𝔽_{p^j}` for `j = 1..=m`.
pub fn gauss_table(p: u64, m: u32) -> Result<Vec<GaussRow>> {
    let mut rows = Vec::new();
    for j in 1..=m {
        let spec = AdditiveCharSpec::canonical(p, j);
        let q = spec.order();
        let normalized = normalized_gauss(&spec)?;
        let small = q <= BigInt::from(ENUM_CAP);
        let (numeric_re, numeric_im, numeric_agrees) = if small {
            let z = gauss_sum_numeric(&spec)?;
            let sqrt_q = (p as f64).powf(j as f64 / 2.0);
            let w = normalized.to_complex();
            let agrees = (z / sqrt_q - w).norm() < 1e-6;
            (z.re, z.im, agrees)
        } else {
            (f64::NAN, f64::NAN, true)
        };
        let symbol = minus_one_symbol(&q)?;
        let exact_square_ok = if small {
            let g = gauss_sum_exact(&spec)?;
            let sq = g.mul(&g)?;
            Some(sq == CyclotomicInt::from_integer(p as u32, BigInt::from(symbol.to_i8()) * &q))
        } else {
            None
        };
        rows.push(GaussRow {
            p,
            m: j,
            q,
            normalized,
            numeric_re,
            numeric_im,
            numeric_agrees,
            exact_square_ok,
            minus_one_symbol: symbol.to_string(),
        });
    }
    Ok(rows)
}
