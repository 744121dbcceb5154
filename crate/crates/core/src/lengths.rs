//! Hilbert–Kunz style length tables for bracket and corner powers.

use serde::Serialize;

use crate::error::{AlgError, Result};
use crate::frobenius::{bracket_power, FrobeniusExponent};
use crate::ideal::Ideal;
use crate::linkage::corner_power_with;
use crate::params::{find_parameter_ideal, SeededRng, DEFAULT_MAX_TRIES};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthRow {
    pub e: u32,
    pub q: u32,
    pub len_bracket: u64,
    pub len_corner: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeadingCoefficient {
    pub numerator: u64,
    pub denominator: u64,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct LengthTable {
    pub ideal: Ideal,
    pub rows: Vec<LengthRow>,
    /// `l(R/I^[q]) / q^d` at the largest tabulated `q`.
    pub leading_coefficient_estimate: LeadingCoefficient,
}

fn finite_colength(i: &Ideal) -> Result<u64> {
    i.colength().finite().ok_or(AlgError::NotMPrimary)
}

/// Colengths of `I^[q]` (and of `I^<q>` when requested) for `e = 0..=e_max`.
pub fn hk_table(
    i: &Ideal,
    e_max: u32,
    include_corner: bool,
    rng: &mut SeededRng,
) -> Result<LengthTable> {
    if !i.is_m_primary() {
        return Err(AlgError::NotMPrimary);
    }
    let p = i.ring().characteristic();
    // One link serves every row; corner powers do not depend on it.
    let link = if include_corner {
        Some(find_parameter_ideal(i, rng, DEFAULT_MAX_TRIES)?)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(e_max as usize + 1);
    for e in 0..=e_max {
        let q = FrobeniusExponent::new(p, e)?;
        let len_bracket = finite_colength(&bracket_power(i, q)?)?;
        let len_corner = match &link {
            Some(a) => Some(finite_colength(&corner_power_with(i, a, q)?.value)?),
            None => None,
        };
        rows.push(LengthRow {
            e,
            q: q.q(),
            len_bracket,
            len_corner,
        });
    }
    let top = rows.last().expect("at least one row");
    let denominator = (top.q as u64).pow(i.ring().dim() as u32);
    let leading_coefficient_estimate = LeadingCoefficient {
        numerator: top.len_bracket,
        denominator,
        value: top.len_bracket as f64 / denominator as f64,
    };
    Ok(LengthTable {
        ideal: i.clone(),
        rows,
        leading_coefficient_estimate,
    })
}

impl LengthTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("e,q,len_bracket,len_corner\n");
        for r in &self.rows {
            let corner = r.len_corner.map(|c| c.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{}\n", r.e, r.q, r.len_bracket, corner));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ideal": self.ideal.gb_strings(),
            "rows": self.rows,
            "leading_coefficient_estimate": self.leading_coefficient_estimate,
        })
    }
}

/// Both sides of `l(R/J^<q>) = l(R/a^[q]) - l(R/I^[q])` with `I = a : J`.
#[derive(Clone, Debug)]
pub struct LengthIdentity {
    pub equal: bool,
    pub lhs: u64,
    pub rhs: i64,
    pub a: Ideal,
    pub linked: Ideal,
}

pub fn corner_length_identity(
    j: &Ideal,
    e: FrobeniusExponent,
    rng: &mut SeededRng,
) -> Result<LengthIdentity> {
    if !j.is_m_primary() {
        return Err(AlgError::NotMPrimary);
    }
    let a = find_parameter_ideal(j, rng, DEFAULT_MAX_TRIES)?;
    corner_length_identity_with(j, &a, e)
}

pub fn corner_length_identity_with(
    j: &Ideal,
    a: &Ideal,
    e: FrobeniusExponent,
) -> Result<LengthIdentity> {
    if !j.is_m_primary() {
        return Err(AlgError::NotMPrimary);
    }
    let w = corner_power_with(j, a, e)?;
    let lhs = finite_colength(&w.value)?;
    let len_a = finite_colength(&bracket_power(a, e)?)?;
    let len_i = finite_colength(&bracket_power(&w.j, e)?)?;
    let rhs = len_a as i64 - len_i as i64;
    Ok(LengthIdentity {
        equal: lhs as i64 == rhs,
        lhs,
        rhs,
        a: a.clone(),
        linked: w.j,
    })
}
