//! Frobenius bracket powers, Frobenius roots and Frobenius preimages.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{AlgError, Result};
use crate::groebner::eliminate;
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MAX_VARS};
use crate::poly::{Polynomial, Term};

/// Largest exponent accepted by default.
pub const DEFAULT_MAX_E: u32 = 10;

/// `q = p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusExponent {
    p: u32,
    e: u32,
    q: u32,
}

impl FrobeniusExponent {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        Self::with_limit(p, e, DEFAULT_MAX_E)
    }

    pub fn with_limit(p: u32, e: u32, max_e: u32) -> Result<Self> {
        if e > max_e {
            return Err(AlgError::ExponentOverflow);
        }
        let q = p.checked_pow(e).ok_or(AlgError::ExponentOverflow)?;
        Ok(FrobeniusExponent { p, e, q })
    }

    /// Parses `q` as an exact power of `p`.
    pub fn from_q(p: u32, q: u32) -> Result<Self> {
        let mut e = 0;
        let mut acc = 1u32;
        while acc < q {
            acc = acc.checked_mul(p).ok_or(AlgError::ExponentOverflow)?;
            e += 1;
        }
        if acc != q {
            return Err(AlgError::InvalidRing(format!("{q} is not a power of {p}")));
        }
        Self::new(p, e)
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `p * q`.
    pub fn next(&self) -> Result<Self> {
        Self::new(self.p, self.e + 1)
    }
}

/// `I^[q]`: the ideal generated by `q`-th powers of the generators.
pub fn bracket_power(i: &Ideal, q: FrobeniusExponent) -> Result<Ideal> {
    let r = i.ring().poly_ring();
    let gens = i
        .gens()
        .iter()
        .map(|g| r.frobenius(g, q.q()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(i.ring(), gens))
}

/// Splits `g = sum_mu g_mu^q x^mu` over the basis `{x^mu : 0 <= mu_i < q}` and
/// returns the nonzero `g_mu` (coefficients are their own `q`-th roots in `F_p`).
pub fn root_components(g: &Polynomial, q: u32, nvars: usize) -> Vec<Vec<Term>> {
    let mut parts: BTreeMap<[u32; MAX_VARS], Vec<Term>> = BTreeMap::new();
    for t in g.terms() {
        let mut rem = [0u32; MAX_VARS];
        let mut quo = [0u32; MAX_VARS];
        for v in 0..nvars {
            rem[v] = t.mono.exp(v) % q;
            quo[v] = t.mono.exp(v) / q;
        }
        parts.entry(rem).or_default().push(Term {
            coeff: t.coeff,
            mono: Monomial::from_exponents(&quo[..nvars]).unwrap(),
        });
    }
    parts.into_values().collect()
}

/// The smallest ideal `K` with `J ⊆ K^[q]`. Polynomial rings only.
pub fn frobenius_root(j: &Ideal, e: FrobeniusExponent) -> Result<Ideal> {
    if j.ring().is_quotient() {
        return Err(AlgError::QuotientContextUnsupported);
    }
    let r = j.ring().poly_ring();
    let n = j.ring().nvars();
    let mut gens = Vec::new();
    for g in j.gens() {
        for part in root_components(g, e.q(), n) {
            gens.push(r.from_terms(part));
        }
    }
    Ok(Ideal::new(j.ring(), gens))
}

/// `{ u : u^q ∈ K }`, the largest ideal `L` with `L^[q] ⊆ K`.
///
/// Computed as the preimage of `K` under `x_i -> x_i^q`: adjoin `y_i`,
/// eliminate `x` from `K + (y_i - x_i^q)` and rename `y` back to `x`.
pub fn frobenius_preimage(k: &Ideal, e: FrobeniusExponent) -> Result<Ideal> {
    if e.q() == 1 {
        return Ok(k.clone());
    }
    if k.is_unit() {
        return Ok(k.ring().unit_ideal());
    }
    let ring = k.ring();
    let r = ring.poly_ring();
    let n = ring.nvars();
    let ext = r.with_nvars(2 * n)?;
    let mut gens: Vec<Polynomial> = k.gb().basis().iter().map(|g| ext.convert(g)).collect();
    for v in 0..n {
        let xq = Monomial::var(v, 1)
            .checked_pow(e.q())
            .ok_or(AlgError::ExponentOverflow)?;
        gens.push(ext.sub(&ext.var(n + v), &ext.monomial(1, xq)));
    }
    let x_mask = (1u32 << n) - 1;
    let back: Vec<usize> = (0..2 * n).map(|v| if v >= n { v - n } else { v }).collect();
    let pre = eliminate(&ext, &gens, x_mask)
        .into_iter()
        .map(|g| r.remap(&g, &back))
        .collect();
    Ok(Ideal::new(ring, pre))
}
