//! Dense exponent vectors and monomial orders.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Maximum number of variables in any ring, auxiliary variables included.
pub const MAX_VARS: usize = 16;

/// A power product `x_0^{e_0} ... x_{n-1}^{e_{n-1}}`.
///
/// Slots past the arity of the owning ring are always zero, so comparisons
/// and divisibility tests never need to know the arity.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        deg: 0,
    };

    pub fn one() -> Self {
        Self::ONE
    }

    /// Builds a monomial from an exponent slice. Returns `None` when the slice
    /// is too long or the total degree overflows.
    pub fn from_exponents(e: &[u32]) -> Option<Self> {
        if e.len() > MAX_VARS {
            return None;
        }
        let mut exps = [0; MAX_VARS];
        let mut deg = 0u32;
        for (slot, &v) in exps.iter_mut().zip(e) {
            *slot = v;
            deg = deg.checked_add(v)?;
        }
        Some(Monomial { exps, deg })
    }

    pub fn var(i: usize, power: u32) -> Self {
        let mut m = Self::ONE;
        m.exps[i] = power;
        m.deg = power;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    #[inline]
    pub fn exponents(&self) -> &[u32; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0; MAX_VARS];
        for (i, slot) in exps.iter_mut().enumerate() {
            *slot = self.exps[i].checked_add(other.exps[i])?;
        }
        Some(Monomial {
            exps,
            deg: self.deg.checked_add(other.deg)?,
        })
    }

    /// Product of monomials.
    ///
    /// Panics on exponent overflow; callers that raise user data to large
    /// powers go through [`Monomial::checked_pow`] first.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn checked_pow(&self, n: u32) -> Option<Monomial> {
        let mut exps = [0; MAX_VARS];
        for (i, slot) in exps.iter_mut().enumerate() {
            *slot = self.exps[i].checked_mul(n)?;
        }
        Some(Monomial {
            exps,
            deg: self.deg.checked_mul(n)?,
        })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = [0; MAX_VARS];
        for (i, slot) in exps.iter_mut().enumerate() {
            *slot = other.exps[i] - self.exps[i];
        }
        Monomial {
            exps,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0; MAX_VARS];
        let mut deg = 0;
        for (i, slot) in exps.iter_mut().enumerate() {
            *slot = self.exps[i].max(other.exps[i]);
            deg += *slot;
        }
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Degree restricted to the variables selected by `mask`.
    #[inline]
    fn masked_degree(&self, mask: u32) -> u32 {
        let mut d = 0;
        for i in 0..MAX_VARS {
            if mask >> i & 1 == 1 {
                d += self.exps[i];
            }
        }
        d
    }

    /// True when every variable outside `mask` has exponent zero.
    pub fn supported_in(&self, mask: u32) -> bool {
        (0..MAX_VARS).all(|i| mask >> i & 1 == 1 || self.exps[i] == 0)
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Term orders used by the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Two-block elimination order: grevlex on the variables in the mask,
    /// ties broken by grevlex on the remaining variables.
    Elim(u32),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Elim(mask) => {
                let first = grevlex_masked(a, b, mask);
                if first != Ordering::Equal {
                    first
                } else {
                    grevlex_masked(a, b, !mask)
                }
            }
        }
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.deg.cmp(&b.deg) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

#[inline]
fn grevlex_masked(a: &Monomial, b: &Monomial, mask: u32) -> Ordering {
    match a.masked_degree(mask).cmp(&b.masked_degree(mask)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        if mask >> i & 1 == 1 && a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}
