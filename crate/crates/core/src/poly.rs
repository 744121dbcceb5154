//! Sparse multivariate polynomials over `F_p`.

use std::cmp::Ordering;

use crate::error::{AlgError, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub mono: Monomial,
}

/// A polynomial in canonical form: nonzero coefficients, strictly descending
/// monomials under the order of the [`PolyRing`] that built it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_mono(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.mono)
    }

    /// True for a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.terms[0].coeff == 1
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.mono.degree() == t.mono.degree()),
        }
    }

    /// Bit mask of the variables that occur.
    pub fn support(&self) -> u32 {
        let mut mask = 0u32;
        for t in &self.terms {
            for i in 0..MAX_VARS {
                if t.mono.exp(i) > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }
}

/// Arithmetic context: coefficient field, arity and the active term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: PrimeField,
    pub nvars: usize,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: PrimeField, nvars: usize, order: MonomialOrder) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(AlgError::TooManyVariables(nvars));
        }
        Ok(PolyRing {
            field,
            nvars,
            order,
        })
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PolyRing { order, ..*self }
    }

    pub fn with_nvars(&self, nvars: usize) -> Result<Self> {
        Self::new(self.field, nvars, self.order)
    }

    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Normalizes an arbitrary list of terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(&self, mut terms: Vec<Term>) -> Polynomial {
        terms.sort_by(|a, b| self.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            let c = t.coeff % self.p();
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = self.field.add(last.coeff, c);
                }
                _ => out.push(Term { coeff: c, mono: t.mono }),
            }
        }
        out.retain(|t| t.coeff != 0);
        Polynomial { terms: out }
    }

    /// Re-sorts a polynomial built under another order.
    pub fn convert(&self, f: &Polynomial) -> Polynomial {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.cmp(&b.mono, &a.mono));
        Polynomial { terms }
    }

    pub fn constant(&self, c: u64) -> Polynomial {
        let c = self.field.reduce(c);
        if c == 0 {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![Term {
                    coeff: c,
                    mono: Monomial::ONE,
                }],
            }
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.monomial(1, Monomial::var(i, 1))
    }

    pub fn monomial(&self, coeff: u32, mono: Monomial) -> Polynomial {
        let coeff = coeff % self.p();
        if coeff == 0 {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![Term { coeff, mono }],
            }
        }
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.merge(a, b, 1)
    }

    pub fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.merge(a, b, self.p() - 1)
    }

    pub fn neg(&self, a: &Polynomial) -> Polynomial {
        self.scale(a, self.p() - 1)
    }

    pub fn scale(&self, a: &Polynomial, c: u32) -> Polynomial {
        let c = c % self.p();
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.mul(t.coeff, c),
                    mono: t.mono,
                })
                .collect(),
        }
    }

    /// `a + c * b`.
    fn merge(&self, a: &Polynomial, b: &Polynomial, c: u32) -> Polynomial {
        self.add_scaled_shifted(a, c, &Monomial::ONE, b)
    }

    /// `a + c * m * b` in a single merge pass.
    pub fn add_scaled_shifted(
        &self,
        a: &Polynomial,
        c: u32,
        m: &Monomial,
        b: &Polynomial,
    ) -> Polynomial {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &Term| Term {
            coeff: f.mul(t.coeff, c),
            mono: t.mono.mul(m),
        };
        while i < a.terms.len() && j < b.terms.len() {
            let bt = shifted(&b.terms[j]);
            match self.cmp(&a.terms[i].mono, &bt.mono) {
                Ordering::Greater => {
                    out.push(a.terms[i]);
                    i += 1;
                }
                Ordering::Less => {
                    if bt.coeff != 0 {
                        out.push(bt);
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a.terms[i].coeff, bt.coeff);
                    if s != 0 {
                        out.push(Term {
                            coeff: s,
                            mono: bt.mono,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        for t in &b.terms[j..] {
            let bt = shifted(t);
            if bt.coeff != 0 {
                out.push(bt);
            }
        }
        Polynomial { terms: out }
    }

    pub fn mul_term(&self, a: &Polynomial, c: u32, m: &Monomial) -> Polynomial {
        let c = c % self.p();
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.mul(t.coeff, c),
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        if a.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        if small.len() == 1 {
            let t = small.terms[0];
            return self.mul_term(big, t.coeff, &t.mono);
        }
        let mut terms = Vec::with_capacity(a.len() * b.len());
        for s in &small.terms {
            for t in &big.terms {
                terms.push(Term {
                    coeff: self.field.mul(s.coeff, t.coeff),
                    mono: s.mono.mul(&t.mono),
                });
            }
        }
        self.from_terms(terms)
    }

    /// Binary powering.
    pub fn pow(&self, a: &Polynomial, mut n: u64) -> Polynomial {
        let mut acc = self.one();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The term-wise Frobenius image `sum c * m^q`, which equals `a^q` when
    /// `q` is a power of the characteristic. Fails on exponent overflow.
    pub fn frobenius(&self, a: &Polynomial, q: u32) -> Result<Polynomial> {
        let terms = a
            .terms
            .iter()
            .map(|t| {
                t.mono
                    .checked_pow(q)
                    .map(|mono| Term {
                        coeff: t.coeff,
                        mono,
                    })
                    .ok_or(AlgError::ExponentOverflow)
            })
            .collect::<Result<Vec<_>>>()?;
        // Raising to a power preserves every monomial order, so the terms stay sorted.
        Ok(Polynomial { terms })
    }

    pub fn monic(&self, a: &Polynomial) -> Polynomial {
        match a.lead() {
            None => Polynomial::zero(),
            Some(t) if t.coeff == 1 => a.clone(),
            Some(t) => self.scale(a, self.field.inv(t.coeff)),
        }
    }

    pub fn derivative(&self, a: &Polynomial, var: usize) -> Polynomial {
        let terms = a
            .terms
            .iter()
            .filter(|t| t.mono.exp(var) > 0)
            .map(|t| {
                let e = t.mono.exp(var);
                Term {
                    coeff: self.field.mul(t.coeff, self.field.reduce(e as u64)),
                    mono: Monomial::var(var, 1).quotient_of(&t.mono),
                }
            })
            .collect();
        self.from_terms(terms)
    }

    /// Applies a variable renaming/embedding: variable `i` of the source
    /// becomes variable `map[i]` of `self`.
    pub fn remap(&self, a: &Polynomial, map: &[usize]) -> Polynomial {
        let terms = a
            .terms
            .iter()
            .map(|t| {
                let mut e = [0u32; MAX_VARS];
                for (i, &target) in map.iter().enumerate() {
                    e[target] += t.mono.exp(i);
                }
                Term {
                    coeff: t.coeff,
                    mono: Monomial::from_exponents(&e[..self.nvars.max(1)])
                        .expect("remapped monomial"),
                }
            })
            .collect();
        self.from_terms(terms)
    }

    /// Exact division `a / b`; `None` if `b` does not divide `a`.
    pub fn divide_exact(&self, a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
        let bl = *b.lead()?;
        let inv = self.field.inv(bl.coeff);
        let mut rem = a.clone();
        let mut quot = Vec::new();
        while let Some(t) = rem.lead().copied() {
            if !bl.mono.divides(&t.mono) {
                return None;
            }
            let m = bl.mono.quotient_of(&t.mono);
            let c = self.field.mul(t.coeff, inv);
            quot.push(Term { coeff: c, mono: m });
            rem = self.add_scaled_shifted(&rem, self.field.neg(c), &m, b);
        }
        Some(self.from_terms(quot))
    }
}
