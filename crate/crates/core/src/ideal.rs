//! Ideals of a [`RingContext`] and the ideal calculus on their lifts.
//!
//! Every ideal of `R = S/(f)` is represented by its preimage in `S`, i.e. the
//! ideal generated by its generators together with `f`. Equality, membership
//! and all derived operations run on that lift.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{AlgError, Result};
use crate::groebner::{eliminate, Colength, ReducedGB};
use crate::params::monomials_of_degree;
use crate::poly::{PolyRing, Polynomial};
use crate::ring::RingContext;

#[derive(Clone)]
pub struct Ideal {
    ring: Arc<RingContext>,
    gens: Vec<Polynomial>,
    gb: OnceLock<ReducedGB>,
    shown: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    /// Builds an ideal; zero generators are dropped and duplicates removed.
    pub fn new(ring: &Arc<RingContext>, gens: Vec<Polynomial>) -> Ideal {
        let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            let g = ring.poly_ring().convert(&g);
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ideal {
            ring: ring.clone(),
            gens: out,
            gb: OnceLock::new(),
            shown: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Generators of the preimage in the ambient polynomial ring.
    pub fn lift_gens(&self) -> Vec<Polynomial> {
        let mut g = self.gens.clone();
        if let Some(f) = self.ring.relation() {
            g.push(f.clone());
        }
        g
    }

    /// Reduced grevlex Gröbner basis of the lift, computed once.
    pub fn gb(&self) -> &ReducedGB {
        self.gb
            .get_or_init(|| ReducedGB::compute(self.ring.poly_ring(), &self.lift_gens()))
    }

    /// Canonical generators, by increasing degree and decreasing lead term
    /// within a degree. In a polynomial ring this is the reduced basis. In a
    /// quotient the relation and every basis element generated by smaller
    /// kept ones (modulo the relation) are dropped, and an element congruent
    /// to a monomial is shown as that monomial.
    pub fn canonical_gens(&self) -> &[Polynomial] {
        self.shown.get_or_init(|| {
            let r = self.ring.poly_ring();
            let mut basis = self.gb().basis().to_vec();
            basis.reverse();
            let mut kept: Vec<Polynomial> = match self.ring.relation() {
                None => basis,
                Some(f) => {
                    let mut kept: Vec<Polynomial> = Vec::new();
                    for g in basis {
                        let mut trial = kept.clone();
                        trial.push(f.clone());
                        if !ReducedGB::compute(r, &trial).contains(&g) {
                            kept.push(g);
                        }
                    }
                    // Prefer a monomial representative modulo the relation.
                    let rel = ReducedGB::compute(r, std::slice::from_ref(f));
                    for g in kept.iter_mut().filter(|g| g.len() > 1) {
                        let target = r.monic(g);
                        let deg = g.total_degree().unwrap_or(0);
                        if let Some(m) = monomials_of_degree(self.ring.nvars(), deg)
                            .into_iter()
                            .map(|m| r.monomial(1, m))
                            .find(|m| r.monic(&rel.normal_form(m)) == target)
                        {
                            *g = m;
                        }
                    }
                    kept
                }
            };
            kept.sort_by(|a, b| {
                a.total_degree()
                    .cmp(&b.total_degree())
                    .then_with(|| r.cmp(&b.terms()[0].mono, &a.terms()[0].mono))
            });
            kept
        })
    }

    /// The ideal on its canonical generators.
    pub fn canonical(&self) -> Ideal {
        Ideal::new(&self.ring, self.canonical_gens().to_vec())
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(AlgError::RingMismatch)
        }
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.gb().contains(f)
    }

    pub fn is_subset(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.gens.iter().all(|g| other.contains(g)))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.gb().basis() == other.gb().basis())
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit_ideal()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| {
            self.ring
                .relation()
                .is_some_and(|f| principal_contains(self.ring.poly_ring(), f, g))
        })
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let r = self.ring.poly_ring();
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(r.mul(a, b));
            }
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// Adds polynomials to the generator list.
    pub fn with(&self, extra: &[Polynomial]) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Multiplies every generator by `c`.
    pub fn scaled(&self, c: &Polynomial) -> Ideal {
        let r = self.ring.poly_ring();
        Ideal::new(&self.ring, self.gens.iter().map(|g| r.mul(g, c)).collect())
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_subset(other)? {
            return Ok(self.clone());
        }
        if other.is_subset(self)? {
            return Ok(other.clone());
        }
        let gens = intersect_gens(self.ring.poly_ring(), &self.lift_gens(), &other.lift_gens());
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `self : other = { u : u * other ⊆ self }`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let r = self.ring.poly_ring();
        let lift = self.gb().basis().to_vec();
        let mut acc: Option<Vec<Polynomial>> = None;
        for b in &other.gens {
            if self.contains(b) {
                continue;
            }
            let part = colon_principal(r, &lift, b)?;
            acc = Some(match acc {
                None => part,
                Some(prev) => {
                    let prev_ideal = Ideal::new(&self.ring, prev.clone());
                    let part_ideal = Ideal::new(&self.ring, part.clone());
                    if prev_ideal.is_subset(&part_ideal)? {
                        prev
                    } else if part_ideal.is_subset(&prev_ideal)? {
                        part
                    } else {
                        intersect_gens(r, &prev, &part)
                    }
                }
            });
        }
        Ok(match acc {
            None => self.ring.unit_ideal(),
            Some(gens) => Ideal::new(&self.ring, gens),
        })
    }

    pub fn colon_poly(&self, g: &Polynomial) -> Result<Ideal> {
        self.colon(&Ideal::new(&self.ring, vec![g.clone()]))
    }

    /// Krull dimension of `R/I`.
    pub fn krull_dim(&self) -> Result<usize> {
        self.gb().krull_dim()
    }

    /// Height of the ideal in `R`.
    pub fn height(&self) -> Result<usize> {
        let dim_quot = self.krull_dim()?;
        Ok(self.ring.dim() - dim_quot)
    }

    /// Length of `R/I` (computed on the lift).
    pub fn colength(&self) -> Colength {
        self.gb().colength()
    }

    pub fn is_m_primary(&self) -> bool {
        matches!(self.colength(), Colength::Finite(n) if n > 0)
    }

    /// Drops generators that lie in the ideal of the others (and `f`).
    pub fn minimalized(&self) -> Ideal {
        let mut gens = self.gens.clone();
        let mut k = 0;
        while k < gens.len() {
            let mut rest: Vec<Polynomial> = gens
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, g)| g.clone())
                .collect();
            if let Some(f) = self.ring.relation() {
                rest.push(f.clone());
            }
            let gb = ReducedGB::compute(self.ring.poly_ring(), &rest);
            if gb.contains(&gens[k]) {
                gens.remove(k);
            } else {
                k += 1;
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// True when the ideal is generated by `height` elements.
    pub fn is_complete_intersection(&self) -> Result<bool> {
        if self.is_unit() {
            return Ok(false);
        }
        Ok(self.minimalized().gens.len() == self.height()?)
    }

    /// Canonical generators printed one polynomial per entry.
    pub fn gb_strings(&self) -> Vec<String> {
        self.canonical_gens()
            .iter()
            .map(|g| self.ring.format(g))
            .collect()
    }

    pub fn gens_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.format(g)).collect()
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Ideal) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", self.gens_strings().join(", "))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gb_strings().join(", "))
    }
}

fn principal_contains(r: &PolyRing, f: &Polynomial, g: &Polynomial) -> bool {
    r.divide_exact(g, f).is_some()
}

/// Generators of `(a) ∩ (b)` in `S`, via `t*a + (1-t)*b` and elimination of `t`.
pub fn intersect_gens(r: &PolyRing, a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = r.nvars;
    let ext = r.with_nvars(n + 1).expect("room for the auxiliary variable");
    let t = ext.var(n);
    let one_minus_t = ext.sub(&ext.one(), &t);
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for g in a {
        gens.push(ext.mul(&t, &ext.convert(g)));
    }
    for g in b {
        gens.push(ext.mul(&one_minus_t, &ext.convert(g)));
    }
    eliminate(&ext, &gens, 1 << n)
        .into_iter()
        .map(|g| r.convert(&g))
        .collect()
}

/// Generators of `(a) : g` in `S`.
pub fn colon_principal(r: &PolyRing, a: &[Polynomial], g: &Polynomial) -> Result<Vec<Polynomial>> {
    if g.is_zero() {
        return Ok(vec![r.one()]);
    }
    let inter = intersect_gens(r, a, std::slice::from_ref(g));
    inter
        .iter()
        .map(|h| {
            r.divide_exact(h, g).ok_or_else(|| {
                AlgError::DivisionWitnessFailure("intersection element not divisible".into())
            })
        })
        .collect()
}

/// Greatest common divisor in `S` (monic), from `a*b / lcm(a, b)`.
pub fn poly_gcd(r: &PolyRing, a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return r.monic(b);
    }
    if b.is_zero() {
        return r.monic(a);
    }
    let lcm = intersect_gens(r, std::slice::from_ref(a), std::slice::from_ref(b));
    debug_assert_eq!(lcm.len(), 1);
    let prod = r.mul(a, b);
    let g = r
        .divide_exact(&prod, &lcm[0])
        .expect("lcm divides the product");
    r.monic(&g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(r: &Arc<RingContext>, s: &str) -> Ideal {
        r.ideal_from_list(s).unwrap()
    }

    #[test]
    fn display_in_quotient() {
        let r = RingContext::fermat2();
        let i = ideal(&r, "y^4, x*y^3+x*z^3, z^4, x*y*z, x^3+y^3+z^3");
        assert_eq!(i.to_string(), "(x*y*z, x^4, y^4, z^4)");
        assert_eq!(i.canonical(), i);
        assert_eq!(ideal(&r, "x^3").to_string(), "(x^3)");
        let s = RingContext::poly2_2();
        assert_eq!(ideal(&s, "y, x").to_string(), "(x, y)");
    }

    #[test]
    fn sums_and_products() {
        let r = RingContext::poly2_2();
        let s = ideal(&r, "x").sum(&ideal(&r, "y")).unwrap();
        assert_eq!(s, ideal(&r, "x,y"));
        let m = ideal(&r, "x,y");
        assert_eq!(m.product(&m).unwrap(), ideal(&r, "x^2,x*y,y^2"));
        assert_eq!(m.sum(&r.zero_ideal()).unwrap(), m);
    }

    #[test]
    fn intersections() {
        let r = RingContext::poly2_2();
        assert_eq!(
            ideal(&r, "x").intersect(&ideal(&r, "y")).unwrap(),
            ideal(&r, "x*y")
        );
        let a = ideal(&r, "x^2,y");
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(
            a.intersect(&ideal(&r, "x")).unwrap(),
            ideal(&r, "x^2,x*y")
        );
    }

    #[test]
    fn colons() {
        let r = RingContext::poly2_2();
        assert_eq!(
            ideal(&r, "x*y").colon(&ideal(&r, "x")).unwrap(),
            ideal(&r, "y")
        );
        let i = ideal(&r, "x^2,y^3");
        assert_eq!(i.colon(&r.unit_ideal()).unwrap(), i);
        assert!(i.colon(&i).unwrap().is_unit());
    }

    #[test]
    fn fermat_example_link() {
        let r = RingContext::fermat2();
        let a = ideal(&r, "x^2,y^2");
        let i = ideal(&r, "x^2,y^2,z^2");
        assert_eq!(a.colon(&i).unwrap(), ideal(&r, "x^2,y^2,z"));
    }

    #[test]
    fn heights() {
        let r3 = RingContext::poly2_3();
        assert_eq!(ideal(&r3, "x,y").height().unwrap(), 2);
        let f = RingContext::fermat2();
        assert_eq!(f.maximal_ideal().height().unwrap(), 2);
        let r2 = RingContext::poly2_2();
        assert_eq!(ideal(&r2, "x").height().unwrap(), 1);
        assert_eq!(r2.unit_ideal().height(), Err(AlgError::UnitIdeal));
    }

    #[test]
    fn ring_mismatch() {
        let a = RingContext::poly2_2().maximal_ideal();
        let b = RingContext::poly2_3().maximal_ideal();
        assert_eq!(a.sum(&b).unwrap_err(), AlgError::RingMismatch);
        assert_eq!(a.colon(&b).unwrap_err(), AlgError::RingMismatch);
    }

    #[test]
    fn gcds() {
        let r = RingContext::polynomial(3, &["x", "y"]).unwrap();
        let pr = r.poly_ring();
        let f = r.parse("x^2*y+x*y^2").unwrap();
        let dx = pr.derivative(&f, 0);
        assert_eq!(poly_gcd(pr, &f, &dx), r.parse("y").unwrap());
        assert!(poly_gcd(pr, &r.parse("x").unwrap(), &r.parse("y").unwrap()).is_one());
    }

    #[test]
    fn zero_ideal_in_quotient() {
        let r = RingContext::fermat2();
        assert!(ideal(&r, "x^3+y^3+z^3").is_zero());
        assert!(!ideal(&r, "x").is_zero());
    }
}
