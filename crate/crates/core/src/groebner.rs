//! Buchberger's algorithm, normal forms, elimination, dimension and colength.
//!
//! Pairs are managed with the Gebauer–Möller installation of both Buchberger
//! criteria and selected by the sugar flavour of the normal strategy. The
//! output is always the reduced, monic, lead-sorted basis, so two generating
//! sets of the same ideal produce identical values.

use std::cmp::Ordering;

use crate::error::{AlgError, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial, Term};

/// Reduced Gröbner basis together with the ring and order it was computed in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedGB {
    ring: PolyRing,
    basis: Vec<Polynomial>,
}

/// Vector-space dimension of `S/I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

impl std::fmt::Display for Colength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => write!(f, "infinite"),
        }
    }
}

impl ReducedGB {
    /// Runs Buchberger's algorithm on `gens` in `ring`'s order.
    pub fn compute(ring: &PolyRing, gens: &[Polynomial]) -> ReducedGB {
        let basis = buchberger(ring, gens);
        ReducedGB { ring: *ring, basis }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Polynomial> {
        self.basis
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    pub fn leads(&self) -> Vec<Monomial> {
        self.basis.iter().filter_map(|g| g.lead_mono()).collect()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let f = self.ring.convert(f);
        reduce_full(&self.ring, f, &self.basis)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Krull dimension of `S/I` from the largest set of variables that
    /// supports no leading monomial.
    pub fn krull_dim(&self) -> Result<usize> {
        if self.is_unit_ideal() {
            return Err(AlgError::UnitIdeal);
        }
        let n = self.ring.nvars;
        let leads = self.leads();
        let mut best = 0;
        for subset in 0u32..(1u32 << n) {
            let size = subset.count_ones() as usize;
            if size <= best {
                continue;
            }
            if leads.iter().all(|m| !m.supported_in(subset)) {
                best = size;
            }
        }
        Ok(best)
    }

    /// Number of standard monomials.
    pub fn colength(&self) -> Colength {
        if self.is_unit_ideal() {
            return Colength::Finite(0);
        }
        let n = self.ring.nvars;
        let leads = self.leads();
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let pure = leads
                .iter()
                .filter(|m| m.supported_in(1 << i))
                .map(|m| m.exp(i))
                .min();
            match pure {
                Some(b) => bounds.push(b),
                None => return Colength::Infinite,
            }
        }
        let mut exps = vec![0u32; n];
        Colength::Finite(count_standard(&leads, &bounds, &mut exps, 0))
    }

    /// Standard monomials, when finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.ring.nvars;
        let leads = self.leads();
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            bounds.push(
                leads
                    .iter()
                    .filter(|m| m.supported_in(1 << i))
                    .map(|m| m.exp(i))
                    .min()?,
            );
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        collect_standard(&leads, &bounds, &mut exps, 0, &mut out);
        Some(out)
    }
}

fn count_standard(leads: &[Monomial], bounds: &[u32], exps: &mut [u32], var: usize) -> u64 {
    let m = Monomial::from_exponents(exps).unwrap();
    if leads.iter().any(|l| l.divides(&m)) {
        return 0;
    }
    if var == exps.len() {
        return 1;
    }
    let mut total = 0;
    for e in 0..bounds[var] {
        exps[var] = e;
        let c = count_standard(leads, bounds, exps, var + 1);
        if c == 0 {
            break;
        }
        total += c;
    }
    exps[var] = 0;
    total
}

fn collect_standard(
    leads: &[Monomial],
    bounds: &[u32],
    exps: &mut [u32],
    var: usize,
    out: &mut Vec<Monomial>,
) -> bool {
    let m = Monomial::from_exponents(exps).unwrap();
    if leads.iter().any(|l| l.divides(&m)) {
        return false;
    }
    if var == exps.len() {
        out.push(m);
        return true;
    }
    for e in 0..bounds[var] {
        exps[var] = e;
        if !collect_standard(leads, bounds, exps, var + 1, out) {
            break;
        }
    }
    exps[var] = 0;
    true
}

/// Elements of the ideal generated by `gens` that involve no variable in `drop_mask`.
///
/// The result is a Gröbner basis of the elimination ideal for grevlex on the
/// kept variables.
pub fn eliminate(ring: &PolyRing, gens: &[Polynomial], drop_mask: u32) -> Vec<Polynomial> {
    if drop_mask == 0 {
        return ReducedGB::compute(ring, gens).into_basis();
    }
    let elim_ring = ring.with_order(MonomialOrder::Elim(drop_mask));
    let gb = ReducedGB::compute(&elim_ring, gens);
    gb.into_basis()
        .into_iter()
        .filter(|g| g.support() & drop_mask == 0)
        .map(|g| ring.convert(&g))
        .collect()
}

/// Removes the leading term of `f` using `g` (whose lead must divide it) and
/// returns `f - c*m*g` without its cancelled head.
fn cancel_lead(ring: &PolyRing, f: &[Term], g: &Polynomial) -> Vec<Term> {
    let fl = f[0];
    let gl = g.terms()[0];
    let m = gl.mono.quotient_of(&fl.mono);
    let field = &ring.field;
    let c = field.neg(field.mul(fl.coeff, field.inv(gl.coeff)));
    let a = &f[1..];
    let b = &g.terms()[1..];
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].mono.mul(&m);
        match ring.cmp(&a[i].mono, &bm) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    coeff: field.mul(b[j].coeff, c),
                    mono: bm,
                });
                j += 1;
            }
            Ordering::Equal => {
                let s = field.add(a[i].coeff, field.mul(b[j].coeff, c));
                if s != 0 {
                    out.push(Term { coeff: s, mono: bm });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push(Term {
            coeff: field.mul(t.coeff, c),
            mono: t.mono.mul(&m),
        });
    }
    out
}

fn find_reducer<'a>(
    m: &Monomial,
    basis: &'a [Polynomial],
    active: impl Fn(usize) -> bool,
) -> Option<&'a Polynomial> {
    basis
        .iter()
        .enumerate()
        .find(|(i, g)| active(*i) && g.terms()[0].mono.divides(m))
        .map(|(_, g)| g)
}

/// Full reduction of `f` modulo `basis` (lead and tail).
pub(crate) fn reduce_full(ring: &PolyRing, f: Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut rem: Vec<Term> = Vec::new();
    let mut cur = f.into_terms();
    let mut start = 0;
    while start < cur.len() {
        let lead = cur[start].mono;
        match find_reducer(&lead, basis, |_| true) {
            Some(g) => {
                cur = cancel_lead(ring, &cur[start..], g);
                start = 0;
            }
            None => {
                rem.push(cur[start]);
                start += 1;
            }
        }
    }
    ring.from_terms(rem)
}

/// Reduces only the leading term until it is irreducible.
fn reduce_top(
    ring: &PolyRing,
    f: Polynomial,
    basis: &[Polynomial],
    active: &[bool],
) -> Polynomial {
    let mut cur = f.into_terms();
    while let Some(t) = cur.first() {
        match find_reducer(&t.mono, basis, |i| active[i]) {
            Some(g) => cur = cancel_lead(ring, &cur, g),
            None => break,
        }
    }
    ring.monic(&ring.from_terms(cur))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn spoly(ring: &PolyRing, f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let fl = f.terms()[0];
    let gl = g.terms()[0];
    let mf = fl.mono.quotient_of(lcm);
    let mg = gl.mono.quotient_of(lcm);
    let a = ring.mul_term(f, ring.field.inv(fl.coeff), &mf);
    let b = ring.mul_term(g, ring.field.inv(gl.coeff), &mg);
    ring.sub(&a, &b)
}

fn sugar_of(f: &Polynomial) -> u32 {
    f.total_degree().unwrap_or(0)
}

fn buchberger(ring: &PolyRing, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut input: Vec<Polynomial> = gens
        .iter()
        .map(|g| ring.monic(&ring.convert(g)))
        .filter(|g| !g.is_zero())
        .collect();
    if input.iter().any(|g| g.is_unit()) {
        return vec![ring.one()];
    }
    // Smallest leads first keeps the early basis small.
    input.sort_by(|a, b| ring.cmp(&a.terms()[0].mono, &b.terms()[0].mono));
    input.dedup();

    let mut polys: Vec<Polynomial> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut queue: Vec<(Polynomial, u32)> = input
        .into_iter()
        .map(|g| {
            let s = sugar_of(&g);
            (g, s)
        })
        .collect();
    queue.reverse();

    loop {
        let (h, sugar) = if let Some(item) = queue.pop() {
            item
        } else if let Some(idx) = select_pair(ring, &pairs) {
            let pair = pairs.swap_remove(idx);
            (spoly(ring, &polys[pair.i], &polys[pair.j], &pair.lcm), pair.sugar)
        } else {
            break;
        };
        let h = reduce_top(ring, h, &polys, &active);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return vec![ring.one()];
        }
        update(ring, &mut polys, &mut sugars, &mut active, &mut pairs, h, sugar);
    }

    let basis: Vec<Polynomial> = polys
        .into_iter()
        .zip(active)
        .filter_map(|(g, a)| a.then_some(g))
        .collect();
    interreduce(ring, basis)
}

fn select_pair(ring: &PolyRing, pairs: &[Pair]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, p) in pairs.iter().enumerate() {
        best = match best {
            None => Some(k),
            Some(b) => {
                let q = &pairs[b];
                let better = match p.sugar.cmp(&q.sugar) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => match ring.cmp(&p.lcm, &q.lcm) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => (p.i, p.j) < (q.i, q.j),
                    },
                };
                if better {
                    Some(k)
                } else {
                    Some(b)
                }
            }
        };
    }
    best
}

/// Gebauer–Möller update: installs `h` and prunes the pair set.
fn update(
    _ring: &PolyRing,
    polys: &mut Vec<Polynomial>,
    sugars: &mut Vec<u32>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Polynomial,
    sugar: u32,
) {
    let hl = h.terms()[0].mono;
    let hidx = polys.len();
    let sugar = sugar.max(sugar_of(&h));

    let candidates: Vec<(usize, Monomial)> = (0..polys.len())
        .filter(|&i| active[i])
        .map(|i| (i, polys[i].terms()[0].mono.lcm(&hl)))
        .collect();

    // Chain criterion among the new pairs.
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (k, (i, lcm)) in candidates.iter().enumerate() {
        let gl = polys[*i].terms()[0].mono;
        if hl.is_coprime(&gl) {
            kept.push((*i, *lcm));
            continue;
        }
        let dominated = candidates
            .iter()
            .enumerate()
            .any(|(k2, (_, l2))| {
                k2 != k && l2.divides(lcm) && (l2 != lcm || k2 < k)
            });
        if !dominated {
            kept.push((*i, *lcm));
        }
    }
    // Product criterion.
    let new_pairs: Vec<Pair> = kept
        .into_iter()
        .filter(|(i, _)| !hl.is_coprime(&polys[*i].terms()[0].mono))
        .map(|(i, lcm)| {
            let gi = &polys[i];
            let si = sugars[i] - gi.terms()[0].mono.degree();
            let sh = sugar - hl.degree();
            Pair {
                i,
                j: hidx,
                lcm,
                sugar: si.max(sh) + lcm.degree(),
            }
        })
        .collect();

    // Old pairs made redundant by h.
    pairs.retain(|p| {
        if !hl.divides(&p.lcm) {
            return true;
        }
        let li = polys[p.i].terms()[0].mono.lcm(&hl);
        let lj = polys[p.j].terms()[0].mono.lcm(&hl);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(new_pairs);

    for i in 0..polys.len() {
        if active[i] && hl.divides(&polys[i].terms()[0].mono) {
            active[i] = false;
        }
    }
    polys.push(h);
    sugars.push(sugar);
    active.push(true);
}

/// Minimalizes, tail-reduces and sorts a Gröbner basis.
fn interreduce(ring: &PolyRing, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| ring.cmp(&a.terms()[0].mono, &b.terms()[0].mono));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.terms()[0].mono;
        if !minimal.iter().any(|m| m.terms()[0].mono.divides(&lm)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let g = &minimal[k];
        let head = g.terms()[0];
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p.clone())
            .collect();
        let tail = ring.from_terms(g.terms()[1..].to_vec());
        let tail = reduce_full(ring, tail, &others);
        let mut terms = vec![head];
        terms.extend_from_slice(tail.terms());
        out.push(ring.monic(&ring.from_terms(terms)));
    }
    out.sort_by(|a, b| ring.cmp(&b.terms()[0].mono, &a.terms()[0].mono));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::{format_polynomial, parse_polynomial};

    fn setup(p: u32, vars: &[&str]) -> (PolyRing, Vec<String>) {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let r = PolyRing::new(PrimeField::new(p).unwrap(), names.len(), MonomialOrder::GrevLex)
            .unwrap();
        (r, names)
    }

    fn polys(r: &PolyRing, names: &[String], src: &[&str]) -> Vec<Polynomial> {
        src.iter()
            .map(|s| parse_polynomial(s, names, r).unwrap())
            .collect()
    }

    fn show(gb: &ReducedGB, names: &[String]) -> Vec<String> {
        gb.basis()
            .iter()
            .map(|g| format_polynomial(g, names))
            .collect()
    }

    #[test]
    fn coprime_squares_are_already_reduced() {
        let (r, v) = setup(2, &["x", "y", "z"]);
        let gb = ReducedGB::compute(&r, &polys(&r, &v, &["z^2", "x^2", "y^2"]));
        assert_eq!(show(&gb, &v), vec!["x^2", "y^2", "z^2"]);
    }

    #[test]
    fn autoreduction() {
        let (r, v) = setup(2, &["x", "y"]);
        let gb = ReducedGB::compute(&r, &polys(&r, &v, &["x+y", "y"]));
        assert_eq!(show(&gb, &v), vec!["x", "y"]);
    }

    #[test]
    fn s_pair_closure() {
        // x^2+xy, y^2: S(x^2+xy, y^2) = y*(x^2+xy) - x^2*y^2/y^2 ... gives x*y^2 -> 0,
        // and the basis {x^2+xy, y^2} is already Gröbner; the tail xy is not a lead multiple.
        let (r, v) = setup(2, &["x", "y"]);
        let gb = ReducedGB::compute(&r, &polys(&r, &v, &["x^2+x*y", "y^2"]));
        assert_eq!(show(&gb, &v), vec!["x^2+x*y", "y^2"]);
        let x3 = parse_polynomial("x^3", &v, &r).unwrap();
        // x^3 = x*(x^2+xy) - x^2 y, x^2 y = y(x^2+xy) - x y^2
        assert!(gb.contains(&x3));
    }

    #[test]
    fn normal_forms() {
        let (r, v) = setup(2, &["x", "y", "z"]);
        let gb = ReducedGB::compute(&r, &polys(&r, &v, &["x", "y"]));
        let z2 = parse_polynomial("z^2", &v, &r).unwrap();
        assert_eq!(gb.normal_form(&z2), z2);
        let gb = ReducedGB::compute(&r, &polys(&r, &v, &["x^2", "y^2", "z^2"]));
        let f = parse_polynomial("x^3+y^3+z^3", &v, &r).unwrap();
        assert!(gb.normal_form(&f).is_zero());
    }

    #[test]
    fn unit_and_zero() {
        let (r, v) = setup(3, &["x", "y"]);
        let gb = ReducedGB::compute(&r, &polys(&r, &v, &["x*y-1", "x"]));
        assert!(gb.is_unit_ideal());
        let gb = ReducedGB::compute(&r, &[]);
        assert!(gb.is_zero_ideal());
        assert_eq!(gb.krull_dim().unwrap(), 2);
    }

    #[test]
    fn dimensions() {
        let (r, v) = setup(2, &["x", "y", "z"]);
        let dim = |s: &[&str]| ReducedGB::compute(&r, &polys(&r, &v, s)).krull_dim();
        assert_eq!(dim(&["x", "y"]).unwrap(), 1);
        assert_eq!(dim(&["x^3+y^3+z^3"]).unwrap(), 2);
        assert_eq!(dim(&["1"]), Err(AlgError::UnitIdeal));
    }

    #[test]
    fn colengths() {
        let (r, v) = setup(2, &["x", "y", "z"]);
        let col = |s: &[&str]| ReducedGB::compute(&r, &polys(&r, &v, s)).colength();
        assert_eq!(col(&["x", "y", "z"]), Colength::Finite(1));
        assert_eq!(
            col(&["x^2", "y^2", "z^2", "x^3+y^3+z^3"]),
            Colength::Finite(8)
        );
        assert_eq!(col(&["x"]), Colength::Infinite);
        assert_eq!(col(&["1"]), Colength::Finite(0));
    }

    #[test]
    fn elimination_identity_and_projection() {
        let (r, v) = setup(2, &["x", "y"]);
        let g = polys(&r, &v, &["x+y^2"]);
        assert!(eliminate(&r, &g, 0b10).is_empty());
        let g = polys(&r, &v, &["x*y", "y+1"]);
        // y = -1 forces x = 0
        let e = eliminate(&r, &g, 0b10);
        assert_eq!(e, vec![r.var(0)]);
    }
}
