//! Brute-force linear algebra over `F_p`, independent of the Gröbner kernel.
//!
//! Ideals are homogeneous; a degree-`d` piece is the span of all products
//! `m * g` of degree `d`, row-reduced as dense vectors over the monomial basis.

#![allow(dead_code)]

use std::collections::HashMap;

use linkclose::{Monomial, PolyRing, Polynomial, Term};
use rand::Rng;

/// Exponent vector and coefficient pairs.
pub type Dense = Vec<(Vec<u32>, u64)>;

pub fn terms_of(f: &Polynomial, n: usize) -> Dense {
    f.terms()
        .iter()
        .map(|t| ((0..n).map(|i| t.mono.exp(i)).collect(), t.coeff as u64))
        .collect()
}

fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Row-echelon span of vectors over `F_p`.
#[derive(Clone, Debug)]
pub struct Span {
    p: u64,
    width: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Span {
    pub fn new(p: u64, width: usize) -> Self {
        Span { p, width, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for k in 0..self.width {
                    v[k] = (v[k] + (self.p - c) * row[k]) % self.p;
                }
            }
        }
        v
    }

    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let v = self.reduce(v);
        let Some(piv) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let s = inv(v[piv], self.p);
        let v: Vec<u64> = v.iter().map(|c| c * s % self.p).collect();
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for k in 0..self.width {
                    row[k] = (row[k] + (self.p - c) * v[k]) % self.p;
                }
            }
        }
        self.rows.push((piv, v));
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&c| c == 0)
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.rows.iter().map(|(_, r)| r)
    }

    pub fn same_as(&self, other: &Span) -> bool {
        self.dim() == other.dim() && other.basis().all(|v| self.contains(v))
    }
}

pub struct Oracle {
    pub p: u64,
    pub n: usize,
}

impl Oracle {
    pub fn for_ring(r: &PolyRing) -> Self {
        Oracle { p: r.p() as u64, n: r.nvars }
    }

    fn index(&self, d: u32) -> (Vec<Vec<u32>>, HashMap<Vec<u32>, usize>) {
        let basis = monomials(self.n, d);
        let idx = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        (basis, idx)
    }

    fn degree(e: &[u32]) -> u32 {
        e.iter().sum()
    }

    /// Homogeneous component of degree `d` as a dense vector.
    fn component(&self, f: &Dense, d: u32, idx: &HashMap<Vec<u32>, usize>) -> Vec<u64> {
        let mut v = vec![0; idx.len()];
        for (e, c) in f {
            if Self::degree(e) == d {
                let k = idx[e];
                v[k] = (v[k] + c) % self.p;
            }
        }
        v
    }

    fn shift(&self, f: &Dense, m: &[u32]) -> Dense {
        f.iter()
            .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), *c))
            .collect()
    }

    fn gen_degree(g: &Dense) -> Option<u32> {
        g.iter().map(|(e, _)| Self::degree(e)).max()
    }

    /// The degree-`d` piece of the ideal generated by homogeneous `gens`.
    pub fn piece(&self, gens: &[Polynomial], d: u32) -> Span {
        let (basis, idx) = self.index(d);
        let mut span = Span::new(self.p, basis.len());
        for g in gens {
            let g = terms_of(g, self.n);
            let Some(dg) = Self::gen_degree(&g) else { continue };
            if dg > d {
                continue;
            }
            for m in monomials(self.n, d - dg) {
                span.insert(self.component(&self.shift(&g, &m), d, &idx));
            }
        }
        span
    }

    /// Membership of any polynomial, component by component.
    pub fn member(&self, gens: &[Polynomial], f: &Polynomial) -> bool {
        let f = terms_of(f, self.n);
        let degrees: std::collections::BTreeSet<u32> =
            f.iter().map(|(e, _)| Self::degree(e)).collect();
        degrees.into_iter().all(|d| {
            let (_, idx) = self.index(d);
            self.piece(gens, d).contains(&self.component(&f, d, &idx))
        })
    }

    /// Degree-`d` piece of `A : B` as the kernel of `h -> (h b_j mod A)_j`.
    pub fn colon_piece(&self, a: &[Polynomial], b: &[Polynomial], d: u32) -> Span {
        let (basis, _) = self.index(d);
        let bs: Vec<(Dense, u32)> = b
            .iter()
            .map(|g| terms_of(g, self.n))
            .filter_map(|g| Self::gen_degree(&g).map(|dg| (g, dg)))
            .collect();
        let targets: Vec<(Span, HashMap<Vec<u32>, usize>)> = bs
            .iter()
            .map(|(_, dg)| (self.piece(a, d + dg), self.index(d + dg).1))
            .collect();
        let images: Vec<Vec<u64>> = basis
            .iter()
            .map(|m| {
                let mut img = Vec::new();
                for ((g, dg), (span, idx)) in bs.iter().zip(&targets) {
                    let v = self.component(&self.shift(g, m), d + dg, idx);
                    img.extend(span.reduce(v));
                }
                img
            })
            .collect();
        // Gaussian elimination on [image | identity]; zero-image rows span the kernel.
        let w = images.first().map_or(0, |v| v.len());
        let nb = basis.len();
        let mut rows: Vec<Vec<u64>> = images
            .into_iter()
            .enumerate()
            .map(|(k, mut img)| {
                img.extend((0..nb).map(|j| u64::from(j == k)));
                img
            })
            .collect();
        let mut r = 0;
        for col in 0..w {
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let s = inv(rows[r][col], self.p);
            for x in rows[r].iter_mut() {
                *x = *x * s % self.p;
            }
            for i in 0..rows.len() {
                if i != r && rows[i][col] != 0 {
                    let c = rows[i][col];
                    let pivot = rows[r].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pivot) {
                        *x = (*x + (self.p - c) * y) % self.p;
                    }
                }
            }
            r += 1;
        }
        let mut kernel = Span::new(self.p, nb);
        for row in rows.into_iter().skip(r) {
            kernel.insert(row[w..].to_vec());
        }
        kernel
    }

    /// `l(S/I)` for an m-primary homogeneous ideal, or `None` if some piece
    /// below `max_deg` is still proper at the cutoff.
    pub fn colength(&self, gens: &[Polynomial], max_deg: u32) -> Option<u64> {
        let mut total = 0;
        for d in 0..=max_deg {
            let full = monomials(self.n, d).len();
            let dim = self.piece(gens, d).dim();
            if dim == full {
                return Some(total);
            }
            total += (full - dim) as u64;
        }
        None
    }

    /// Pieces of two ideals agree in every degree up to `max_deg`.
    pub fn same_ideal(&self, a: &[Polynomial], b: &[Polynomial], max_deg: u32) -> bool {
        (0..=max_deg).all(|d| self.piece(a, d).same_as(&self.piece(b, d)))
    }

    /// `A : B` agrees with `c` in every degree up to `max_deg`.
    pub fn colon_matches(
        &self,
        a: &[Polynomial],
        b: &[Polynomial],
        c: &[Polynomial],
        max_deg: u32,
    ) -> bool {
        (0..=max_deg).all(|d| self.colon_piece(a, b, d).same_as(&self.piece(c, d)))
    }
}

/// A random homogeneous polynomial of degree `d` with at most `max_terms` terms.
pub fn random_form<R: Rng>(ring: &PolyRing, d: u32, max_terms: usize, rng: &mut R) -> Polynomial {
    let basis = monomials(ring.nvars, d);
    let count = rng.gen_range(1..=max_terms.min(basis.len()));
    let terms = (0..count)
        .map(|_| {
            let e = &basis[rng.gen_range(0..basis.len())];
            Term {
                coeff: rng.gen_range(1..ring.p()),
                mono: Monomial::from_exponents(e).unwrap(),
            }
        })
        .collect();
    ring.from_terms(terms)
}

/// Up to three random forms of degree 1..=3.
pub fn random_ideal<R: Rng>(ring: &PolyRing, rng: &mut R) -> Vec<Polynomial> {
    let k = rng.gen_range(1..=3);
    (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            random_form(ring, d, 3, rng)
        })
        .filter(|f| !f.is_zero())
        .collect()
}
