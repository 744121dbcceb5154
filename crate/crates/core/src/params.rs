//! Randomized searches for parameter ideals and systems of parameters, and
//! the unmixedness test built on them.
//!
//! Every search draws from a caller-owned seeded generator, so results are
//! reproducible. Candidates are homogeneous: random `F_p`-combinations of
//! `monomial * generator` products of one fixed degree.

use std::ops::RangeInclusive;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgError, Result};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// Reproducible generator used by every randomized operation.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Default number of whole-sequence attempts per degree bump.
pub const DEFAULT_MAX_TRIES: usize = 16;

/// Largest monomial-multiplier degree tried by the searches.
pub const MAX_BUMP: u32 = 2;

/// All monomials of total degree `deg` in `n` variables.
pub fn monomials_of_degree(n: usize, deg: u32) -> Vec<Monomial> {
    fn rec(n: usize, var: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var + 1 == n {
            cur[var] = left;
            out.push(Monomial::from_exponents(cur).unwrap());
            cur[var] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e;
            rec(n, var + 1, left - e, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if deg == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    let mut cur = vec![0; n];
    rec(n, 0, deg, &mut cur, &mut out);
    out
}

/// Homogeneous generators of `i` that are nonzero in the ring.
fn homogeneous_pool(i: &Ideal) -> Vec<Polynomial> {
    let nonzero_in_ring = |g: &Polynomial| {
        i.ring().relation().is_none_or(|f| {
            i.ring().poly_ring().divide_exact(g, f).is_none()
        })
    };
    let gens: Vec<Polynomial> = i.gens().iter().filter(|g| nonzero_in_ring(g)).cloned().collect();
    if gens.iter().all(|g| g.is_homogeneous()) {
        return gens;
    }
    i.gb()
        .basis()
        .iter()
        .filter(|g| g.is_homogeneous() && nonzero_in_ring(g))
        .cloned()
        .collect()
}

/// Random element of `pool`'s ideal of total degree `deg`, built from
/// products whose multiplier degree is at most `bump`.
fn random_combination(
    i: &Ideal,
    pool: &[Polynomial],
    deg: u32,
    bump: u32,
    rng: &mut SeededRng,
) -> Polynomial {
    let r = i.ring().poly_ring();
    let p = r.p();
    let n = i.ring().nvars();
    let mut acc = Polynomial::zero();
    for g in pool {
        let gd = g.total_degree().unwrap_or(0);
        if gd > deg || deg - gd > bump {
            continue;
        }
        for m in monomials_of_degree(n, deg - gd) {
            let c = rng.gen_range(0..p);
            if c != 0 {
                acc = r.add_scaled_shifted(&acc, c, &m, g);
            }
        }
    }
    acc
}

fn degree_choices(pool: &[Polynomial], bump: u32) -> Vec<u32> {
    let mut degs: Vec<u32> = pool
        .iter()
        .filter_map(|g| g.total_degree())
        .flat_map(|d| (0..=bump).map(move |b| d + b))
        .collect();
    degs.sort_unstable();
    degs.dedup();
    degs
}

/// Extends `seq` by one random element of `pool`'s ideal that raises the
/// height of `(seq)` by one.
fn extend_sequence(
    i: &Ideal,
    pool: &[Polynomial],
    seq: &[Polynomial],
    bump: u32,
    attempts: usize,
    rng: &mut SeededRng,
) -> Result<Option<Polynomial>> {
    let degs = degree_choices(pool, bump);
    if degs.is_empty() {
        return Ok(None);
    }
    let target = seq.len() + 1;
    for _ in 0..attempts {
        let deg = degs[rng.gen_range(0..degs.len())];
        let cand = random_combination(i, pool, deg, bump, rng);
        if cand.is_zero() {
            continue;
        }
        let mut gens = seq.to_vec();
        gens.push(cand.clone());
        let trial = Ideal::new(i.ring(), gens);
        if trial.is_zero() || trial.is_unit() {
            continue;
        }
        if trial.height()? == target {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// A parameter ideal `a ⊆ i` with `ht(a) = ht(i)`, generated by exactly
/// `ht(i)` homogeneous elements. In a Cohen–Macaulay ambient this certifies
/// a regular sequence.
pub fn find_parameter_ideal(i: &Ideal, rng: &mut SeededRng, max_tries: usize) -> Result<Ideal> {
    find_parameter_ideal_bumped(i, rng, max_tries, 0..=MAX_BUMP)
}

/// [`find_parameter_ideal`] restricted to the given multiplier degrees.
pub fn find_parameter_ideal_bumped(
    i: &Ideal,
    rng: &mut SeededRng,
    max_tries: usize,
    bumps: RangeInclusive<u32>,
) -> Result<Ideal> {
    let g = i.height()?;
    if g == 0 {
        return Ok(i.ring().zero_ideal());
    }
    let pool = homogeneous_pool(i);
    for bump in bumps {
        for _ in 0..max_tries {
            let mut seq: Vec<Polynomial> = Vec::with_capacity(g);
            for _ in 0..g {
                match extend_sequence(i, &pool, &seq, bump, 8, rng)? {
                    Some(c) => seq.push(c),
                    None => break,
                }
            }
            if seq.len() == g {
                return Ok(Ideal::new(i.ring(), seq));
            }
        }
    }
    Err(AlgError::ParameterSearchFailed(format!(
        "no height-{g} parameter ideal found inside {i}"
    )))
}

/// Elements `x_1, ..., x_{d-g}` such that `(b, x)` is m-primary.
pub fn extend_to_m_primary(b: &Ideal, rng: &mut SeededRng) -> Result<Vec<Polynomial>> {
    let ring = b.ring();
    let d = ring.dim();
    let g = b.height()?;
    let m = ring.maximal_ideal();
    let mut xs: Vec<Polynomial> = Vec::new();
    let mut current = b.clone();
    for k in g..d {
        let mut found = None;
        'search: for bump in 0..=MAX_BUMP {
            for _ in 0..32 {
                let cand = random_combination(&m, m.gens(), 1 + bump, bump, rng);
                if cand.is_zero() {
                    continue;
                }
                let trial = current.with(std::slice::from_ref(&cand));
                if !trial.is_unit() && trial.height()? == k + 1 {
                    found = Some(cand);
                    break 'search;
                }
            }
        }
        let x = found.ok_or_else(|| {
            AlgError::ParameterSearchFailed(format!("cannot extend {b} to an m-primary ideal"))
        })?;
        current = current.with(std::slice::from_ref(&x));
        xs.push(x);
    }
    Ok(xs)
}

/// `a : (a : i)` for a sampled parameter ideal `a ⊆ i`.
pub fn unmixed_part(i: &Ideal, rng: &mut SeededRng) -> Result<Ideal> {
    if i.is_m_primary() {
        return Ok(i.clone());
    }
    let a = find_parameter_ideal(i, rng, DEFAULT_MAX_TRIES)?;
    unmixed_part_with(i, &a)
}

/// `a : (a : i)` for a given parameter ideal.
pub fn unmixed_part_with(i: &Ideal, a: &Ideal) -> Result<Ideal> {
    a.colon(&a.colon(i)?)
}

pub fn is_unmixed(i: &Ideal, rng: &mut SeededRng) -> Result<bool> {
    unmixed_part(i, rng)?.equals(i)
}
