//! Direct links, delta elements of nested parameter ideals, corner powers,
//! bounded exploration of linkage classes and the m-primary lift of a
//! linkage chain.

use rand::Rng;
use serde::Serialize;

use crate::error::{AlgError, Result};
use crate::frobenius::{bracket_power, FrobeniusExponent};
use crate::ideal::Ideal;
use crate::params::{
    extend_to_m_primary, find_parameter_ideal, find_parameter_ideal_bumped, is_unmixed,
    seeded_rng, SeededRng, DEFAULT_MAX_TRIES, MAX_BUMP,
};
use crate::poly::Polynomial;

/// Node cap for linkage-class exploration.
pub const DEFAULT_NODE_CAP: usize = 64;

/// Sampling attempts per multiplier degree before a link search escalates.
const LINK_ATTEMPTS_PER_BUMP: usize = 8;

/// `J = a : I` for a parameter ideal `a ⊆ I` of the same height, with the
/// double link `a : J = I` verified. Returns `(J, a)`.
pub fn direct_link(
    i: &Ideal,
    a: Option<&Ideal>,
    rng: &mut SeededRng,
) -> Result<(Ideal, Ideal)> {
    if !is_unmixed(i, rng)? {
        return Err(AlgError::NotUnmixed);
    }
    match a {
        Some(a) => link_with(i, a),
        None => sample_link(i, rng),
    }
}

fn link_with(i: &Ideal, a: &Ideal) -> Result<(Ideal, Ideal)> {
    let g = i.height()?;
    if !a.is_subset(i)? || a.height()? != g || a.gens().len() != g {
        return Err(AlgError::ParameterSearchFailed(format!(
            "{a} is not a height-{g} parameter ideal inside {i}"
        )));
    }
    let j = a.colon(i)?;
    if j.is_unit() {
        return Err(AlgError::ParameterSearchFailed(format!(
            "degenerate link: {a} equals {i}"
        )));
    }
    if !a.colon(&j)?.equals(i)? {
        return Err(AlgError::NotUnmixed);
    }
    Ok((j, a.clone()))
}

/// Samples parameter ideals until the link is proper. Assumes `i` unmixed.
fn sample_link(i: &Ideal, rng: &mut SeededRng) -> Result<(Ideal, Ideal)> {
    for bump in 0..=MAX_BUMP {
        for _ in 0..LINK_ATTEMPTS_PER_BUMP {
            let a = match find_parameter_ideal_bumped(i, rng, 4, bump..=bump) {
                Ok(a) => a,
                Err(AlgError::ParameterSearchFailed(_)) => continue,
                Err(e) => return Err(e),
            };
            let j = a.colon(i)?;
            if j.is_unit() {
                continue;
            }
            if !a.colon(&j)?.equals(i)? {
                return Err(AlgError::NotUnmixed);
            }
            return Ok((j, a));
        }
    }
    Err(AlgError::ParameterSearchFailed(format!(
        "no proper link found for {i}"
    )))
}

/// `delta` with `a : b = (a, delta)` and `a : delta = b`, for nested
/// parameter ideals `a ⊆ b` of the same height.
pub fn link_delta(a: &Ideal, b: &Ideal) -> Result<Polynomial> {
    if !a.is_subset(b)? {
        return Err(AlgError::DeltaNotFound(format!("{a} is not inside {b}")));
    }
    let c = a.colon(b)?;
    let r = a.ring().poly_ring();
    let works = |d: &Polynomial| -> Result<bool> {
        Ok(a.with(std::slice::from_ref(d)).equals(&c)? && a.colon_poly(d)?.equals(b)?)
    };
    let mut cands: Vec<Polynomial> = c
        .gb()
        .basis()
        .iter()
        .map(|g| a.gb().normal_form(g))
        .filter(|g| !g.is_zero())
        .collect();
    cands.sort_by_key(|g| g.total_degree());
    if cands.is_empty() {
        return Err(AlgError::DeltaNotFound(format!("{a} : {b} equals {a}")));
    }
    for d in &cands {
        if works(d)? {
            return Ok(d.clone());
        }
    }
    // The cokernel is cyclic, so a generic combination of the lowest-degree
    // candidates generates it.
    let low = cands[0].total_degree();
    let low: Vec<&Polynomial> = cands.iter().filter(|g| g.total_degree() == low).collect();
    let p = r.p();
    for (k, x) in low.iter().enumerate() {
        for y in &low[k + 1..] {
            for s in 1..p {
                let d = r.add(x, &r.scale(y, s));
                if !d.is_zero() && works(&d)? {
                    return Ok(d);
                }
            }
        }
    }
    let mut rng = seeded_rng(0xde17a);
    for _ in 0..32 {
        let mut d = Polynomial::zero();
        for g in &low {
            d = r.add(&d, &r.scale(g, rng.gen_range(0..p)));
        }
        if !d.is_zero() && works(&d)? {
            return Ok(d);
        }
    }
    Err(AlgError::DeltaNotFound(format!(
        "search exhausted for a = {a}, b = {b}"
    )))
}

/// One sampled evaluation of `a^[q] : J^[q]`.
#[derive(Clone, Debug)]
pub struct CornerWitness {
    pub a: Ideal,
    pub j: Ideal,
    pub value: Ideal,
}

#[derive(Clone, Debug)]
pub struct CornerPowerResult {
    pub value: Ideal,
    pub q: FrobeniusExponent,
    pub witnesses: Vec<CornerWitness>,
}

/// `a^[q] : (a : I)^[q]` for one given parameter ideal `a ⊆ I`.
pub fn corner_power_with(i: &Ideal, a: &Ideal, e: FrobeniusExponent) -> Result<CornerWitness> {
    let j = a.colon(i)?;
    let value = bracket_power(a, e)?.colon(&bracket_power(&j, e)?)?;
    Ok(CornerWitness {
        a: a.clone(),
        j,
        value,
    })
}

/// The `q`-th corner power, evaluated with `samples` independently sampled
/// links; all evaluations must agree. The unit ideal is its own corner power.
pub fn corner_power(
    i: &Ideal,
    e: FrobeniusExponent,
    samples: usize,
    rng: &mut SeededRng,
) -> Result<CornerPowerResult> {
    if i.is_unit() {
        return Ok(CornerPowerResult {
            value: i.clone(),
            q: e,
            witnesses: Vec::new(),
        });
    }
    if !is_unmixed(i, rng)? {
        return Err(AlgError::NotUnmixed);
    }
    let mut witnesses: Vec<CornerWitness> = Vec::with_capacity(samples.max(1));
    for _ in 0..samples.max(1) {
        let (_, a) = sample_link(i, rng)?;
        let w = corner_power_with(i, &a, e)?;
        if let Some(first) = witnesses.first() {
            if !first.value.equals(&w.value)? {
                return Err(AlgError::WellDefinednessViolation(format!(
                    "a = {} gives {}, a = {} gives {}",
                    first.a, first.value, w.a, w.value
                )));
            }
        }
        witnesses.push(w);
    }
    Ok(CornerPowerResult {
        value: witnesses[0].value.clone(),
        q: e,
        witnesses,
    })
}

#[derive(Clone, Debug)]
pub struct LinkEdge {
    pub from: usize,
    pub to: usize,
    pub link: Ideal,
    pub verified: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LinkageFlags {
    /// The sum of the discovered nodes is m-primary.
    pub sum_m_primary: bool,
    /// The sum of the discovered nodes lies inside the root ideal.
    pub sum_in_root: bool,
    /// Exploration stopped at the node cap.
    pub capped: bool,
    pub depth: usize,
    pub samples_per_node: usize,
}

/// A sampled piece of a linkage class. Node 0 is the root.
#[derive(Clone, Debug)]
pub struct LinkageRecord {
    pub nodes: Vec<Ideal>,
    pub edges: Vec<LinkEdge>,
    pub flags: LinkageFlags,
}

#[derive(Serialize)]
struct EdgeJson {
    from: usize,
    to: usize,
    a: Vec<String>,
    verified: bool,
}

#[derive(Serialize)]
struct RecordJson<'a> {
    nodes: Vec<Vec<String>>,
    edges: Vec<EdgeJson>,
    flags: &'a LinkageFlags,
}

impl LinkageRecord {
    pub fn root(&self) -> &Ideal {
        &self.nodes[0]
    }

    /// `{"nodes": [[gb...], ...], "edges": [{from, to, a, verified}], "flags": {...}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let rec = RecordJson {
            nodes: self.nodes.iter().map(Ideal::gb_strings).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    from: e.from,
                    to: e.to,
                    a: e.link.gens_strings(),
                    verified: e.verified,
                })
                .collect(),
            flags: &self.flags,
        };
        serde_json::to_value(rec).expect("linkage record serializes")
    }
}

/// Sum of all ideals reached by breadth-first direct linkage from `i`, a
/// lower bound for the sum over the whole linkage class.
pub fn tilde_approx(
    i: &Ideal,
    depth: usize,
    samples_per_node: usize,
    rng: &mut SeededRng,
) -> Result<(Ideal, LinkageRecord)> {
    tilde_approx_capped(i, depth, samples_per_node, DEFAULT_NODE_CAP, rng)
}

pub fn tilde_approx_capped(
    i: &Ideal,
    depth: usize,
    samples_per_node: usize,
    node_cap: usize,
    rng: &mut SeededRng,
) -> Result<(Ideal, LinkageRecord)> {
    let mut flags = LinkageFlags {
        depth,
        samples_per_node,
        ..Default::default()
    };
    let mut nodes = vec![i.canonical()];
    let mut edges = Vec::new();
    if depth > 0 && !is_unmixed(i, rng)? {
        return Err(AlgError::NotUnmixed);
    }
    let mut frontier = vec![0usize];
    'levels: for _ in 0..depth {
        let mut next = Vec::new();
        for &from in &frontier {
            for _ in 0..samples_per_node {
                let (j, a) = sample_link(&nodes[from], rng)?;
                let j = j.canonical();
                let to = match nodes.iter().position(|n| n.gb().basis() == j.gb().basis()) {
                    Some(k) => k,
                    None => {
                        if nodes.len() >= node_cap {
                            flags.capped = true;
                            break 'levels;
                        }
                        nodes.push(j);
                        next.push(nodes.len() - 1);
                        nodes.len() - 1
                    }
                };
                edges.push(LinkEdge {
                    from,
                    to,
                    link: a,
                    verified: true,
                });
            }
        }
        frontier = next;
    }
    let mut sum = nodes[0].clone();
    for n in &nodes[1..] {
        sum = sum.sum(n)?;
    }
    let sum = sum.canonical();
    flags.sum_m_primary = sum.is_m_primary();
    flags.sum_in_root = sum.is_subset(i)?;
    Ok((
        sum,
        LinkageRecord {
            nodes,
            edges,
            flags,
        },
    ))
}

/// A linkage chain `I = K_0, K_1 = a_1 : K_0, ..., K_n = a_n : K_{n-1}`.
#[derive(Clone, Debug)]
pub struct LinkChain {
    pub links: Vec<Ideal>,
    pub nodes: Vec<Ideal>,
}

impl LinkChain {
    pub fn end(&self) -> &Ideal {
        self.nodes.last().expect("chain has a root")
    }
}

/// Samples a chain of `n` successive direct links starting at `i`.
pub fn sample_link_chain(i: &Ideal, n: usize, rng: &mut SeededRng) -> Result<LinkChain> {
    if !is_unmixed(i, rng)? {
        return Err(AlgError::NotUnmixed);
    }
    let mut links = Vec::with_capacity(n);
    let mut nodes = vec![i.clone()];
    for _ in 0..n {
        let (j, a) = sample_link(nodes.last().unwrap(), rng)?;
        links.push(a);
        nodes.push(j);
    }
    Ok(LinkChain { links, nodes })
}

/// Outcome of lifting a linkage chain to the m-primary ideal `(I, x^t)`.
#[derive(Clone, Debug)]
pub struct LinkLift {
    /// `b ⊆ a_1 ∩ ... ∩ a_n`, a parameter ideal of the same height.
    pub b: Ideal,
    pub xs: Vec<Polynomial>,
    pub t: u32,
    /// `(I, x^t)`.
    pub i_t: Ideal,
    pub j: Ideal,
    pub j_t: Ideal,
    pub i_t_m_primary: bool,
    pub j_contained: bool,
}

/// Chooses `b` and a system of parameters `x` modulo `b` for a chain.
pub fn lift_parameters(
    chain: &LinkChain,
    rng: &mut SeededRng,
) -> Result<(Ideal, Vec<Polynomial>)> {
    let i = &chain.nodes[0];
    let mut inter = match chain.links.first() {
        Some(a) => a.clone(),
        None => i.clone(),
    };
    for a in chain.links.iter().skip(1) {
        inter = inter.intersect(a)?;
    }
    let b = find_parameter_ideal(&inter, rng, DEFAULT_MAX_TRIES)?;
    let xs = extend_to_m_primary(&b, rng)?;
    Ok((b, xs))
}

/// `J_t = (a_n, x^t) : ((a_{n-1}, x^t) : ... ((a_1, x^t) : (I, x^t)))`,
/// checked against `J ⊆ J_t` and m-primariness of `(I, x^t)`.
pub fn m_primary_link_lift(
    chain: &LinkChain,
    b: &Ideal,
    xs: &[Polynomial],
    t: u32,
) -> Result<LinkLift> {
    let i = &chain.nodes[0];
    let r = i.ring().poly_ring();
    let xt: Vec<Polynomial> = xs.iter().map(|x| r.pow(x, t as u64)).collect();
    let i_t = i.with(&xt);
    let mut current = i_t.clone();
    for a in &chain.links {
        current = a.with(&xt).colon(&current)?;
    }
    let j = chain.end().clone();
    let j_contained = j.is_subset(&current)?;
    Ok(LinkLift {
        b: b.clone(),
        xs: xs.to_vec(),
        t,
        i_t_m_primary: i_t.is_m_primary(),
        i_t,
        j,
        j_t: current,
        j_contained,
    })
}
