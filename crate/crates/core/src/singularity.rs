//! Test elements, the test ideal of a hypersurface, tight-closure colon
//! formulas, the `I_q` upper approximations and non-membership certificates.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{AlgError, Result};
use crate::frobenius::{bracket_power, frobenius_preimage, frobenius_root, FrobeniusExponent};
use crate::ideal::{poly_gcd, Ideal};
use crate::params::seeded_rng;
use crate::poly::Polynomial;
use crate::ring::{RingContext, TauData};

/// Iteration cap of the test-ideal chain.
pub const MAX_TAU_ITERS: usize = 32;

/// Default top Frobenius exponent for approximations (`q <= p^3`).
pub const DEFAULT_E_MAX: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TestElementSource {
    Jacobian,
    User,
}

/// A multiplier `c` usable in tight-closure certificates.
#[derive(Clone, Debug)]
pub struct TestElementCertificate {
    pub c: Polynomial,
    pub source: TestElementSource,
    pub ring: Arc<RingContext>,
}

impl TestElementCertificate {
    /// Wraps a user-supplied element after checking `c ≠ 0` in `R` and that
    /// `c` shares no factor with the relation.
    pub fn user(ring: &Arc<RingContext>, c: Polynomial) -> Result<Self> {
        if c.is_zero() || !coprime_to_relation(ring, &c) {
            return Err(AlgError::NoTestElementFound);
        }
        Ok(TestElementCertificate {
            c,
            source: TestElementSource::User,
            ring: ring.clone(),
        })
    }
}

fn coprime_to_relation(ring: &RingContext, c: &Polynomial) -> bool {
    match ring.relation() {
        None => !c.is_zero(),
        Some(f) => poly_gcd(ring.poly_ring(), f, c).is_unit(),
    }
}

/// Jacobian test element: a nonzero partial derivative of the relation (or a
/// combination of partials) that avoids every minimal prime.
pub fn test_element(ring: &Arc<RingContext>) -> Result<TestElementCertificate> {
    let cert = |c: Polynomial| TestElementCertificate {
        c,
        source: TestElementSource::Jacobian,
        ring: ring.clone(),
    };
    let Some(f) = ring.relation() else {
        return Ok(cert(ring.poly_ring().one()));
    };
    if !ring.is_reduced() {
        return Err(AlgError::NoTestElementFound);
    }
    let r = ring.poly_ring();
    let partials: Vec<Polynomial> = (0..ring.nvars())
        .map(|i| r.derivative(f, i))
        .filter(|d| !d.is_zero())
        .collect();
    for d in &partials {
        if coprime_to_relation(ring, d) {
            return Ok(cert(d.clone()));
        }
    }
    for (k, a) in partials.iter().enumerate() {
        for b in &partials[k + 1..] {
            let s = r.add(a, b);
            if !s.is_zero() && coprime_to_relation(ring, &s) {
                return Ok(cert(s));
            }
        }
    }
    // Homogeneous partials of equal degree can be mixed freely.
    let mut rng = seeded_rng(0x7e57);
    for _ in 0..64 {
        let mut c = Polynomial::zero();
        for d in &partials {
            c = r.add(&c, &r.scale(d, rng.gen_range(0..r.p())));
        }
        if !c.is_zero() && coprime_to_relation(ring, &c) {
            return Ok(cert(c));
        }
    }
    Err(AlgError::NoTestElementFound)
}

/// The test ideal with the ascending chain that produced it.
#[derive(Clone, Debug)]
pub struct TestIdealResult {
    pub tau: Ideal,
    /// `J_0 ⊆ J_1 ⊆ ...` as ideals of the ambient polynomial ring.
    pub chain: Vec<Ideal>,
    /// Index `k` with `J_k = J_{k+1}`.
    pub stable_at: usize,
}

/// The polynomial ring `S` over which `ring` is a quotient.
pub fn ambient(ring: &RingContext) -> Arc<RingContext> {
    let vars: Vec<&str> = ring.vars().iter().map(String::as_str).collect();
    RingContext::polynomial(ring.characteristic(), &vars).expect("ambient ring of a valid ring")
}

fn compute_tau(ring: &Arc<RingContext>) -> Result<TauData> {
    if let Some(gens) = ring.tau_override() {
        return Ok(TauData {
            chain: vec![gens.to_vec(), gens.to_vec()],
            stable_at: 0,
        });
    }
    let s = ambient(ring);
    let Some(f) = ring.relation() else {
        let one = vec![s.poly_ring().one()];
        return Ok(TauData {
            chain: vec![one.clone(), one],
            stable_at: 0,
        });
    };
    let c = test_element(ring)?.c;
    let r = s.poly_ring();
    let fp = r.pow(f, (ring.characteristic() - 1) as u64);
    let e1 = FrobeniusExponent::new(ring.characteristic(), 1)?;
    let mut current = Ideal::new(&s, vec![c]);
    let mut chain = vec![current.gb().basis().to_vec()];
    for k in 0..MAX_TAU_ITERS {
        let root = frobenius_root(&current.scaled(&fp), e1)?;
        let next = current.sum(&root)?.canonical();
        chain.push(next.gb().basis().to_vec());
        if next.equals(&current)? {
            return Ok(TauData {
                chain,
                stable_at: k,
            });
        }
        current = next;
    }
    Err(AlgError::NotStabilized(MAX_TAU_ITERS))
}

/// Test ideal of a reduced hypersurface (the unit ideal for a polynomial
/// ring): the stable value of `J_{k+1} = J_k + (f^{p-1} J_k)^{[1/p]}`
/// started at a Jacobian test element. Cached per ring.
pub fn test_ideal(ring: &Arc<RingContext>) -> Result<TestIdealResult> {
    let data = ring.tau_cache.get_or_init(|| compute_tau(ring)).clone()?;
    let s = ambient(ring);
    let chain: Vec<Ideal> = data
        .chain
        .iter()
        .map(|g| Ideal::new(&s, g.clone()))
        .collect();
    let tau = Ideal::new(ring, data.chain.last().cloned().unwrap_or_default()).canonical();
    Ok(TestIdealResult {
        tau,
        chain,
        stable_at: data.stable_at,
    })
}

/// True when `(f^{p-1} * tau_lift)^{[1/p]} ⊆ tau_lift`.
pub fn is_phi_compatible(tau: &Ideal) -> Result<bool> {
    let ring = tau.ring();
    let s = ambient(ring);
    let lift = Ideal::new(&s, tau.lift_gens());
    let Some(f) = ring.relation() else {
        return Ok(true);
    };
    let r = s.poly_ring();
    let fp = r.pow(f, (ring.characteristic() - 1) as u64);
    let e1 = FrobeniusExponent::new(ring.characteristic(), 1)?;
    frobenius_root(&lift.scaled(&fp), e1)?.is_subset(&lift)
}

/// `I : tau`: equal to `I^*` for ideals of finite projective dimension and
/// an upper bound for `I^*` in general.
pub fn star_colon(i: &Ideal, tau: &Ideal) -> Result<Ideal> {
    i.colon(tau)
}

/// `I_q = { u : u^q ∈ tau I^[q] : tau }`.
pub fn iq_approx(i: &Ideal, e: FrobeniusExponent, tau: &Ideal) -> Result<Ideal> {
    let bracket = bracket_power(i, e)?;
    let k = tau.product(&bracket)?.colon(tau)?;
    frobenius_preimage(&k, e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StarCertificate {
    /// `c x^q ∉ I^[q]` at this exponent `e`, so `x ∉ I^*`.
    NotInStar(u32),
    Inconclusive,
}

/// Searches `e = 0..=e_max` for `c x^q ∉ I^[q]`. Never claims membership.
pub fn certify_not_in_star(
    x: &Polynomial,
    i: &Ideal,
    c: &TestElementCertificate,
    e_max: u32,
) -> Result<StarCertificate> {
    if !c.ring.same_as(i.ring()) {
        return Err(AlgError::RingMismatch);
    }
    let r = i.ring().poly_ring();
    let p = i.ring().characteristic();
    for e in 0..=e_max {
        let q = FrobeniusExponent::new(p, e)?;
        let xq = r.frobenius(x, q.q())?;
        let witness = r.mul(&c.c, &xq);
        if !bracket_power(i, q)?.contains(&witness) {
            return Ok(StarCertificate::NotInStar(e));
        }
    }
    Ok(StarCertificate::Inconclusive)
}

/// Two-sided bracket on `I^*` from the colon formula and the `I_q` chain.
#[derive(Clone, Debug)]
pub struct StarApprox {
    pub lower: Ideal,
    pub upper: Ideal,
    /// `I_{p^e}` for `e = 0..=e_max`.
    pub chain: Vec<Ideal>,
    /// `I_{p^{e_max - 1}} = I_{p^{e_max}}`.
    pub stabilized: bool,
    /// First `e` with `I_{p^e} = I_{p^{e+1}}`.
    pub q0_candidate: Option<u32>,
    /// Lower and upper bounds agree, so `I^*` is known exactly.
    pub exact: bool,
    pub warnings: Vec<String>,
}

pub fn star_approx(i: &Ideal, e_max: u32) -> Result<StarApprox> {
    let ring = i.ring();
    let tau = test_ideal(ring)?.tau;
    let mut warnings = Vec::new();
    if !i.is_m_primary() {
        warnings.push("ideal is not m-primary; I_q may not stabilize at I^*".to_string());
    }
    let p = ring.characteristic();
    let mut chain = Vec::with_capacity(e_max as usize + 1);
    for e in 0..=e_max {
        chain.push(iq_approx(i, FrobeniusExponent::new(p, e)?, &tau)?);
    }
    let mut q0 = None;
    for e in 0..e_max as usize {
        if chain[e].equals(&chain[e + 1])? {
            q0 = Some(e as u32);
            break;
        }
    }
    let stabilized = e_max >= 1 && chain[e_max as usize - 1].equals(&chain[e_max as usize])?;
    let lower = if i.is_complete_intersection()? {
        star_colon(i, &tau)?
    } else {
        i.clone()
    };
    let upper = chain.last().cloned().expect("chain has e_max + 1 entries");
    let exact = lower.equals(&upper)?;
    Ok(StarApprox {
        lower,
        upper,
        chain,
        stabilized,
        q0_candidate: q0,
        exact,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobian_test_elements() {
        let r = RingContext::fermat2();
        let c = test_element(&r).unwrap();
        assert_eq!(r.format(&c.c), "x^2");
        assert_eq!(c.source, TestElementSource::Jacobian);
        let s = RingContext::poly2_2();
        assert!(test_element(&s).unwrap().c.is_one());
    }

    #[test]
    fn three_lines_need_a_combination_of_partials() {
        let r = RingContext::hypersurface(3, &["x", "y"], "x^2*y+x*y^2").unwrap();
        let c = test_element(&r).unwrap();
        assert!(coprime_to_relation(&r, &c.c));
    }

    #[test]
    fn nonreduced_has_no_test_element() {
        let r = RingContext::hypersurface(3, &["x", "y"], "x^2*y").unwrap();
        assert_eq!(test_element(&r).unwrap_err(), AlgError::NoTestElementFound);
    }

    #[test]
    fn user_certificate_validation() {
        let r = RingContext::fermat2();
        assert!(TestElementCertificate::user(&r, r.parse("x").unwrap()).is_ok());
        assert!(TestElementCertificate::user(&r, r.parse("x^3+y^3+z^3").unwrap()).is_err());
        assert!(TestElementCertificate::user(&r, Polynomial::zero()).is_err());
    }

    #[test]
    fn test_ideal_of_regular_ring() {
        let r = RingContext::poly2_2();
        let t = test_ideal(&r).unwrap();
        assert!(t.tau.is_unit());
    }

    #[test]
    fn test_ideal_of_fermat_cubic_is_maximal() {
        let r = RingContext::fermat2();
        let t = test_ideal(&r).unwrap();
        assert_eq!(t.tau, r.maximal_ideal());
        let n = t.chain.len();
        assert!(t.chain[n - 1].equals(&t.chain[n - 2]).unwrap());
        for w in t.chain.windows(2) {
            assert!(w[0].is_subset(&w[1]).unwrap());
        }
        assert!(is_phi_compatible(&t.tau).unwrap());
    }

    #[test]
    fn test_ideal_of_three_lines() {
        let r = RingContext::hypersurface(3, &["x", "y"], "x^2*y+x*y^2").unwrap();
        let t = test_ideal(&r).unwrap();
        assert!(t.stable_at <= 5);
        assert!(!t.tau.is_unit());
        assert!(is_phi_compatible(&t.tau).unwrap());
    }

    #[test]
    fn override_tau() {
        let r = RingContext::hypersurface_with_tau(2, &["x", "y", "z"], "x^3+y^3+z^3", &["x", "y", "z"])
            .unwrap();
        assert_eq!(test_ideal(&r).unwrap().tau, r.maximal_ideal());
    }

    #[test]
    fn star_colon_examples() {
        let r = RingContext::fermat2();
        let tau = test_ideal(&r).unwrap().tau;
        let a = r.ideal_from_list("x,y").unwrap();
        assert_eq!(
            star_colon(&a, &tau).unwrap(),
            r.ideal_from_list("x,y,z^2").unwrap()
        );
        let m = r.maximal_ideal();
        assert!(star_colon(&m, &tau).unwrap().is_unit());
        let s = RingContext::poly2_2();
        let i = s.ideal_from_list("x^2,x*y").unwrap();
        assert_eq!(star_colon(&i, &s.unit_ideal()).unwrap(), i);
    }

    #[test]
    fn certificates() {
        let r = RingContext::fermat2();
        let c = test_element(&r).unwrap();
        let i = r.ideal_from_list("x,y").unwrap();
        assert_eq!(
            certify_not_in_star(&r.parse("x").unwrap(), &i, &c, 3).unwrap(),
            StarCertificate::Inconclusive
        );
        assert!(matches!(
            certify_not_in_star(&r.parse("z").unwrap(), &i, &c, 3).unwrap(),
            StarCertificate::NotInStar(e) if e <= 3
        ));
        assert_eq!(
            certify_not_in_star(&r.parse("z^2").unwrap(), &i, &c, 3).unwrap(),
            StarCertificate::Inconclusive
        );
    }
}
