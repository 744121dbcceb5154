//! Verification suites. Each suite runs one family of checks on concrete,
//! seeded inputs and records every ideal it used by its canonical basis.

use std::sync::Arc;
use std::time::Instant;

use linkclose::frobenius::{bracket_power, FrobeniusExponent};
use linkclose::lengths::{corner_length_identity, hk_table};
use linkclose::linkage::{
    corner_power, corner_power_with, link_delta, lift_parameters, m_primary_link_lift,
    sample_link_chain, tilde_approx,
};
use linkclose::params::{
    find_parameter_ideal, is_unmixed, monomials_of_degree, seeded_rng, SeededRng,
    DEFAULT_MAX_TRIES,
};
use linkclose::singularity::{iq_approx, star_approx, star_colon, test_ideal};
use linkclose::{AlgError, Ideal, Polynomial, RingContext, Term};
use rand::Rng;

use crate::report::{Status, SuiteReport};

pub const SUITES: [&str; 13] = [
    "paper-example",
    "corner-welldef",
    "corner-containment",
    "essential",
    "decr",
    "higher",
    "hk-identity",
    "mapping-cone",
    "case1",
    "linkage-lift",
    "main-theorem",
    "max-in-class",
    "lit",
];

/// Unmixed ideals sampled by `corner-containment`.
pub const CONTAINMENT_IDEALS: usize = 10;
/// Parameter ideals sampled by `essential`.
pub const ESSENTIAL_IDEALS: usize = 5;
/// Nested parameter pairs sampled by `mapping-cone`.
pub const MAPPING_CONE_PAIRS: usize = 10;
/// Triples sampled by `case1`.
pub const CASE1_TRIPLES: usize = 5;
/// Chains sampled by `linkage-lift`.
pub const LIFT_CHAINS: usize = 3;

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub ring: Arc<RingContext>,
    /// Comma-separated generators overriding the suite's default ideals.
    pub ideal: Option<String>,
    pub e_max: u32,
    pub depth: usize,
    pub samples: usize,
    pub tmax: u32,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            ring: RingContext::fermat2(),
            ideal: None,
            e_max: 3,
            depth: 2,
            samples: 3,
            tmax: 3,
            seed: 0,
        }
    }
}

/// Runs a suite. Unknown suites and unparsable ideals are input errors.
pub fn verify_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport, String> {
    if !SUITES.contains(&name) {
        return Err(format!("unknown suite `{name}`; expected one of {}", SUITES.join(", ")));
    }
    let override_ideal = match &params.ideal {
        Some(text) => Some(
            params
                .ring
                .ideal_from_list(text)
                .map_err(|e| format!("--ideal: {e}"))?,
        ),
        None => None,
    };
    let mut s = Suite {
        p: params,
        ring: params.ring.clone(),
        ideal: override_ideal,
        rng: seeded_rng(params.seed),
        report: SuiteReport::new(name, params.seed),
    };
    let r = &mut s.report;
    r.param("ring", params.ring.spec());
    r.param("ideal", params.ideal.clone().unwrap_or_else(|| "default".into()));
    r.param("qmax", params.e_max);
    r.param("depth", params.depth);
    r.param("samples", params.samples);
    r.param("tmax", params.tmax);
    let start = Instant::now();
    let outcome = match name {
        "paper-example" => s.worked_example(),
        "corner-welldef" => s.corner_welldef(),
        "corner-containment" => s.corner_containment(),
        "essential" => s.essential(),
        "decr" => s.decr(),
        "higher" => s.higher(),
        "hk-identity" => s.hk_identity(),
        "mapping-cone" => s.mapping_cone(),
        "case1" => s.case1(),
        "linkage-lift" => s.linkage_lift(),
        "main-theorem" => s.main_theorem(),
        "max-in-class" => s.max_in_class(),
        "lit" => s.lit(),
        _ => unreachable!(),
    };
    if let Err(e) = outcome {
        s.report.check("suite completed", false, e.to_string());
    }
    s.report.timings.insert("total_seconds".into(), start.elapsed().as_secs_f64());
    Ok(s.report)
}

struct Suite<'a> {
    p: &'a SuiteParams,
    ring: Arc<RingContext>,
    ideal: Option<Ideal>,
    rng: SeededRng,
    report: SuiteReport,
}

type Outcome = linkclose::Result<()>;

fn fe(p: u32, e: u32) -> linkclose::Result<FrobeniusExponent> {
    FrobeniusExponent::new(p, e)
}

/// A random homogeneous form of degree `deg`.
fn random_form(ring: &RingContext, deg: u32, rng: &mut SeededRng) -> Polynomial {
    let r = ring.poly_ring();
    loop {
        let mut terms = Vec::new();
        for mono in monomials_of_degree(ring.nvars(), deg) {
            if rng.gen_bool(0.5) {
                terms.push(Term { coeff: rng.gen_range(1..r.p()), mono });
            }
        }
        let f = r.from_terms(terms);
        let nonzero_in_ring = ring
            .relation()
            .is_none_or(|rel| r.divide_exact(&f, rel).is_none());
        if !f.is_zero() && nonzero_in_ring {
            return f;
        }
    }
}

/// Pure powers of the variables plus one random form.
fn random_m_primary(ring: &Arc<RingContext>, rng: &mut SeededRng) -> Ideal {
    let r = ring.poly_ring();
    loop {
        let mut gens: Vec<Polynomial> = (0..ring.nvars())
            .map(|v| r.pow(&r.var(v), rng.gen_range(1..=3)))
            .collect();
        let deg = rng.gen_range(1..=3);
        gens.push(random_form(ring, deg, rng));
        let i = Ideal::new(ring, gens).minimalized();
        if !i.is_unit() {
            return i;
        }
    }
}

fn principal(ring: &Arc<RingContext>, rng: &mut SeededRng) -> Ideal {
    let deg = rng.gen_range(1..=2);
    Ideal::new(ring, vec![random_form(ring, deg, rng)])
}

impl Suite<'_> {
    fn char_p(&self) -> u32 {
        self.ring.characteristic()
    }

    fn tau(&self) -> linkclose::Result<Ideal> {
        Ok(test_ideal(&self.ring)?.tau)
    }

    /// The override ideal, or the listed defaults that parse in this ring,
    /// falling back to the maximal ideal.
    fn ideals_or(&self, defaults: &[&str]) -> Vec<Ideal> {
        if let Some(i) = &self.ideal {
            return vec![i.clone()];
        }
        let parsed: Vec<Ideal> = defaults
            .iter()
            .filter_map(|d| self.ring.ideal_from_list(d).ok())
            .filter(|i| !i.is_unit())
            .collect();
        if parsed.is_empty() {
            vec![self.ring.maximal_ideal()]
        } else {
            parsed
        }
    }

    /// Records a check whose evaluation may itself fail.
    fn attempt(
        &mut self,
        name: String,
        f: impl FnOnce(&mut SeededRng) -> linkclose::Result<(bool, String)>,
    ) {
        match f(&mut self.rng) {
            Ok((ok, details)) => self.report.check(name, ok, details),
            Err(e) => self.report.check(name, false, format!("error: {e}")),
        }
    }

    fn worked_example(&mut self) -> Outcome {
        let r = RingContext::fermat2();
        let i = r.ideal_from_list("x^2,y^2,z^2")?;
        let a = r.ideal_from_list("x^2,y^2")?;
        let expected_j = r.ideal_from_list("x^2,y^2,z")?;
        let stated = r.ideal_from_list("x^4,y^4,x*y*z")?;
        let xyz = r.parse("x*y*z")?;
        let q2 = fe(2, 1)?;
        let rep = &mut self.report;
        rep.param("ring", r.spec());

        let j = a.colon(&i)?;
        rep.check(
            "link (x^2, y^2) : I equals (x^2, y^2, z)",
            j == expected_j,
            format!("I = {i}, a = {a}, J = {j}"),
        );
        let w = corner_power_with(&i, &a, q2)?;
        let extra: Vec<String> = w
            .value
            .gb()
            .basis()
            .iter()
            .filter(|g| !stated.contains(g))
            .map(|g| r.format(g))
            .collect();
        let missing = stated.gb().basis().iter().any(|g| !w.value.contains(g));
        let details = if w.value == stated {
            format!("I^<2> = {}", w.value)
        } else {
            format!(
                "computed I^<2> = a^[2] : J^[2] = {}, stated {stated}; in computed but not in stated: [{}]{}",
                w.value,
                extra.join(", "),
                if missing { "; stated has elements outside computed" } else { "" }
            )
        };
        rep.check("corner power I^<2> equals (x^4, y^4, xyz)", w.value == stated, details);
        let sampled = corner_power(&i, q2, self.p.samples, &mut self.rng);
        let rep = &mut self.report;
        match sampled {
            Ok(c) => rep.check(
                "corner power agrees across sampled links",
                c.value == w.value,
                format!("{} samples give {}", c.witnesses.len(), c.value),
            ),
            Err(e) => rep.check("corner power agrees across sampled links", false, e.to_string()),
        }
        rep.check("xyz in I^<2>", w.value.contains(&xyz), format!("I^<2> = {}", w.value));
        rep.check("xyz not in I", !i.contains(&xyz), format!("I = {i}"));
        let bracket = bracket_power(&i, q2)?;
        rep.check(
            "I^[2] strictly inside I^<2>",
            bracket.is_subset(&w.value)? && bracket != w.value,
            format!("I^[2] = {bracket}"),
        );
        Ok(())
    }

    fn corner_welldef(&mut self) -> Outcome {
        let p = self.char_p();
        for i in self.ideals_or(&["x^2,y^2,z^2"]) {
            for e in 1..=self.p.e_max {
                let q = fe(p, e)?;
                let samples = self.p.samples.max(2);
                let name = format!("corner power of {i} at q={} is well defined", q.q());
                match corner_power(&i, q, samples, &mut self.rng) {
                    Ok(c) => {
                        let links: Vec<String> = c.witnesses.iter().map(|w| w.a.to_string()).collect();
                        self.report.check(
                            name,
                            true,
                            format!("value {} from links {}", c.value, links.join(" ")),
                        );
                    }
                    Err(err) => self.report.check(name, false, err.to_string()),
                }
            }
        }
        Ok(())
    }

    /// The override ideal, or a mix of m-primary, parameter and principal
    /// ideals.
    fn sampled_unmixed(&mut self, count: usize) -> linkclose::Result<Vec<Ideal>> {
        if let Some(i) = &self.ideal {
            return Ok(vec![i.clone()]);
        }
        let ring = self.ring.clone();
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let i = match k % 3 {
                0 => random_m_primary(&ring, &mut self.rng),
                1 => {
                    let m = random_m_primary(&ring, &mut self.rng);
                    find_parameter_ideal(&m, &mut self.rng, DEFAULT_MAX_TRIES)?
                }
                _ if ring.dim() >= 2 => principal(&ring, &mut self.rng),
                _ => random_m_primary(&ring, &mut self.rng),
            };
            out.push(i);
        }
        Ok(out)
    }

    fn corner_containment(&mut self) -> Outcome {
        let p = self.char_p();
        let ideals = self.sampled_unmixed(CONTAINMENT_IDEALS)?;
        for i in ideals {
            if !is_unmixed(&i, &mut self.rng)? {
                self.report.skip(format!("containment for {i}"), "sampled ideal is not unmixed");
                continue;
            }
            let parameter = i.is_complete_intersection()?;
            for e in 1..=self.p.e_max {
                let q = fe(p, e)?;
                let samples = self.p.samples;
                self.attempt(format!("I^[q] inside I^<q> for {i} at q={}", q.q()), |rng| {
                    let c = corner_power(&i, q, samples, rng)?;
                    let b = bracket_power(&i, q)?;
                    let inside = b.is_subset(&c.value)?;
                    let equal = b == c.value;
                    let ok = inside && (!parameter || equal);
                    let kind = match (parameter, equal) {
                        (true, _) => "parameter ideal, equality required",
                        (false, true) => "equal",
                        (false, false) => "strict",
                    };
                    Ok((ok, format!("{kind}: I^[q] = {b}, I^<q> = {}", c.value)))
                });
            }
        }
        if self.ideal.is_none() && self.ring.same_as(&RingContext::fermat2()) {
            let i = self.ring.ideal_from_list("x^2,y^2,z^2")?;
            let samples = self.p.samples;
            self.attempt(format!("strict containment for {i} at q=2"), |rng| {
                let c = corner_power(&i, fe(2, 1)?, samples, rng)?;
                let b = bracket_power(&i, fe(2, 1)?)?;
                Ok((b.is_subset(&c.value)? && b != c.value, format!("I^[2] = {b}, I^<2> = {}", c.value)))
            });
        }
        Ok(())
    }

    fn essential(&mut self) -> Outcome {
        let tau = self.tau()?;
        let p = self.char_p();
        let ring = self.ring.clone();
        for _ in 0..ESSENTIAL_IDEALS {
            let m = random_m_primary(&ring, &mut self.rng);
            let a = find_parameter_ideal(&m, &mut self.rng, DEFAULT_MAX_TRIES)?;
            let sc = star_colon(&a, &tau)?;
            let proper_tau = !tau.is_unit();
            let grows = a.is_subset(&sc)? && (sc != a) == proper_tau;
            self.report.check(
                format!("a : tau contains {a}{}", if proper_tau { " strictly" } else { "" }),
                grows,
                format!("tau = {tau}, a : tau = {sc}"),
            );
            let back = a.colon(&sc)?;
            self.report.check(
                format!("a : (a : tau) contains tau for {a}"),
                tau.is_subset(&back)?,
                format!("a : (a : tau) = {back}"),
            );
        }
        for i in self.ideals_or(&["x,y", "x^2,y^2,z^2", "x,y,z"]) {
            let sc = star_colon(&i, &tau)?;
            for e in 1..=self.p.e_max {
                let q = fe(p, e)?;
                let samples = self.p.samples;
                let tau = tau.clone();
                let sc = sc.clone();
                self.attempt(format!("(I:tau)^[q] inside I^<q>:tau for {i} at q={}", q.q()), |rng| {
                    let corner = corner_power(&i, q, samples, rng)?.value;
                    let lhs = bracket_power(&sc, q)?;
                    let rhs = corner.colon(&tau)?;
                    Ok((lhs.is_subset(&rhs)?, format!("(I:tau)^[q] = {lhs}, I^<q>:tau = {rhs}")))
                });
            }
        }
        Ok(())
    }

    fn decr(&mut self) -> Outcome {
        let tau = self.tau()?;
        let p = self.char_p();
        for i in self.ideals_or(&["x,y", "x,y,z"]) {
            let chain: Vec<Ideal> = (0..=self.p.e_max)
                .map(|e| iq_approx(&i, fe(p, e)?, &tau))
                .collect::<linkclose::Result<_>>()?;
            for e in 0..self.p.e_max as usize {
                let (hi, lo) = (&chain[e + 1], &chain[e]);
                self.report.check(
                    format!("I_{{{}}} inside I_{{{}}} for {i}", p.pow(e as u32 + 1), p.pow(e as u32)),
                    hi.is_subset(lo)?,
                    format!("{hi} inside {lo}"),
                );
            }
            if i.is_complete_intersection()? {
                let sc = star_colon(&i, &tau)?;
                for (e, iq) in chain.iter().enumerate() {
                    self.report.check(
                        format!("I:tau inside I_{{{}}} for parameter ideal {i}", p.pow(e as u32)),
                        sc.is_subset(iq)?,
                        format!("I:tau = {sc}, I_q = {iq}"),
                    );
                }
            }
        }
        Ok(())
    }

    fn higher(&mut self) -> Outcome {
        let tau = self.tau()?;
        let p = self.char_p();
        let m = self.ring.maximal_ideal();
        let (above, below): (Vec<Ideal>, Vec<Ideal>) = match &self.ideal {
            Some(i) if tau.is_subset(i)? => (vec![i.clone()], Vec::new()),
            Some(i) => (Vec::new(), vec![i.clone()]),
            None => {
                let below = self
                    .ideals_or(&["x,y", "x^2,y^2,z^2", "x^2,y^2,z"])
                    .into_iter()
                    .filter(|i| i.is_subset(&tau).unwrap_or(false) && *i != tau)
                    .collect();
                (vec![m.clone()], below)
            }
        };
        for i in above {
            for e in 1..=self.p.e_max {
                let q = fe(p, e)?;
                let samples = self.p.samples;
                let tau = tau.clone();
                self.attempt(format!("tau inside I^<q> for {i} at q={}", q.q()), |rng| {
                    let c = corner_power(&i, q, samples, rng)?.value;
                    Ok((tau.is_subset(&c)?, format!("tau = {tau}, I^<q> = {c}")))
                });
            }
        }
        for i in below {
            let mut corners = Vec::new();
            for e in 1..=self.p.e_max {
                corners.push((e, corner_power(&i, fe(p, e)?, self.p.samples, &mut self.rng)?.value));
            }
            let mut found = None;
            'search: for k in 0..=3u32 {
                let tested: Vec<&(u32, Ideal)> = corners.iter().filter(|(e, _)| *e >= k).collect();
                if tested.is_empty() {
                    break;
                }
                for (e, c) in &tested {
                    if !c.is_subset(&bracket_power(&m, fe(p, e - k)?)?)? {
                        continue 'search;
                    }
                }
                found = Some(k);
                break;
            }
            let name = format!("q0 with I^<q> inside m^[q/q0] for {i}");
            let values: Vec<String> = corners.iter().map(|(e, c)| format!("q={}: {c}", p.pow(*e))).collect();
            match found {
                Some(k) => self.report.check(name, true, format!("q0 = {}; {}", p.pow(k), values.join("; "))),
                None => self.report.skip(
                    name,
                    format!("no q0 <= {} found within q <= {}; {}", p.pow(3), p.pow(self.p.e_max), values.join("; ")),
                ),
            }
        }
        Ok(())
    }

    fn hk_identity(&mut self) -> Outcome {
        let p = self.char_p();
        for j in self.ideals_or(&["x,y,z", "x^2,y^2,z"]) {
            if !j.is_m_primary() {
                self.report.skip(format!("length identity for {j}"), "ideal is not m-primary");
                continue;
            }
            for e in 1..=self.p.e_max {
                let q = fe(p, e)?;
                for s in 0..self.p.samples {
                    self.attempt(format!("length identity for {j} at q={} sample {s}", q.q()), |rng| {
                        let id = corner_length_identity(&j, q, rng)?;
                        Ok((
                            id.equal,
                            format!(
                                "a = {}, I = a:J = {}, l(R/J^<q>) = {}, l(R/a^[q]) - l(R/I^[q]) = {}",
                                id.a, id.linked, id.lhs, id.rhs
                            ),
                        ))
                    });
                }
            }
            let e_max = self.p.e_max;
            self.attempt(format!("length table for {j}"), |rng| {
                let t = hk_table(&j, e_max, true, rng)?;
                let monotone = t.rows.windows(2).all(|w| w[0].len_bracket <= w[1].len_bracket);
                let lc = &t.leading_coefficient_estimate;
                let csv = t.to_csv().trim_end().replace('\n', " | ");
                Ok((monotone, format!("{csv}; c estimate {}/{}", lc.numerator, lc.denominator)))
            });
        }
        Ok(())
    }

    /// `a ⊆ b ⊆ I` with `a`, `b` parameter ideals of the height of `I`.
    fn nested_parameters(&mut self) -> linkclose::Result<(Ideal, Ideal, Ideal)> {
        let i = match &self.ideal {
            Some(i) => i.clone(),
            None => random_m_primary(&self.ring.clone(), &mut self.rng),
        };
        let b = find_parameter_ideal(&i, &mut self.rng, DEFAULT_MAX_TRIES)?;
        let inner = b.product(&self.ring.maximal_ideal())?;
        let a = find_parameter_ideal(&inner, &mut self.rng, DEFAULT_MAX_TRIES)?;
        Ok((a, b, i))
    }

    fn mapping_cone(&mut self) -> Outcome {
        for _ in 0..MAPPING_CONE_PAIRS {
            let (a, b, i) = self.nested_parameters()?;
            let name = format!("delta for a = {a} inside b = {b}");
            let d = match link_delta(&a, &b) {
                Ok(d) => d,
                Err(AlgError::DeltaNotFound(why)) => {
                    self.report.skip(name, format!("search width exhausted: {why}"));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let ab = a.colon(&b)?;
            let ad = a.colon_poly(&d)?;
            let ok = ab == a.with(std::slice::from_ref(&d)) && ad == b;
            self.report.check(
                name,
                ok,
                format!("delta = {}, a:b = {ab}, a:delta = {ad}", self.ring.format(&d)),
            );
            if !is_unmixed(&i, &mut self.rng)? {
                self.report.skip(format!("(a, delta I) unmixed for I = {i}"), "I is not unmixed");
                continue;
            }
            let adi = a.sum(&i.scaled(&d))?;
            let unm = is_unmixed(&adi, &mut self.rng)?;
            self.report.check(
                format!("(a, delta I) unmixed for I = {i}"),
                unm,
                format!("(a, delta I) = {adi}"),
            );
        }
        Ok(())
    }

    fn case1(&mut self) -> Outcome {
        for _ in 0..CASE1_TRIPLES {
            let (a, b, i) = self.nested_parameters()?;
            let lhs = a.colon(&b.colon(&i)?)?;
            let rhs = a.sum(&i.product(&a.colon(&b)?)?)?;
            self.report.check(
                format!("a:(b:I) = a + I(a:b) for a = {a}, b = {b}, I = {i}"),
                lhs == rhs,
                format!("a:(b:I) = {lhs}, a + I(a:b) = {rhs}"),
            );
        }
        Ok(())
    }

    fn linkage_lift(&mut self) -> Outcome {
        let ring = self.ring.clone();
        if ring.dim() < 2 && self.ideal.is_none() {
            self.report.skip("link lifts", "ring has no proper non-m-primary unmixed ideals of positive height");
            return Ok(());
        }
        for k in 0..LIFT_CHAINS {
            let i = match &self.ideal {
                Some(i) => i.clone(),
                None => principal(&ring, &mut self.rng),
            };
            if i.is_m_primary() {
                self.report.skip(format!("link lift from {i}"), "ideal is m-primary");
                continue;
            }
            let n = 1 + k % 2;
            let chain = sample_link_chain(&i, n, &mut self.rng)?;
            let (b, xs) = lift_parameters(&chain, &mut self.rng)?;
            let links: Vec<String> = chain.links.iter().map(|a| a.to_string()).collect();
            let xs_text: Vec<String> = xs.iter().map(|x| ring.format(x)).collect();
            for t in 1..=self.p.tmax {
                let lift = m_primary_link_lift(&chain, &b, &xs, t)?;
                self.report.check(
                    format!("J inside J_t for chain {} from {i} at t={t}", k),
                    lift.j_contained && lift.i_t_m_primary,
                    format!(
                        "links [{}], J = {}, b = {b}, x = [{}], (I, x^t) = {} m-primary {}, J_t = {}",
                        links.join(" "),
                        lift.j,
                        xs_text.join(", "),
                        lift.i_t,
                        lift.i_t_m_primary,
                        lift.j_t
                    ),
                );
            }
        }
        Ok(())
    }

    fn main_theorem(&mut self) -> Outcome {
        let tau = self.tau()?;
        for i in self.ideals_or(&["x,y", "x^2,y^2,z^2", "x,y,z"]) {
            let (sum, record) = tilde_approx(&i, self.p.depth, self.p.samples, &mut self.rng)?;
            let sc = star_colon(&i, &tau)?;
            let st = star_approx(&i, self.p.e_max)?;
            let lhs = sum.product(&sc)?;
            let target = if st.exact { "certified closure" } else { "upper bound" };
            self.report.check(
                format!("tilde(I) (I:tau) inside I^* {target} for {i}"),
                lhs.is_subset(&st.upper)?,
                format!(
                    "tilde sum over {} links = {sum}, I:tau = {sc}, product = {lhs}, I^* in [{}, {}], stabilized {}",
                    record.nodes.len(),
                    st.lower,
                    st.upper,
                    st.stabilized
                ),
            );
        }
        Ok(())
    }

    fn max_in_class(&mut self) -> Outcome {
        let tau = self.tau()?;
        let i = self.ideal.clone().unwrap_or_else(|| self.ring.maximal_ideal());
        let st = star_approx(&i, self.p.e_max)?;
        let contains_tau = tau.is_subset(&i)?;
        let closed = st.upper == i;
        if !(contains_tau && closed) {
            self.report.skip(
                format!("links of {i} stay inside it"),
                format!("hypotheses not certified: contains tau {contains_tau}, upper bound of I^* equals I {closed}"),
            );
            return Ok(());
        }
        let (_, record) = tilde_approx(&i, self.p.depth, self.p.samples, &mut self.rng)?;
        for (k, node) in record.nodes.iter().enumerate().skip(1) {
            self.report.check(
                format!("link {k} of {i} inside it"),
                node.is_subset(&i)?,
                format!("link = {node}"),
            );
        }
        self.report.check(
            format!("linkage record for {i}"),
            record.flags.sum_in_root && record.edges.iter().all(|e| e.verified),
            format!("{} nodes, {} edges, capped {}", record.nodes.len(), record.edges.len(), record.flags.capped),
        );
        Ok(())
    }

    fn lit(&mut self) -> Outcome {
        let tau = self.tau()?;
        if tau.is_unit() {
            self.report.skip("tilde(tau) tau inside tau^2", "tau is the unit ideal");
            return Ok(());
        }
        let tau2 = tau.product(&tau)?;
        if !is_unmixed(&tau, &mut self.rng)? || !is_unmixed(&tau2, &mut self.rng)? {
            self.report.skip("tilde(tau) tau inside tau^2", "tau or tau^2 is not unmixed");
            return Ok(());
        }
        let (sum, record) = tilde_approx(&tau, self.p.depth, self.p.samples, &mut self.rng)?;
        let lhs = sum.product(&tau)?;
        let inside = lhs.is_subset(&tau2)?;
        let equal = inside && lhs == tau2;
        self.report.push(
            "tilde(tau) tau inside tau^2",
            if inside { Status::Pass } else { Status::Fail },
            format!(
                "tau = {tau}, tilde sum over {} links = {sum}, product = {lhs}, tau^2 = {tau2}, equality {equal}",
                record.nodes.len()
            ),
        );
        Ok(())
    }
}
