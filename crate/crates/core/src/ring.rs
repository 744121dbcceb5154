//! Ambient rings: `F_p[vars]` or a hypersurface quotient `F_p[vars]/(f)`.

use std::sync::{Arc, OnceLock};

use crate::error::{AlgError, Result};
use crate::field::PrimeField;
use crate::ideal::{poly_gcd, Ideal};
use crate::monomial::{MonomialOrder, MAX_VARS};
use crate::parse::{format_polynomial, parse_polynomial};

use crate::poly::{PolyRing, Polynomial};

/// Cached outcome of the test-ideal chain, stored as generator lists of lifts.
#[derive(Clone, Debug)]
pub(crate) struct TauData {
    pub chain: Vec<Vec<Polynomial>>,
    pub stable_at: usize,
}

#[derive(Debug)]
pub struct RingContext {
    field: PrimeField,
    vars: Vec<String>,
    relation: Option<Polynomial>,
    reduced: bool,
    poly: PolyRing,
    tau_override: Option<Vec<Polynomial>>,
    pub(crate) tau_cache: OnceLock<Result<TauData>>,
}

impl RingContext {
    /// `F_p[vars]`.
    pub fn polynomial(p: u32, vars: &[&str]) -> Result<Arc<RingContext>> {
        Self::build(p, vars, None).map(Arc::new)
    }

    /// `F_p[vars]/(f)` with `f` given as text.
    pub fn hypersurface(p: u32, vars: &[&str], relation: &str) -> Result<Arc<RingContext>> {
        Self::build(p, vars, Some(relation)).map(Arc::new)
    }

    /// Like [`RingContext::hypersurface`], but with a user-supplied test ideal
    /// (given by generators of its lift) replacing the computed one.
    pub fn hypersurface_with_tau(
        p: u32,
        vars: &[&str],
        relation: &str,
        tau: &[&str],
    ) -> Result<Arc<RingContext>> {
        let mut ctx = Self::build(p, vars, Some(relation))?;
        let gens = tau
            .iter()
            .map(|t| ctx.parse(t))
            .collect::<Result<Vec<_>>>()?;
        ctx.tau_override = Some(gens);
        Ok(Arc::new(ctx))
    }

    fn build(p: u32, vars: &[&str], relation: Option<&str>) -> Result<RingContext> {
        let field = PrimeField::new(p)?;
        if vars.is_empty() {
            return Err(AlgError::InvalidRing("no variables".into()));
        }
        // Auxiliary variables (one per base variable for preimages, plus one for
        // intersections) must still fit.
        if 2 * vars.len() + 1 > MAX_VARS {
            return Err(AlgError::TooManyVariables(vars.len()));
        }
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(AlgError::InvalidRing(format!("bad variable name `{v}`")));
            }
            if names.iter().any(|n| n == v) {
                return Err(AlgError::InvalidRing(format!("duplicate variable `{v}`")));
            }
            names.push(v.to_string());
        }
        let poly = PolyRing::new(field, names.len(), MonomialOrder::GrevLex)?;
        let mut ctx = RingContext {
            field,
            vars: names,
            relation: None,
            reduced: true,
            poly,
            tau_override: None,
            tau_cache: OnceLock::new(),
        };
        if let Some(text) = relation {
            let f = ctx.parse(text)?;
            if f.is_zero() || f.is_unit() {
                return Err(AlgError::InvalidRing(
                    "relation must be a nonzero nonunit".into(),
                ));
            }
            if !f.is_homogeneous() {
                return Err(AlgError::InvalidRing("relation must be homogeneous".into()));
            }
            let partials: Vec<Polynomial> = (0..ctx.vars.len())
                .map(|i| poly.derivative(&f, i))
                .filter(|d| !d.is_zero())
                .collect();
            if partials.is_empty() {
                return Err(AlgError::InvalidRing(
                    "relation is a p-th power (ring not reduced)".into(),
                ));
            }
            let mut g = f.clone();
            for d in &partials {
                g = poly_gcd(&poly, &g, d);
            }
            // Square-free iff no common factor with all nonzero partials.
            ctx.reduced = g.is_unit();
            ctx.relation = Some(poly.monic(&f));
        }
        Ok(ctx)
    }

    /// `F_2[x,y,z]/(x^3+y^3+z^3)`.
    pub fn fermat2() -> Arc<RingContext> {
        Self::hypersurface(2, &["x", "y", "z"], "x^3+y^3+z^3").expect("fermat cubic")
    }

    /// `F_2[x,y]`.
    pub fn poly2_2() -> Arc<RingContext> {
        Self::polynomial(2, &["x", "y"]).expect("F2[x,y]")
    }

    /// `F_2[x,y,z]`.
    pub fn poly2_3() -> Arc<RingContext> {
        Self::polynomial(2, &["x", "y", "z"]).expect("F2[x,y,z]")
    }

    /// Resolves a built-in name or a spec of the form
    /// `char <p> vars <v1,...> [mod <poly>]`.
    pub fn from_spec(spec: &str) -> Result<Arc<RingContext>> {
        match spec.trim() {
            "fermat2" => return Ok(Self::fermat2()),
            "poly2_2" => return Ok(Self::poly2_2()),
            "poly2_3" => return Ok(Self::poly2_3()),
            _ => {}
        }
        let bad = || AlgError::InvalidRing(format!("cannot parse ring spec `{spec}`"));
        let rest = spec.trim().strip_prefix("char").ok_or_else(bad)?.trim_start();
        let (p_text, rest) = rest.split_once("vars").ok_or_else(bad)?;
        let p: u32 = p_text.trim().parse().map_err(|_| bad())?;
        let (vars_text, relation) = match rest.split_once("mod") {
            Some((v, m)) => (v, Some(m.trim())),
            None => (rest, None),
        };
        let vars: Vec<&str> = vars_text.split(',').map(str::trim).collect();
        Self::build(p, &vars, relation).map(Arc::new)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn relation(&self) -> Option<&Polynomial> {
        self.relation.as_ref()
    }

    pub fn is_quotient(&self) -> bool {
        self.relation.is_some()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Grevlex arithmetic context of the ambient polynomial ring.
    pub fn poly_ring(&self) -> &PolyRing {
        &self.poly
    }

    /// Krull dimension of the ring.
    pub fn dim(&self) -> usize {
        self.vars.len() - usize::from(self.relation.is_some())
    }

    pub(crate) fn tau_override(&self) -> Option<&[Polynomial]> {
        self.tau_override.as_deref()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, &self.vars, &self.poly)
    }

    pub fn format(&self, f: &Polynomial) -> String {
        format_polynomial(f, &self.vars)
    }

    /// Canonical spec string accepted by [`RingContext::from_spec`].
    pub fn spec(&self) -> String {
        let mut s = format!("char {} vars {}", self.characteristic(), self.vars.join(","));
        if let Some(f) = &self.relation {
            s.push_str(" mod ");
            s.push_str(&self.format(f));
        }
        s
    }

    pub fn same_as(&self, other: &RingContext) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field
                && self.vars == other.vars
                && self.relation == other.relation)
    }

    /// The maximal homogeneous ideal `m = (vars)`.
    pub fn maximal_ideal(self: &Arc<Self>) -> Ideal {
        let gens = (0..self.nvars()).map(|i| self.poly.var(i)).collect();
        Ideal::new(self, gens)
    }

    pub fn unit_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::new(self, vec![self.poly.one()])
    }

    pub fn zero_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::new(self, Vec::new())
    }

    /// Parses a comma-separated generator list.
    pub fn ideal(self: &Arc<Self>, gens: &[&str]) -> Result<Ideal> {
        let gens = gens
            .iter()
            .map(|g| self.parse(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(self, gens))
    }

    /// Parses `"g1, g2, ..."`.
    pub fn ideal_from_list(self: &Arc<Self>, list: &str) -> Result<Ideal> {
        let parts: Vec<&str> = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        self.ideal(&parts)
    }
}
