//! The batch script language: one ring per script, named ideals and
//! polynomials, derived ideals, assertions and prints.
//!
//! ```text
//! ring R = char 2 vars x,y,z mod x^3+y^3+z^3;
//! ideal I = x^2, y^2, z^2;
//! ideal a = x^2, y^2;
//! J = colon(a, I);
//! C = corner(I, 2);
//! assert member(x*y*z, C);
//! assert !member(x*y*z, I);
//! print gb(C);
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use linkclose::frobenius::{bracket_power, FrobeniusExponent};
use linkclose::linkage::{corner_power, direct_link, tilde_approx};
use linkclose::params::{is_unmixed, seeded_rng, SeededRng};
use linkclose::singularity::{iq_approx, star_colon, test_ideal};
use linkclose::{AlgError, Colength, Ideal, Polynomial, RingContext};

use crate::report::SuiteReport;

/// Independent links sampled by `corner(A, q)`.
pub const CORNER_SAMPLES: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for ScriptError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Colon(String, String),
    Sum(String, String),
    Prod(String, String),
    Intersect(String, String),
    Bracket(String, u32),
    Corner(String, u32),
    Link(String, Option<String>),
    StarColon(String),
    Iq(String, u32),
    Tau,
    Tilde(String, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assertion {
    Equal(String, String),
    Member { poly: String, ideal: String, negated: bool },
    Subset(String, String),
    Unmixed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintKind {
    Gb,
    Len,
    Height,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Ring(String),
    Ideal(String, String),
    Poly(String, String),
    Assign(String, Op),
    Assert(Assertion),
    Print(PrintKind, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub line: usize,
    pub text: String,
    pub stmt: Stmt,
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `f(a, b, c)` into `("f", ["a", "b", "c"])`.
fn call(text: &str) -> Option<(&str, Vec<&str>)> {
    let open = text.find('(')?;
    let inner = text.strip_suffix(')')?.get(open + 1..)?;
    let name = text[..open].trim();
    let args = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(str::trim).collect()
    };
    Some((name, args))
}

fn parse_statement(text: &str, line: usize) -> Result<Stmt, ScriptError> {
    let err = |msg: String| ScriptError { line, msg };
    let name_arg = |s: &str| -> Result<String, ScriptError> {
        if is_name(s) {
            Ok(s.to_string())
        } else {
            Err(err(format!("expected a name, found `{s}`")))
        }
    };
    let number = |s: &str| -> Result<u32, ScriptError> {
        s.parse().map_err(|_| err(format!("expected a number, found `{s}`")))
    };

    if let Some(rest) = text.strip_prefix("ring ") {
        let (_, spec) = rest
            .split_once('=')
            .ok_or_else(|| err("expected `ring R = ...`".into()))?;
        return Ok(Stmt::Ring(spec.trim().to_string()));
    }
    for (kw, poly) in [("ideal ", false), ("poly ", true)] {
        if let Some(rest) = text.strip_prefix(kw) {
            let (name, body) = rest
                .split_once('=')
                .ok_or_else(|| err(format!("expected `{}NAME = ...`", kw)))?;
            let name = name_arg(name.trim())?;
            let body = body.trim().to_string();
            return Ok(if poly { Stmt::Poly(name, body) } else { Stmt::Ideal(name, body) });
        }
    }
    if let Some(rest) = text.strip_prefix("assert ") {
        let rest = rest.trim();
        let (negated, rest) = match rest.strip_prefix('!') {
            Some(r) => (true, r.trim_start()),
            None => (false, rest),
        };
        let (f, args) = call(rest).ok_or_else(|| err(format!("malformed assertion `{rest}`")))?;
        let a = match (f, args.as_slice(), negated) {
            ("member", [poly, ideal], _) => Assertion::Member {
                poly: poly.to_string(),
                ideal: name_arg(ideal)?,
                negated,
            },
            ("equal", [a, b], false) => Assertion::Equal(name_arg(a)?, name_arg(b)?),
            ("subset", [a, b], false) => Assertion::Subset(name_arg(a)?, name_arg(b)?),
            ("unmixed", [a], false) => Assertion::Unmixed(name_arg(a)?),
            _ => return Err(err(format!("unknown assertion `{text}`"))),
        };
        return Ok(Stmt::Assert(a));
    }
    if let Some(rest) = text.strip_prefix("print ") {
        let (f, args) = call(rest.trim()).ok_or_else(|| err(format!("malformed print `{rest}`")))?;
        let kind = match f {
            "gb" => PrintKind::Gb,
            "len" => PrintKind::Len,
            "height" => PrintKind::Height,
            _ => return Err(err(format!("cannot print `{f}`"))),
        };
        let [arg] = args.as_slice() else {
            return Err(err(format!("`{f}` takes one ideal")));
        };
        return Ok(Stmt::Print(kind, name_arg(arg)?));
    }
    let (name, rhs) = text
        .split_once('=')
        .ok_or_else(|| err(format!("unrecognized statement `{text}`")))?;
    let name = name_arg(name.trim())?;
    let (f, args) = call(rhs.trim()).ok_or_else(|| err(format!("malformed expression `{}`", rhs.trim())))?;
    let op = match (f, args.as_slice()) {
        ("colon", [a, b]) => Op::Colon(name_arg(a)?, name_arg(b)?),
        ("sum", [a, b]) => Op::Sum(name_arg(a)?, name_arg(b)?),
        ("prod", [a, b]) => Op::Prod(name_arg(a)?, name_arg(b)?),
        ("intersect", [a, b]) => Op::Intersect(name_arg(a)?, name_arg(b)?),
        ("bracket", [a, q]) => Op::Bracket(name_arg(a)?, number(q)?),
        ("corner", [a, q]) => Op::Corner(name_arg(a)?, number(q)?),
        ("link", [a]) => Op::Link(name_arg(a)?, None),
        ("link", [a, b]) => Op::Link(name_arg(a)?, Some(name_arg(b)?)),
        ("star_colon", [a]) => Op::StarColon(name_arg(a)?),
        ("iq", [a, e]) => Op::Iq(name_arg(a)?, number(e)?),
        ("tau", []) => Op::Tau,
        ("tilde", [a, d, s]) => Op::Tilde(name_arg(a)?, number(d)? as usize, number(s)? as usize),
        _ => return Err(err(format!("unknown operation `{}`", rhs.trim()))),
    };
    Ok(Stmt::Assign(name, op))
}

impl Op {
    fn operands(&self) -> Vec<&str> {
        match self {
            Op::Colon(a, b) | Op::Sum(a, b) | Op::Prod(a, b) | Op::Intersect(a, b) => vec![a, b],
            Op::Link(a, Some(b)) => vec![a, b],
            Op::Bracket(a, _)
            | Op::Corner(a, _)
            | Op::Link(a, None)
            | Op::StarColon(a)
            | Op::Iq(a, _)
            | Op::Tilde(a, _, _) => vec![a],
            Op::Tau => vec![],
        }
    }
}

/// Parses a script and checks its static rules: one leading ring
/// declaration, unique names, and no use before definition.
pub fn parse_script(source: &str) -> Result<Vec<Statement>, ScriptError> {
    let mut cleaned = String::with_capacity(source.len());
    for l in source.lines() {
        cleaned.push_str(l.split('#').next().unwrap_or(""));
        cleaned.push('\n');
    }
    let mut out = Vec::new();
    let mut line = 1;
    let mut ideals: HashSet<String> = HashSet::new();
    let mut names: HashSet<String> = HashSet::new();
    let pieces: Vec<&str> = cleaned.split(';').collect();
    let last = pieces.len() - 1;
    for (k, piece) in pieces.into_iter().enumerate() {
        let leading_newlines = piece[..piece.len() - piece.trim_start().len()].matches('\n').count();
        let stmt_line = line + leading_newlines;
        line += piece.matches('\n').count();
        let text = piece.split_whitespace().collect::<Vec<_>>().join(" ");
        if text.is_empty() {
            continue;
        }
        if k == last {
            return Err(ScriptError { line: stmt_line, msg: format!("missing `;` after `{text}`") });
        }
        let stmt = parse_statement(&text, stmt_line)?;
        let err = |msg: String| ScriptError { line: stmt_line, msg };
        let has_ring = out.iter().any(|s: &Statement| matches!(s.stmt, Stmt::Ring(_)));
        match &stmt {
            Stmt::Ring(_) if has_ring => return Err(err("only one ring per script".into())),
            Stmt::Ring(_) => {}
            _ if !has_ring => return Err(err("the first statement must declare the ring".into())),
            _ => {}
        }
        let need = |n: &str| -> Result<(), ScriptError> {
            if ideals.contains(n) {
                Ok(())
            } else {
                Err(err(format!("undefined ideal `{n}`")))
            }
        };
        match &stmt {
            Stmt::Ring(_) => {}
            Stmt::Assign(_, op) => op.operands().into_iter().try_for_each(need)?,
            Stmt::Assert(Assertion::Equal(x, y) | Assertion::Subset(x, y)) => {
                need(x)?;
                need(y)?;
            }
            Stmt::Assert(Assertion::Member { ideal: x, .. } | Assertion::Unmixed(x))
            | Stmt::Print(_, x) => need(x)?,
            Stmt::Ideal(..) | Stmt::Poly(..) => {}
        }
        let defined = match &stmt {
            Stmt::Ideal(n, _) | Stmt::Assign(n, _) | Stmt::Poly(n, _) => Some(n),
            _ => None,
        };
        if let Some(n) = defined {
            if !names.insert(n.clone()) {
                return Err(err(format!("`{n}` is already defined")));
            }
            if !matches!(stmt, Stmt::Poly(..)) {
                ideals.insert(n.clone());
            }
        }
        out.push(Statement { line: stmt_line, text, stmt });
    }
    Ok(out)
}

/// Result of running a script: the report plus the printed lines.
#[derive(Debug)]
pub struct ScriptOutcome {
    pub report: SuiteReport,
    pub output: Vec<String>,
}

struct Interpreter {
    ring: Option<Arc<RingContext>>,
    /// `None` marks an ideal whose computation failed.
    ideals: HashMap<String, Option<Ideal>>,
    polys: HashMap<String, Polynomial>,
    rng: SeededRng,
    report: SuiteReport,
    output: Vec<String>,
}

enum Lookup<'a> {
    Ready(&'a Ideal),
    Failed(String),
}

impl Interpreter {
    fn ring(&self) -> &Arc<RingContext> {
        self.ring.as_ref().expect("ring declared first")
    }

    fn lookup(&self, name: &str) -> Lookup<'_> {
        match self.ideals.get(name) {
            Some(Some(i)) => Lookup::Ready(i),
            _ => Lookup::Failed(format!("`{name}` is undefined after an earlier failure")),
        }
    }

    fn get(&self, name: &str) -> Result<Ideal, String> {
        match self.lookup(name) {
            Lookup::Ready(i) => Ok(i.clone()),
            Lookup::Failed(why) => Err(why),
        }
    }

    fn exponent(&self, q: u32, line: usize) -> Result<FrobeniusExponent, ScriptError> {
        FrobeniusExponent::from_q(self.ring().characteristic(), q)
            .map_err(|e| ScriptError { line, msg: format!("bad Frobenius power {q}: {e}") })
    }

    fn poly(&self, text: &str, line: usize) -> Result<Polynomial, ScriptError> {
        if let Some(f) = self.polys.get(text) {
            return Ok(f.clone());
        }
        self.ring()
            .parse(text)
            .map_err(|e| ScriptError { line, msg: format!("`{text}`: {e}") })
    }

    fn eval(&mut self, op: &Op, line: usize) -> Result<Result<Ideal, String>, ScriptError> {
        let alg = |r: linkclose::Result<Ideal>| r.map_err(|e: AlgError| e.to_string());
        let pair = |s: &Self, a: &str, b: &str| -> Result<(Ideal, Ideal), String> {
            Ok((s.get(a)?, s.get(b)?))
        };
        let value = match op {
            Op::Colon(a, b) => pair(self, a, b).and_then(|(a, b)| alg(a.colon(&b))),
            Op::Sum(a, b) => pair(self, a, b).and_then(|(a, b)| alg(a.sum(&b))),
            Op::Prod(a, b) => pair(self, a, b).and_then(|(a, b)| alg(a.product(&b))),
            Op::Intersect(a, b) => pair(self, a, b).and_then(|(a, b)| alg(a.intersect(&b))),
            Op::Bracket(a, q) => {
                let e = self.exponent(*q, line)?;
                self.get(a).and_then(|a| alg(bracket_power(&a, e)))
            }
            Op::Corner(a, q) => {
                let e = self.exponent(*q, line)?;
                match self.get(a) {
                    Ok(a) => alg(corner_power(&a, e, CORNER_SAMPLES, &mut self.rng).map(|c| c.value)),
                    Err(why) => Err(why),
                }
            }
            Op::Link(a, b) => {
                let given = match b {
                    Some(b) => match self.get(b) {
                        Ok(b) => Some(b),
                        Err(why) => return Ok(Err(why)),
                    },
                    None => None,
                };
                match self.get(a) {
                    Ok(a) => alg(direct_link(&a, given.as_ref(), &mut self.rng).map(|(j, _)| j)),
                    Err(why) => Err(why),
                }
            }
            Op::StarColon(a) => self.get(a).and_then(|a| {
                let tau = alg(test_ideal(a.ring()).map(|t| t.tau))?;
                alg(star_colon(&a, &tau))
            }),
            Op::Iq(a, e) => {
                let e = FrobeniusExponent::new(self.ring().characteristic(), *e)
                    .map_err(|err| ScriptError { line, msg: err.to_string() })?;
                self.get(a).and_then(|a| {
                    let tau = alg(test_ideal(a.ring()).map(|t| t.tau))?;
                    alg(iq_approx(&a, e, &tau))
                })
            }
            Op::Tau => alg(test_ideal(self.ring()).map(|t| t.tau)),
            Op::Tilde(a, depth, samples) => match self.get(a) {
                Ok(a) => alg(tilde_approx(&a, *depth, *samples, &mut self.rng).map(|(s, _)| s)),
                Err(why) => Err(why),
            },
        };
        Ok(value)
    }

    fn assert(&mut self, a: &Assertion, st: &Statement) -> Result<(), ScriptError> {
        let name = format!("line {}: assert {}", st.line, st.text.trim_start_matches("assert "));
        let outcome: Result<(bool, String), String> = match a {
            Assertion::Equal(x, y) => self.get(x).and_then(|x| {
                let y = self.get(y)?;
                let ok = x.equals(&y).map_err(|e| e.to_string())?;
                Ok((ok, format!("{x} vs {y}")))
            }),
            Assertion::Subset(x, y) => self.get(x).and_then(|x| {
                let y = self.get(y)?;
                let ok = x.is_subset(&y).map_err(|e| e.to_string())?;
                Ok((ok, format!("{x} in {y}")))
            }),
            Assertion::Member { poly, ideal, negated } => {
                let f = self.poly(poly, st.line)?;
                self.get(ideal).map(|i| {
                    let inside = i.contains(&f);
                    let word = if inside { "is in" } else { "is not in" };
                    (inside != *negated, format!("{} {word} {i}", self.ring().format(&f)))
                })
            }
            Assertion::Unmixed(x) => match self.get(x) {
                Ok(i) => is_unmixed(&i, &mut self.rng)
                    .map(|ok| (ok, format!("{i}")))
                    .map_err(|e| e.to_string()),
                Err(why) => Err(why),
            },
        };
        match outcome {
            Ok((ok, details)) => self.report.check(name, ok, details),
            Err(why) => self.report.check(name, false, why),
        }
        Ok(())
    }

    fn print(&mut self, kind: PrintKind, name: &str) {
        let text = match (kind, self.get(name)) {
            (_, Err(why)) => format!("{name}: {why}"),
            (PrintKind::Gb, Ok(i)) => format!("gb({name}) = {i}"),
            (PrintKind::Len, Ok(i)) => match i.colength() {
                Colength::Finite(n) => format!("len({name}) = {n}"),
                Colength::Infinite => format!("len({name}) = infinite"),
            },
            (PrintKind::Height, Ok(i)) => match i.height() {
                Ok(h) => format!("height({name}) = {h}"),
                Err(e) => format!("height({name}): {e}"),
            },
        };
        self.output.push(text);
    }

    fn run(&mut self, st: &Statement) -> Result<(), ScriptError> {
        let line = st.line;
        match &st.stmt {
            Stmt::Ring(spec) => {
                let ring = RingContext::from_spec(spec)
                    .map_err(|e| ScriptError { line, msg: e.to_string() })?;
                self.report.param("ring", ring.spec());
                self.ring = Some(ring);
            }
            Stmt::Ideal(name, gens) => {
                let ideal = self
                    .ring()
                    .ideal_from_list(gens)
                    .map_err(|e| ScriptError { line, msg: format!("ideal `{name}`: {e}") })?;
                self.ideals.insert(name.clone(), Some(ideal));
            }
            Stmt::Poly(name, text) => {
                let f = self.poly(text, line)?;
                self.polys.insert(name.clone(), f);
            }
            Stmt::Assign(name, op) => {
                let value = match self.eval(op, line)? {
                    Ok(i) => Some(i),
                    Err(why) => {
                        self.report.check(format!("line {line}: {}", st.text), false, why);
                        None
                    }
                };
                self.ideals.insert(name.clone(), value);
            }
            Stmt::Assert(a) => self.assert(a, st)?,
            Stmt::Print(kind, name) => self.print(*kind, name),
        }
        Ok(())
    }
}

/// Runs a script. Input errors (syntax, rings, unparsable polynomials)
/// abort; computation errors and failed assertions are recorded.
pub fn run_script(source: &str, seed: u64) -> Result<ScriptOutcome, ScriptError> {
    let statements = parse_script(source)?;
    let mut it = Interpreter {
        ring: None,
        ideals: HashMap::new(),
        polys: HashMap::new(),
        rng: seeded_rng(seed),
        report: SuiteReport::new("script", seed),
        output: Vec::new(),
    };
    for st in &statements {
        it.run(st)?;
    }
    Ok(ScriptOutcome {
        report: it.report,
        output: it.output,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
ring R = char 2 vars x,y,z mod x^3+y^3+z^3;  # Fermat cubic
ideal I = x^2, y^2, z^2;
ideal a = x^2, y^2;
J = colon(a, I);
ideal Jexp = x^2, y^2, z;
assert equal(J, Jexp);
C = corner(I, 2);
assert member(x*y*z, C);
assert !member(x*y*z, I);
print gb(C);
print len(C);
";

    #[test]
    fn runs_the_example() {
        let out = run_script(EXAMPLE, 0).unwrap();
        assert!(out.report.passed(), "{:?}", out.report.checks);
        assert_eq!(out.report.checks.len(), 3);
        assert_eq!(out.output[0], "gb(C) = (x*y*z, x^4, y^4, z^4)");
        assert!(out.output[1].starts_with("len(C) = "));
    }

    #[test]
    fn failed_asserts_do_not_abort() {
        let src = "ring R = fermat2;\nideal I = x^2,y^2,z^2;\nassert member(x*y*z, I);\nassert member(x^2, I);\n";
        let out = run_script(src, 0).unwrap();
        assert_eq!(out.report.exit_code(), 1);
        assert_eq!(out.report.checks.len(), 2);
        assert_eq!(out.report.checks[0].name, "line 3: assert member(x*y*z, I)");
    }

    #[test]
    fn static_errors_carry_lines() {
        let e = parse_script("ring R = poly2_2;\n\nJ = colon(a, b);").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_script("ideal I = x;").is_err());
        assert!(parse_script("ring R = poly2_2; ring S = poly2_3;").is_err());
        assert!(parse_script("ring R = poly2_2; ideal I = x; ideal I = y;").is_err());
        assert!(parse_script("ring R = poly2_2; ideal I = x").is_err());
        assert!(parse_script("ring R = poly2_2; I = frob(x);").is_err());
        assert!(run_script("ring R = char 4 vars x;", 0).is_err());
        assert!(run_script("ring R = poly2_2; ideal I = w;", 0).is_err());
        assert!(run_script("ring R = poly2_2; ideal I = x; B = bracket(I, 3);", 0).is_err());
    }

    #[test]
    fn empty_script_is_clean() {
        let out = run_script("# nothing\n", 0).unwrap();
        assert!(out.report.checks.is_empty());
        assert_eq!(out.report.exit_code(), 0);
    }

    #[test]
    fn every_operation_parses_and_runs() {
        let src = "\
ring R = fermat2;
ideal I = x, y;
ideal M = x, y, z;
poly g = x*y;
S = sum(I, M);
P = prod(I, M);
N = intersect(I, M);
B = bracket(I, 4);
L = link(M);
T = tau();
K = star_colon(I);
Q = iq(I, 2);
W = tilde(M, 1, 2);
assert equal(T, M);
assert subset(I, K);
assert subset(Q, K);
assert unmixed(I);
assert member(g, P);
assert equal(W, M);
print height(I);
";
        let out = run_script(src, 3).unwrap();
        assert!(out.report.passed(), "{:?}", out.report.checks);
        assert_eq!(out.output, vec!["height(I) = 2"]);
    }

    #[test]
    fn computation_errors_poison_dependents() {
        let src = "ring R = poly2_3; ideal I = x^2, x*y, x*z; J = link(I); assert subset(I, J);";
        let out = run_script(src, 0).unwrap();
        assert_eq!(out.report.checks.len(), 2);
        assert!(out.report.failures().count() == 2);
    }
}
