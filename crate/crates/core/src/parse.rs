//! Text form of polynomials.
//!
//! ```text
//! poly  := term (('+'|'-') term)*
//! term  := coeff? ('*'? var ('^' nat)?)*
//! coeff := nat
//! var   := [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! A leading sign is accepted. Output omits unit coefficients and the `*`
//! between a coefficient and its monomial; variables are joined with `*`.

use std::fmt::Write;

use crate::error::{AlgError, Result};
use crate::monomial::{Monomial, MAX_VARS};
use crate::poly::{PolyRing, Polynomial, Term};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(AlgError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<u64>().map_err(|_| AlgError::Syntax {
                pos: start,
                msg: format!("number `{text}` too large"),
            })
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }
}

/// Parses `text` as a polynomial in the variables `names`.
pub fn parse_polynomial(text: &str, names: &[String], ring: &PolyRing) -> Result<Polynomial> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let f = ring.field;
    let mut terms = Vec::new();
    let mut negate = false;
    match cur.peek() {
        Some(b'-') => {
            negate = true;
            cur.pos += 1;
        }
        Some(b'+') => cur.pos += 1,
        _ => {}
    }
    loop {
        let mut t = parse_term(&mut cur, names, ring)?;
        if negate {
            t.coeff = f.neg(t.coeff);
        }
        terms.push(t);
        match cur.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(c) => return cur.err(format!("unexpected character `{}`", c as char)),
        }
        cur.pos += 1;
    }
    Ok(ring.from_terms(terms))
}

fn parse_term(cur: &mut Cursor<'_>, names: &[String], ring: &PolyRing) -> Result<Term> {
    let mut coeff = 1u32;
    let mut exps = [0u32; MAX_VARS];
    let mut seen_any = false;
    if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
        coeff = ring.field.reduce(cur.nat()?);
        seen_any = true;
    }
    loop {
        let save = cur.pos;
        let mut star = false;
        if cur.peek() == Some(b'*') {
            cur.pos += 1;
            star = true;
        }
        match cur.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                                let name = cur.ident();
                let idx = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| AlgError::UnknownVariable(name.to_string()))?;
                let mut power = 1u64;
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    power = cur.nat()?;
                }
                let power = u32::try_from(power).map_err(|_| AlgError::ExponentOverflow)?;
                exps[idx] = exps[idx]
                    .checked_add(power)
                    .ok_or(AlgError::ExponentOverflow)?;
                seen_any = true;
            }
            _ if star => {
                return cur.err("expected a variable after `*`");
            }
            _ => {
                cur.pos = save;
                break;
            }
        }
    }
    if !seen_any {
        return cur.err("expected a term");
    }
    let mono = Monomial::from_exponents(&exps).ok_or(AlgError::ExponentOverflow)?;
    Ok(Term { coeff, mono })
}

/// Canonical text of a polynomial.
pub fn format_polynomial(f: &Polynomial, names: &[String]) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, t) in f.terms().iter().enumerate() {
        if k > 0 {
            out.push('+');
        }
        let mono = format_monomial(&t.mono, names);
        if mono.is_empty() {
            write!(out, "{}", t.coeff).unwrap();
        } else if t.coeff == 1 {
            out.push_str(&mono);
        } else {
            write!(out, "{}{}", t.coeff, mono).unwrap();
        }
    }
    out
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, name) in names.iter().enumerate() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}
