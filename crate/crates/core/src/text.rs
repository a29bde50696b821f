//! Canonical text, LaTeX and JSON forms of [`Poly`], and the expression parser.
//!
//! Canonical text lists terms by descending total degree, ties broken
//! lexicographically on `(x1, ..., xn, y, a)`:
//!
//! ```text
//! 1/20*x1^4*y^5 - 1/70*x1^2*y^7 + 1/2520*y^9
//! ```
//!
//! Negative powers of the width symbol are written as a trailing division,
//! e.g. `-1/3*y^3/a + 1/3*y*a`. The parser accepts everything the renderer
//! emits, so `parse(render(p)) == p`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::polyring::{Poly, Rational, Ring};

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let ring = self.ring();
        for (i, (exps, c)) in self.canonical_terms().enumerate() {
            let sign = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            f.write_str(sign)?;

            let mut numer = Vec::new();
            let mut denom = Vec::new();
            for (v, &p) in exps.as_slice().iter().enumerate() {
                let name = ring.var_name(v);
                match p {
                    0 => {}
                    1 | -1 => (if p > 0 { &mut numer } else { &mut denom }).push(name),
                    p if p > 0 => numer.push(format!("{name}^{p}")),
                    p => denom.push(format!("{name}^{}", -p)),
                }
            }
            let abs = c.abs();
            let mut body = String::new();
            if !abs.is_one() || numer.is_empty() {
                body.push_str(&fmt_rational(&abs));
                if !numer.is_empty() {
                    body.push('*');
                }
            }
            body.push_str(&numer.join("*"));
            for d in denom {
                body.push('/');
                body.push_str(&d);
            }
            f.write_str(&body)?;
        }
        Ok(())
    }
}

fn latex_var(ring: Ring, v: usize) -> String {
    if v < ring.dim() {
        format!("x_{{{}}}", v + 1)
    } else {
        ring.var_name(v)
    }
}

impl Poly {
    /// LaTeX rendering in canonical term order; nothing is factored.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let ring = self.ring();
        let mut out = String::new();
        for (i, (exps, c)) in self.canonical_terms().enumerate() {
            out.push_str(match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let abs = c.abs();
            let vars: Vec<String> = exps
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(v, &p)| match p {
                    1 => latex_var(ring, v),
                    p => format!("{}^{{{p}}}", latex_var(ring, v)),
                })
                .collect();
            if !abs.is_one() || vars.is_empty() {
                if abs.is_integer() {
                    out.push_str(&abs.numer().to_string());
                } else {
                    out.push_str(&format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom()));
                }
                if !vars.is_empty() {
                    out.push(' ');
                }
            }
            out.push_str(&vars.join(" "));
        }
        out
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            nvars: self.nvars(),
            vars: Some(self.ring().var_names()),
            terms: self
                .canonical_terms()
                .map(|(e, c)| TermJson {
                    exp: e.as_slice().to_vec(),
                    coeff: fmt_rational(c),
                })
                .collect(),
        }
    }

    /// Reads the JSON term-list form. The ring is taken from `vars` when
    /// present, otherwise `ring` must be supplied.
    pub fn from_json(json: &PolyJson, ring: Option<Ring>) -> Result<Poly> {
        let ring = match (&json.vars, ring) {
            (_, Some(r)) => r,
            (Some(vars), None) => ring_from_names(vars)?,
            (None, None) => {
                return Err(Error::Json("no `vars` field and no ring supplied".into()));
            }
        };
        if json.nvars != ring.nvars() {
            return Err(Error::Json(format!(
                "nvars {} does not match {ring}",
                json.nvars
            )));
        }
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            terms.push((t.exp.clone(), parse_rational(&t.coeff)?));
        }
        Poly::from_terms(ring, terms)
    }
}

fn ring_from_names(vars: &[String]) -> Result<Ring> {
    let width = vars.last().map(|v| v == "a").unwrap_or(false);
    let dim = vars.len().saturating_sub(1 + usize::from(width));
    let ring = if width {
        Ring::with_width(dim)
    } else {
        Ring::new(dim)
    };
    if ring.var_names() != vars {
        return Err(Error::Json(format!("unrecognised variable list {vars:?}")));
    }
    Ok(ring)
}

/// JSON term-list form: `{"nvars":2,"vars":["x1","y"],"terms":[{"exp":[4,5],"coeff":"1/20"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i32>,
    pub coeff: String,
}

/// Parses `p` or `p/q` with integer `p`, `q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Json(format!("invalid rational literal `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(src: &str) -> std::result::Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i].1 == '.' || chars[i].1 == 'e' || chars[i].1 == 'E') {
                return Err(ParseError {
                    position: chars[i].0,
                    message: "floating-point literals are not accepted; use p/q".into(),
                });
            }
            let text: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((pos, Tok::Int(text.parse().expect("digits"))));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((pos, Tok::Ident(text)));
        } else if ch == '.' {
            return Err(ParseError {
                position: pos,
                message: "floating-point literals are not accepted; use p/q".into(),
            });
        } else {
            return Err(ParseError {
                position: pos,
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: Ring,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn here(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> std::result::Result<T, ParseError> {
        Err(ParseError {
            position: self.here(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> std::result::Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.here();
                    let d = self.unary()?;
                    acc = &acc * &self.reciprocal(&d, at)?;
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    return self.err("implicit multiplication is not supported; use `*`");
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Inverse of a nonzero constant or of a monomial in the width symbol.
    fn reciprocal(&self, d: &Poly, at: usize) -> std::result::Result<Poly, ParseError> {
        let fail = |message: &str| {
            Err(ParseError {
                position: at,
                message: message.into(),
            })
        };
        if d.is_zero() {
            return fail("division by zero");
        }
        if d.len() != 1 {
            return fail("can only divide by a constant or a power of `a`");
        }
        let (exps, c) = d.terms().next().unwrap();
        let a = self.ring.a();
        let only_width = exps
            .as_slice()
            .iter()
            .enumerate()
            .all(|(v, &p)| p == 0 || Some(v) == a);
        if !only_width {
            return fail("can only divide by a constant or a power of `a`");
        }
        let inv: Vec<i32> = exps.as_slice().iter().map(|p| -p).collect();
        Ok(Poly::monomial(self.ring, inv, c.recip()))
    }

    fn unary(&mut self) -> std::result::Result<Poly, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> std::result::Result<Poly, ParseError> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Tok::Int(e) => match u32::try_from(e) {
                Ok(e) => Ok(base.pow(e)),
                Err(_) => {
                    self.pos -= 1;
                    self.err("exponent too large")
                }
            },
            Tok::End => self.err("exponent must be a non-negative integer literal"),
            _ => {
                self.pos -= 1;
                self.err("exponent must be a non-negative integer literal")
            }
        }
    }

    fn primary(&mut self) -> std::result::Result<Poly, ParseError> {
        let at = self.here();
        match self.bump() {
            Tok::Int(v) => Ok(Poly::constant(self.ring, Rational::from_integer(v))),
            Tok::Ident(name) => match self.lookup(&name) {
                Some(idx) => Ok(Poly::var(self.ring, idx)),
                None => Err(ParseError {
                    position: at,
                    message: format!("unknown variable `{name}`"),
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if self.bump() != Tok::RParen {
                    self.pos = self.pos.saturating_sub(1);
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Tok::End => self.err("unexpected end of input"),
            other => {
                self.pos -= 1;
                self.err(format!("unexpected token {other:?}"))
            }
        }
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        let ring = self.ring;
        match name {
            "y" => Some(ring.y()),
            "a" => ring.a(),
            "x" if ring.dim() == 1 => Some(0),
            _ => {
                let digits = name.strip_prefix('x')?;
                if digits.starts_with('0') {
                    return None;
                }
                let i: usize = digits.parse().ok()?;
                (1..=ring.dim()).contains(&i).then(|| i - 1)
            }
        }
    }
}

/// Parses an expression over `+ - * / ^`, parentheses, integer literals and
/// the ring's variables (`x1..xn`, `x` when `n = 1`, `y`, and `a` if the
/// ring carries the width symbol).
pub fn parse_poly(src: &str, ring: Ring) -> std::result::Result<Poly, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, ring };
    if *p.peek() == Tok::End {
        return p.err("empty expression");
    }
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::RParen => p.err("unbalanced `)`"),
        _ => p.err("unexpected trailing input"),
    }
}
