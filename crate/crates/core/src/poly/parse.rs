//! Textual polynomial syntax.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor | <implicit after an integer> factor)*
//! factor := atom ('^' INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! Identifiers must be variables of the ring. Rendering lists terms in
//! descending order with coefficients in the symmetric range, so
//! `parse(render(f)) == f` for every polynomial.

use super::monomial::Monomial;
use super::polynomial::{PolyRing, Polynomial};
use crate::error::{Error, Result};

const MAX_EXPONENT: u64 = 1000;

/// Byte cursor over source text, shared with the script parser.
#[derive(Clone, Debug)]
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str, pos: usize) -> Self {
        Cursor { src, pos }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    /// Skips whitespace and `#` / `//` line comments.
    pub(crate) fn skip_ws(&mut self) {
        loop {
            let rest = &self.src[self.pos..];
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with('#') || trimmed.starts_with("//") {
                let end = trimmed.find('\n').map_or(trimmed.len(), |i| i + 1);
                self.pos += end;
            } else {
                break;
            }
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(format!("expected `{c}`")))
        }
    }

    pub(crate) fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!(", found `{c}`"),
            None => ", found end of input".to_string(),
        }
    }

    /// Error at the current position, naming what was found there.
    pub(crate) fn unexpected(&mut self, message: String) -> Error {
        let found = self.found();
        self.error(format!("{message}{found}"))
    }

    pub(crate) fn error(&self, message: String) -> Error {
        Error::Parse {
            offset: self.pos,
            message,
        }
    }

    pub(crate) fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(&rest[..end])
    }

    pub(crate) fn expect_ident(&mut self, what: &str) -> Result<&'a str> {
        let save = self.pos;
        match self.ident() {
            Some(s) => Ok(s),
            None => {
                self.pos = save;
                Err(self.unexpected(format!("expected {what}")))
            }
        }
    }

    /// Consumes `word` if it is the next identifier.
    pub(crate) fn keyword(&mut self, word: &str) -> bool {
        let save = self.pos;
        match self.ident() {
            Some(s) if s == word => true,
            _ => {
                self.pos = save;
                false
            }
        }
    }

    /// Unsigned decimal literal, returned as its digit string.
    pub(crate) fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return None;
        }
        self.pos += end;
        Some(&rest[..end])
    }

    pub(crate) fn uint(&mut self, what: &str) -> Result<u64> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.digits() {
            Some(d) => d.parse::<u64>().map_err(|_| Error::Parse {
                offset: start,
                message: format!("integer `{d}` out of range"),
            }),
            None => Err(self.unexpected(format!("expected {what}"))),
        }
    }

    pub(crate) fn int(&mut self, what: &str) -> Result<i64> {
        let neg = self.eat('-');
        let start = self.pos;
        let v = self.uint(what)?;
        let v = i64::try_from(v).map_err(|_| Error::Parse {
            offset: start,
            message: "integer out of range".into(),
        })?;
        Ok(if neg { -v } else { v })
    }
}

struct ExprParser<'r, 'a> {
    ring: &'r PolyRing,
    cur: Cursor<'a>,
}

impl ExprParser<'_, '_> {
    fn expr(&mut self) -> Result<Polynomial> {
        let r = self.ring;
        let mut acc = if self.cur.eat('-') {
            r.neg(&self.term()?)
        } else {
            self.cur.eat('+');
            self.term()?
        };
        loop {
            if self.cur.eat('+') {
                let t = self.term()?;
                acc = r.add_unchecked(&acc, &t);
            } else if self.cur.eat('-') {
                let t = self.term()?;
                acc = r.add_unchecked(&acc, &r.neg(&t));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let (mut acc, mut last_was_int) = self.factor()?;
        loop {
            if self.cur.eat('*') {
                let (f, is_int) = self.factor()?;
                acc = self.ring.mul_unchecked(&acc, &f);
                last_was_int = is_int;
                continue;
            }
            let next = self.cur.peek();
            let implicit = last_was_int
                && matches!(next, Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '(');
            if !implicit {
                return Ok(acc);
            }
            let (f, is_int) = self.factor()?;
            acc = self.ring.mul_unchecked(&acc, &f);
            last_was_int = is_int;
        }
    }

    fn factor(&mut self) -> Result<(Polynomial, bool)> {
        let (base, is_int) = self.atom()?;
        if self.cur.eat('^') {
            let start = self.cur.pos();
            let e = self.cur.uint("exponent")?;
            if e > MAX_EXPONENT {
                return Err(Error::Parse {
                    offset: start,
                    message: format!("exponent {e} exceeds {MAX_EXPONENT}"),
                });
            }
            return Ok((self.ring.pow(&base, e as u32), false));
        }
        Ok((base, is_int))
    }

    fn atom(&mut self) -> Result<(Polynomial, bool)> {
        let r = self.ring;
        match self.cur.peek() {
            Some('(') => {
                self.cur.eat('(');
                let e = self.expr()?;
                self.cur.expect(')')?;
                Ok((e, false))
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.cur.digits().unwrap_or("0");
                let p = r.field().characteristic() as u64;
                let v = digits
                    .bytes()
                    .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                Ok((r.constant(v as i64), true))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.cur.pos();
                let name = self.cur.ident().unwrap_or_default();
                match r.var_index(name) {
                    Some(i) => Ok((r.var(i), false)),
                    None => Err(Error::Parse {
                        offset: start,
                        message: format!("unknown variable `{name}`"),
                    }),
                }
            }
            _ => Err(self.cur.unexpected("expected a polynomial term".into())),
        }
    }
}

/// Parses one polynomial starting at byte `offset` and returns it with the
/// offset just past the expression. Trailing input is left alone.
pub(crate) fn parse_prefix(ring: &PolyRing, src: &str, offset: usize) -> Result<(Polynomial, usize)> {
    let mut p = ExprParser {
        ring,
        cur: Cursor::new(src, offset),
    };
    let poly = p.expr()?;
    Ok((poly, p.cur.pos()))
}

impl PolyRing {
    /// Parses a complete polynomial expression.
    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        let (poly, end) = parse_prefix(self, src, 0)?;
        let mut cur = Cursor::new(src, end);
        if !cur.at_end() {
            return Err(cur.unexpected("unexpected trailing input".into()));
        }
        Ok(poly)
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.var_names().iter().enumerate() {
            match m.exponent(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Canonical rendering in descending term order.
    pub fn render(&self, a: &Polynomial) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in a.terms().iter().enumerate() {
            let s = self.field().symmetric(*c);
            let mag = s.unsigned_abs();
            if k == 0 {
                if s < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if s < 0 { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&self.render_monomial(m));
            }
        }
        out
    }
}
