//! Text grammar for forms: `d(x1)`, `x2*d(x3)`, `w(a,b)`, `+`, `-`, `3/5`, `x1^2`, parentheses.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::form::{Chart, DiffForm};
use crate::error::{Error, Result};
use crate::exact::poly::fmt_monomial;
use crate::exact::{RatPoly, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    chart: &'a Arc<Chart>,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn sum(&self, a: DiffForm, b: DiffForm, pos: usize) -> Result<DiffForm> {
        if !a.is_zero() && !b.is_zero() && a.degree() != b.degree() {
            return Err(Error::Parse { pos, msg: format!("adding forms of degree {} and {}", a.degree(), b.degree()) });
        }
        Ok(a.add(&b))
    }

    fn expr(&mut self) -> Result<DiffForm> {
        let mut acc = if self.eat('-') { self.term()?.neg() } else { self.term()? };
        loop {
            let pos = self.here();
            if self.eat('+') {
                let t = self.term()?;
                acc = self.sum(acc, t, pos)?;
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.sum(acc, t.neg(), pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiffForm> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            let f = self.unary()?;
            acc = acc.wedge(&f);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<DiffForm> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return self.err("expected integer exponent");
            };
            self.pos += 1;
            let Some(f) = base.as_function() else {
                return self.err("exponent applied to a form of positive degree");
            };
            let e: u32 = n.try_into().map_err(|_| Error::Parse { pos: self.here(), msg: "exponent too large".into() })?;
            return Ok(DiffForm::function(self.chart, f.pow(e)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<DiffForm> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut q = Rational::from_integer(n);
                if self.eat('/') {
                    let Some(Tok::Num(d)) = self.peek().cloned() else {
                        return self.err("expected denominator");
                    };
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    self.pos += 1;
                    q /= Rational::from_integer(d);
                }
                Ok(DiffForm::constant(self.chart, q))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if (name == "d" || name == "w") && self.peek() == Some(&Tok::Sym('(')) {
                    self.pos += 1;
                    let mut acc = self.expr()?;
                    if name == "d" {
                        self.expect(')')?;
                        return Ok(acc.d());
                    }
                    let mut n = 1;
                    while self.eat(',') {
                        let f = self.expr()?;
                        acc = acc.wedge(&f);
                        n += 1;
                    }
                    self.expect(')')?;
                    if n < 2 {
                        return self.err("w(...) needs at least two arguments");
                    }
                    return Ok(acc);
                }
                let i = self
                    .chart
                    .index(&name)
                    .map_err(|_| Error::Parse { pos: self.toks[self.pos - 1].0, msg: format!("unknown coordinate {name:?}") })?;
                Ok(DiffForm::function(self.chart, RatPoly::var(self.chart.len(), i)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.err("expected a number, coordinate, d(...), w(...) or '('"),
        }
    }
}

/// Parse a form in the text grammar on the given chart.
pub fn parse_form(s: &str, chart: &Arc<Chart>) -> Result<DiffForm> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, chart, len: s.len() };
    if p.peek().is_none() {
        return p.err("empty input");
    }
    let f = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Parse a form whose degree must equal `degree` (the zero form is accepted).
pub fn parse_form_of_degree(s: &str, chart: &Arc<Chart>, degree: usize) -> Result<DiffForm> {
    let f = parse_form(s, chart)?;
    if f.is_zero() {
        return Ok(DiffForm::zero(chart, degree));
    }
    if f.degree() != degree {
        return Err(Error::Parse { pos: 0, msg: format!("expected a {degree}-form, got degree {}", f.degree()) });
    }
    Ok(f)
}

/// Parse a polynomial (0-form).
pub fn parse_poly(s: &str, chart: &Arc<Chart>) -> Result<RatPoly> {
    Ok(parse_form_of_degree(s, chart, 0)?.coefficient(&[]))
}

/// Canonical text form: terms by ascending index tuple, monomials in
/// descending graded-lex order within a term.
pub fn print_form(f: &DiffForm) -> String {
    let names = f.chart().names();
    let mut s = String::new();
    for (idx, poly) in f.terms() {
        let basis = match idx.len() {
            0 => String::new(),
            1 => format!("d({})", names[idx[0] as usize]),
            _ => {
                let parts: Vec<String> = idx.iter().map(|&i| format!("d({})", names[i as usize])).collect();
                format!("w({})", parts.join(","))
            }
        };
        for (m, c) in poly.terms().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut parts = Vec::new();
            if !a.is_one() {
                parts.push(a.to_string());
            }
            let mono = fmt_monomial(m, names);
            if !mono.is_empty() {
                parts.push(mono);
            }
            if !basis.is_empty() {
                parts.push(basis.clone());
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            s.push_str(&parts.join("*"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn parse_and_print_roundtrip() {
        let c = Chart::numbered("x", 7);
        let f = parse_form("d(x5) + x1*d(x4) + x2*d(x3)", &c).unwrap();
        let s = print_form(&f);
        assert_eq!(s, "x2*d(x3) + x1*d(x4) + d(x5)");
        assert_eq!(print_form(&parse_form(&s, &c).unwrap()), s);
    }

    #[test]
    fn rationals_and_wedges() {
        let c = Chart::numbered("x", 4);
        let f = parse_form("3/5*x1^2*w(d(x2),d(x1)) - 1/2*w(d(x3),d(x4))", &c).unwrap();
        assert_eq!(print_form(&f), "-3/5*x1^2*w(d(x1),d(x2)) - 1/2*w(d(x3),d(x4))");
        assert_eq!(f.coefficient(&[2, 3]), RatPoly::constant(4, rat(-1, 2)));
    }

    #[test]
    fn d_of_expression() {
        let c = Chart::numbered("x", 3);
        let f = parse_form("d(x1*x2 - 1/4*x3^2)", &c).unwrap();
        assert_eq!(print_form(&f), "x2*d(x1) + x1*d(x2) - 1/2*x3*d(x3)");
    }

    #[test]
    fn errors() {
        let c = Chart::numbered("x", 2);
        assert!(parse_form("d(x3)", &c).is_err());
        assert!(parse_form("x1 + d(x1)", &c).is_err());
        assert!(parse_form("d(x1", &c).is_err());
        assert!(parse_form("1/0", &c).is_err());
        assert_eq!(print_form(&parse_form("x1 - x1", &c).unwrap()), "0");
    }
}
