//! Parser for polynomial expressions such as `x^2+2`, `3*x+t0` or
//! `(t0+1)*x^2 - x`, evaluated directly in `F[x]`.
//!
//! Grammar:
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer | variable | generator | '(' expr ')'
//! ```
//! `generator` is `t0`, `t1`, ... naming the tower generators of the field.

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("integer {text} too large")))?;
                out.push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a Field,
    vars: &'a [&'a str],
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?}", self.src))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match tok {
            Tok::Int(v) => {
                let p = self.field.characteristic() as u64;
                Ok(Poly::constant(&self.field.from_int((v % p) as i64)))
            }
            Tok::Ident(name) => {
                if self.vars.contains(&name.as_str()) {
                    return Ok(Poly::x(self.field));
                }
                if let Some(idx) = name.strip_prefix('t').and_then(|d| d.parse::<usize>().ok()) {
                    if let Some(code) = self.field.level_generator_code(idx) {
                        return Ok(Poly::constant(&self.field.elem(code)));
                    }
                }
                Err(self.err(&format!("unknown symbol {name}")))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Parses `text` as a polynomial over `field` whose indeterminate may be
/// spelled as any of `vars`.
pub fn parse_poly_in(field: &Field, text: &str, vars: &[&str]) -> Result<Poly> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        vars,
        src: text,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses a polynomial in `x` over `field`.
pub fn parse_poly(field: &Field, text: &str) -> Result<Poly> {
    parse_poly_in(field, text, &["x"])
}

/// Parses a field element written in the tower generators, e.g. `3*t0+2`.
pub fn parse_elem(field: &Field, text: &str) -> Result<crate::gf::FieldElem> {
    let p = parse_poly_in(field, text, &[])?;
    match p.degree() {
        None => Ok(field.zero()),
        Some(0) => Ok(p.coeff(0)),
        Some(_) => Err(Error::Parse(format!("{text:?} is not a field element"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        let f5 = Field::prime(5).unwrap();
        let p = parse_poly(&f5, "x^2+2").unwrap();
        assert_eq!(p.codes(), &[2, 0, 1]);
        let p = parse_poly(&f5, "x^2 + 3*x + 4").unwrap();
        assert_eq!(p.codes(), &[4, 3, 1]);
        let p = parse_poly(&f5, "-x+7").unwrap();
        assert_eq!(p.codes(), &[2, 4]);
        let p = parse_poly(&f5, "(x+3)^2+2").unwrap();
        assert_eq!(p.codes(), &[1, 1, 1]);
        assert!(parse_poly(&f5, "x^").is_err());
        assert!(parse_poly(&f5, "y+1").is_err());
        assert!(parse_poly(&f5, "x)").is_err());
    }

    #[test]
    fn parses_generators() {
        let f4 = Field::parse("2^2;modulus=t^2+t+1").unwrap();
        let p = parse_poly(&f4, "t0*x^2+(t0+1)").unwrap();
        assert_eq!(p.to_string(), "t0*x^2+t0+1");
        let e = parse_elem(&f4, "t0+1").unwrap();
        assert_eq!(e, &f4.generator() + &f4.one());
        assert!(parse_elem(&f4, "x").is_err());
    }
}
