//! Text grammar for forms:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' uint]
//! atom   := uint | ident | '(' expr ')'
//! ```
//!
//! Identifiers are the caller-supplied variable names plus `t`, which
//! denotes the canonical generator of the coefficient field. Whitespace is
//! ignored. Syntax errors report a byte position.

use super::Form;
use crate::error::{Error, Result};
use crate::field::Field;

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

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u64 = text[start..i]
                    .parse()
                    .map_err(|_| Error::Parse { pos: start, msg: "integer too large".into() })?;
                toks.push((Tok::Int(n), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            c => {
                return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    lx: Lexer,
    field: &'a Field,
    vars: &'a [&'a str],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.lx.toks.get(self.lx.pos)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.lx.toks.get(self.lx.pos).cloned();
        if t.is_some() {
            self.lx.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Form> {
        let mut neg = false;
        if let Some((Tok::Minus, _)) = self.peek() {
            self.next();
            neg = true;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some((Tok::Plus, _)) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some((Tok::Minus, _)) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Form> {
        let mut acc = self.factor()?;
        while let Some((Tok::Star, _)) = self.peek() {
            self.next();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Form> {
        let base = self.atom()?;
        if let Some((Tok::Caret, _)) = self.peek() {
            self.next();
            match self.next() {
                Some((Tok::Int(e), pos)) => {
                    if e > u16::MAX as u64 {
                        return Err(Error::Parse { pos, msg: "exponent too large".into() });
                    }
                    Ok(base.pow(e as u32))
                }
                other => {
                    let pos = other.map(|(_, p)| p).unwrap_or(self.end);
                    Err(Error::Parse { pos, msg: "expected integer exponent after `^`".into() })
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Form> {
        let nvars = self.vars.len();
        match self.next() {
            Some((Tok::Int(n), _)) => Ok(Form::constant(*self.field, nvars, self.field.from_int(n as i64))),
            Some((Tok::Ident(name), pos)) => {
                if name == "t" {
                    return Ok(Form::constant(*self.field, nvars, self.field.gen_t()));
                }
                match self.vars.iter().position(|&v| v == name) {
                    Some(i) => Ok(Form::variable(*self.field, nvars, i)),
                    None => Err(Error::UnknownVariable { name, pos }),
                }
            }
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                match self.next() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    other => {
                        let pos = other.map(|(_, p)| p).unwrap_or(self.end);
                        Err(Error::Parse { pos, msg: "expected `)`".into() })
                    }
                }
            }
            Some((tok, pos)) => Err(Error::Parse { pos, msg: format!("unexpected token {tok:?}") }),
            None => Err(Error::Parse { pos: self.end, msg: "unexpected end of input".into() }),
        }
    }
}

pub fn parse_form(text: &str, field: &Field, vars: &[&str]) -> Result<Form> {
    let toks = lex(text)?;
    let mut p = Parser { lx: Lexer { toks, pos: 0 }, field, vars, end: text.len() };
    let form = p.expr()?;
    if let Some((tok, pos)) = p.peek() {
        return Err(Error::Parse { pos: *pos, msg: format!("trailing input starting at {tok:?}") });
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_carry_positions() {
        let f = Field::new(2, 1, None).unwrap();
        let vars = ["x0", "x1"];
        match Form::parse("x0 + x9", &f, &vars) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "x9");
                assert_eq!(pos, 5);
            }
            other => panic!("expected unknown-variable error, got {other:?}"),
        }
        assert!(matches!(Form::parse("x0 + ", &f, &vars), Err(Error::Parse { .. })));
        assert!(matches!(Form::parse("x0 @ x1", &f, &vars), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(Form::parse("(x0 + x1", &f, &vars), Err(Error::Parse { .. })));
    }

    #[test]
    fn coefficients_in_extension_fields() {
        let f4 = Field::new(2, 2, None).unwrap();
        let vars = ["x0"];
        let g = Form::parse("t*x0 + t^2*x0", &f4, &vars).unwrap();
        // t + t^2 = 1 in GF(4)
        let expected = Form::parse("x0", &f4, &vars).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn subtraction_in_odd_characteristic() {
        let f3 = Field::new(3, 1, None).unwrap();
        let vars = ["x0"];
        let g = Form::parse("-x0 + 2*x0", &f3, &vars).unwrap();
        assert_eq!(g, Form::parse("x0", &f3, &vars).unwrap());
        let z = Form::parse("x0 - x0", &f3, &vars).unwrap();
        assert!(z.is_zero());
    }
}
