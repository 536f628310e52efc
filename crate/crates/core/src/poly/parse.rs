//! Expression parser: numbers, identifiers, `+ - * ^`, parentheses.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | identifier | '(' expr ')'
//! number := integer ('/' integer)?
//! ```
//! A fraction is a single literal such as `3/4`, so rendered polynomials parse
//! back. Juxtaposition (`2x`) is rejected.

use num_bigint::BigInt;

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Frac(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, start)),
            '-' => out.push((Tok::Minus, start)),
            '*' => out.push((Tok::Star, start)),
            '^' => out.push((Tok::Caret, start)),
            '(' => out.push((Tok::LParen, start)),
            ')' => out.push((Tok::RParen, start)),
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let num: BigInt = digits.parse().expect("digits");
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    let den_start = i + 1;
                    i = den_start;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let den: BigInt = chars[den_start..i].iter().collect::<String>().parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(Error::Syntax { position: den_start, message: "zero denominator".into() });
                    }
                    out.push((Tok::Frac(Rational::new(num, den)), start));
                } else {
                    out.push((Tok::Int(num), start));
                }
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            other => {
                return Err(Error::Syntax { position: start, message: format!("unexpected character `{other}`") })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.offset(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let e: u32 = match n.try_into() {
                        Ok(e) => e,
                        Err(_) => return self.syntax("exponent too large"),
                    };
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.syntax("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let arity = self.vars.len();
        let position = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(arity, Rational::from_integer(n)))
            }
            Some(Tok::Frac(q)) => {
                self.pos += 1;
                Ok(Polynomial::constant(arity, q))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::var(arity, i)),
                    None => Err(Error::UnknownVariable { name, position }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.syntax("expected `)`"),
                }
            }
            Some(_) => self.syntax("expected a number, variable or `(`"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses `text` as a polynomial in `variables` (in that order).
pub fn parse(text: &str, variables: &[&str]) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut parser = Parser { toks, pos: 0, end: text.chars().count(), vars: variables };
    let p = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return parser.syntax("unexpected token (implicit multiplication is not supported)");
    }
    Ok(p)
}

/// Parses `"x,y"` style variable lists.
pub fn parse_variable_list(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}
