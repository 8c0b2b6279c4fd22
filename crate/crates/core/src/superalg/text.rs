//! Parser for the rendering produced by `SuperPoly`'s `Display`:
//! `2*x1^2*th1*ch2 - l1`, with `e#` for Grassmann generators and
//! parentheses for grouping.

use std::sync::Arc;

use crate::coeff::{FieldElem, RingSpec, Scalar};
use crate::error::{Error, Result};

use super::poly::SuperPoly;
use super::registry::VarRegistry;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Number(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    registry: &'a Arc<VarRegistry>,
    ring: RingSpec,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SuperPoly> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SuperPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.checked_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SuperPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Number(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent `{n}`")))?;
                    Ok(base.pow(e))
                }
                other => Err(Error::Parse(format!("expected exponent, got {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SuperPoly> {
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                let mut text = n;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Token::Number(d)) => {
                            self.pos += 1;
                            text = format!("{text}/{d}");
                        }
                        other => {
                            return Err(Error::Parse(format!(
                                "expected denominator, got {other:?}"
                            )))
                        }
                    }
                }
                let c = FieldElem::parse(self.ring.field, &text)?;
                Ok(SuperPoly::constant(
                    self.registry.clone(),
                    Scalar::from_field(self.ring, c),
                ))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if let Ok(v) = self.registry.lookup(&name) {
                    return Ok(SuperPoly::var(self.registry.clone(), self.ring, v));
                }
                match name.strip_prefix('e').map(str::parse::<usize>) {
                    Some(Ok(k)) => Ok(SuperPoly::constant(
                        self.registry.clone(),
                        Scalar::generator(self.ring, k)?,
                    )),
                    _ => Err(Error::UnknownVariable(name)),
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl SuperPoly {
    /// Parse a polynomial over `registry` with coefficients in `ring`.
    pub fn parse(registry: &Arc<VarRegistry>, ring: RingSpec, text: &str) -> Result<SuperPoly> {
        let tokens = tokenize(text)?;
        if tokens.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut parser = Parser {
            tokens,
            pos: 0,
            registry,
            ring,
        };
        let poly = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!(
                "trailing input at token {:?}",
                parser.tokens[parser.pos]
            )));
        }
        Ok(poly)
    }
}
