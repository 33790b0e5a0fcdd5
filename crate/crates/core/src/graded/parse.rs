//! Parser for polynomial expressions such as `y1^2 - 2*y1*y2 + 1/3 y2^2`.
//!
//! ```text
//! expr   := [sign] term (sign term)*
//! term   := factor ('*'? factor)*
//! factor := coeff | name ('^' integer)?
//! coeff  := integer ('/' integer)?
//! name   := [A-Za-z][A-Za-z0-9_]*
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{FreeGCA, Polynomial};
use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown generator `{name}` at offset {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("odd generator `{name}` raised to power {exponent} at offset {pos}; exterior generators square to zero")]
    ExteriorPower {
        name: String,
        exponent: u32,
        pos: usize,
    },
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Num(n)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            _ => return Err(syntax(start, format!("unexpected character `{}`", c))),
        };
        out.push((start, tok));
        i += c.len_utf8();
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    alg: &'a Arc<FreeGCA>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut sum = self.alg.zero();
        let mut negative = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            sum = if negative { &sum - &t } else { &sum + &t };
            match self.peek() {
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                None => return Ok(sum),
                Some(_) => return Err(syntax(self.offset(), "expected `+`, `-` or end of input")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut prod = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    prod = &prod * &f;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) => {
                    let f = self.factor()?;
                    prod = &prod * &f;
                }
                _ => return Ok(prod),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.offset();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Num(n))) => {
                self.pos += 1;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let den_at = self.offset();
                    match self.toks.get(self.pos).cloned() {
                        Some((_, Tok::Num(d))) if !d.is_zero() => {
                            self.pos += 1;
                            value /= Rational::from_integer(d);
                        }
                        Some((_, Tok::Num(_))) => return Err(syntax(den_at, "zero denominator")),
                        _ => return Err(syntax(den_at, "expected denominator after `/`")),
                    }
                }
                if self.peek() == Some(&Tok::Caret) {
                    return Err(syntax(self.offset(), "powers of coefficients are not supported"));
                }
                Ok(self.alg.constant(value))
            }
            Some((_, Tok::Ident(name))) => {
                self.pos += 1;
                let idx = self
                    .alg
                    .index_of(&name)
                    .ok_or_else(|| ParseError::UnknownGenerator { name: name.clone(), pos: at })?;
                let mut exponent = 1u32;
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let exp_at = self.offset();
                    match self.toks.get(self.pos).cloned() {
                        Some((_, Tok::Num(e))) => {
                            self.pos += 1;
                            exponent = u32::try_from(e)
                                .map_err(|_| syntax(exp_at, "exponent too large"))?;
                        }
                        _ => return Err(syntax(exp_at, "expected integer exponent after `^`")),
                    }
                }
                if self.alg.gens()[idx].is_odd() && exponent > 1 {
                    return Err(ParseError::ExteriorPower {
                        name,
                        exponent,
                        pos: at,
                    });
                }
                Ok(self.alg.gen(idx).pow(exponent))
            }
            Some(_) => Err(syntax(at, "expected a coefficient or generator name")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses `src` as an element of `alg`.
pub fn parse_poly(src: &str, alg: &Arc<FreeGCA>) -> Result<Polynomial, ParseError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        alg,
    };
    let out = p.expr()?;
    debug_assert!(p.pos == p.toks.len());
    Ok(out)
}
