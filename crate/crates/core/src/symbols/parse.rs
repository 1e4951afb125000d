//! Recursive-descent parser for symbol text.
//!
//! ```text
//! expr    := ["-"] term (("+"|"-") term)* ;
//! term    := factor ("*" factor)* ;
//! factor  := base ("^" uint)? ;
//! base    := var | "conj(" var ")" | number | "i" | "(" expr ")" ;
//! var     := "z" uint | "z"            (bare "z" only when n = 1)
//! number  := uint | uint "/" uint ;
//! ```
//!
//! Whitespace is insignificant. Error positions are 0-based byte offsets.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::SymbolPolynomial;
use crate::arith::{BigRational, GaussianRational};
use crate::error::{Error, Result};

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

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(k) => format!("number {k}"),
        Tok::Ident(s) => format!("{s:?}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, start));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let k: BigInt = text[start..i].parse().expect("ascii digits");
            out.push((Tok::Int(k), start));
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else {
            let ch = text[start..].chars().next().unwrap_or('?');
            return Err(Error::parse(start, format!("unexpected character {ch:?}")));
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(Error::parse(
                self.pos(),
                format!("expected {}, found {}", describe(&want), describe(self.peek())),
            ))
        }
    }

    fn expr(&mut self) -> Result<SymbolPolynomial> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SymbolPolynomial> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SymbolPolynomial> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(k) => {
                let e: u32 = k
                    .try_into()
                    .map_err(|_| Error::parse(pos, "exponent too large"))?;
                Ok(base.pow(e))
            }
            Tok::Minus => Err(Error::parse(pos, "negative exponent")),
            other => Err(Error::parse(pos, format!("expected exponent, found {}", describe(&other)))),
        }
    }

    fn base(&mut self) -> Result<SymbolPolynomial> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(p) => {
                let value = if *self.peek() == Tok::Slash {
                    self.bump();
                    let (den, dpos) = self.bump();
                    match den {
                        Tok::Int(q) if q.is_zero() => return Err(Error::parse(dpos, "zero denominator")),
                        Tok::Int(q) => BigRational::new(p, q),
                        other => {
                            return Err(Error::parse(
                                dpos,
                                format!("expected denominator, found {}", describe(&other)),
                            ))
                        }
                    }
                } else {
                    BigRational::from_integer(p)
                };
                Ok(SymbolPolynomial::constant(self.dim, GaussianRational::real(value)))
            }
            Tok::Ident(name) if name == "i" => Ok(SymbolPolynomial::constant(self.dim, GaussianRational::i())),
            Tok::Ident(name) if name == "conj" => {
                self.expect(Tok::LParen)?;
                let (inner, ipos) = self.bump();
                let s = match inner {
                    Tok::Ident(v) => self.variable(&v, ipos)?,
                    other => {
                        return Err(Error::parse(
                            ipos,
                            format!("conj() takes a variable, found {}", describe(&other)),
                        ))
                    }
                };
                self.expect(Tok::RParen)?;
                Ok(SymbolPolynomial::conj_var(self.dim, s))
            }
            Tok::Ident(name) => {
                let s = self.variable(&name, pos)?;
                Ok(SymbolPolynomial::var(self.dim, s))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Minus => Err(Error::parse(pos, "unary minus is only allowed at the start of an expression")),
            other => Err(Error::parse(pos, format!("unexpected {}", describe(&other)))),
        }
    }

    /// 1-based variable index of `z`, `z1`, `z2`, …
    fn variable(&self, name: &str, pos: usize) -> Result<usize> {
        let Some(digits) = name.strip_prefix('z') else {
            return Err(Error::parse(pos, format!("unknown identifier {name:?}")));
        };
        if digits.is_empty() {
            if self.dim == 1 {
                return Ok(1);
            }
            return Err(Error::parse(pos, "bare 'z' is only allowed when n = 1"));
        }
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(pos, format!("unknown identifier {name:?}")));
        }
        match digits.parse::<usize>() {
            Ok(s) if (1..=self.dim).contains(&s) => Ok(s),
            _ => Err(Error::parse(
                pos,
                format!("variable {name} out of range z1..z{}", self.dim),
            )),
        }
    }
}

/// Parses `text` into a canonical polynomial in `n` variables.
pub fn parse_symbol(text: &str, n: usize) -> Result<SymbolPolynomial> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        dim: n,
    };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(Error::parse(p.pos(), format!("unexpected {}", describe(p.peek()))));
    }
    Ok(poly)
}
