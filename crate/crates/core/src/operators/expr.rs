//! Operator expressions over `T_f`, `H*_f H_g` and composition, with the
//! mini-language `T(<symbol>)`, `HP(<symbol>; <symbol>)`, `A * B` (or
//! `A ∘ B`), and parentheses for grouping.

use std::fmt;

use super::expansion::BasisExpansion;
use super::hankel::hankel_product_apply;
use super::space::SpaceParams;
use super::toeplitz::toeplitz_apply;
use crate::arith::{MultiIndex, RadicalCoefficient};
use crate::error::{Error, Result};
use crate::symbols::{parse_symbol, SymbolPolynomial};

#[derive(Clone, Debug, PartialEq)]
pub enum OperatorExpr {
    Toeplitz(SymbolPolynomial),
    /// `H*_f H_g`
    HankelProduct(SymbolPolynomial, SymbolPolynomial),
    /// `left ∘ right`: apply `right` first.
    Composition(Box<OperatorExpr>, Box<OperatorExpr>),
}

impl OperatorExpr {
    pub fn compose(left: OperatorExpr, right: OperatorExpr) -> OperatorExpr {
        OperatorExpr::Composition(Box::new(left), Box::new(right))
    }

    /// `T_f T_g`
    pub fn toeplitz_product(f: SymbolPolynomial, g: SymbolPolynomial) -> OperatorExpr {
        Self::compose(OperatorExpr::Toeplitz(f), OperatorExpr::Toeplitz(g))
    }

    /// Every symbol in the tree, left to right.
    pub fn symbols(&self) -> Vec<&SymbolPolynomial> {
        match self {
            OperatorExpr::Toeplitz(f) => vec![f],
            OperatorExpr::HankelProduct(f, g) => vec![f, g],
            OperatorExpr::Composition(l, r) => {
                let mut out = l.symbols();
                out.extend(r.symbols());
                out
            }
        }
    }

    /// Common dimension of the symbols.
    pub fn dim(&self) -> Result<usize> {
        let syms = self.symbols();
        let n = syms[0].dim();
        for s in &syms[1..] {
            if s.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.dim(),
                });
            }
        }
        Ok(n)
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorExpr::Toeplitz(s) => write!(f, "T({s})"),
            OperatorExpr::HankelProduct(a, b) => write!(f, "HP({a}; {b})"),
            OperatorExpr::Composition(l, r) => match **r {
                OperatorExpr::Composition(..) => write!(f, "{l} * ({r})"),
                _ => write!(f, "{l} * {r}"),
            },
        }
    }
}

/// Evaluates `expr · v`.
pub fn apply_operator(expr: &OperatorExpr, v: &BasisExpansion) -> Result<BasisExpansion> {
    match expr {
        OperatorExpr::Toeplitz(f) => toeplitz_apply(f, v),
        OperatorExpr::HankelProduct(f, g) => hankel_product_apply(f, g, v),
        OperatorExpr::Composition(l, r) => apply_operator(l, &apply_operator(r, v)?),
    }
}

/// `⟨expr · e_α, e_η⟩`
pub fn matrix_entry(expr: &OperatorExpr, alpha: &MultiIndex, eta: &MultiIndex, sp: &SpaceParams) -> Result<RadicalCoefficient> {
    sp.check_index(eta)?;
    let image = apply_operator(expr, &BasisExpansion::basis(*sp, alpha.clone())?)?;
    Ok(image.coefficient(eta))
}

/// Parses the operator mini-language; symbols are read in dimension `n`.
/// Error positions are byte offsets into `text`.
pub fn parse_operator(text: &str, n: usize) -> Result<OperatorExpr> {
    let mut p = OpParser { text, pos: 0, n };
    let expr = p.composition()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(Error::parse(p.pos, format!("unexpected {:?}", p.rest_char())));
    }
    Ok(expr)
}

struct OpParser<'a> {
    text: &'a str,
    pos: usize,
    n: usize,
}

impl OpParser<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn rest_char(&self) -> char {
        self.text[self.pos..].chars().next().unwrap_or(' ')
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn composition(&mut self) -> Result<OperatorExpr> {
        let mut acc = self.factor()?;
        while self.eat("*") || self.eat("∘") {
            let rhs = self.factor()?;
            acc = OperatorExpr::compose(acc, rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<OperatorExpr> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("HP(") {
            let f = self.symbol_until(&[';'])?;
            self.pos += 1;
            let g = self.symbol_until(&[')'])?;
            self.pos += 1;
            Ok(OperatorExpr::HankelProduct(f, g))
        } else if self.eat("T(") {
            let f = self.symbol_until(&[')'])?;
            self.pos += 1;
            Ok(OperatorExpr::Toeplitz(f))
        } else if self.eat("(") {
            let inner = self.composition()?;
            if !self.eat(")") {
                return Err(Error::parse(self.pos, "expected ')'"));
            }
            Ok(inner)
        } else if start >= self.text.len() {
            Err(Error::parse(start, "expected an operator, found end of input"))
        } else {
            Err(Error::parse(start, "expected 'T(', 'HP(' or '('"))
        }
    }

    /// Parses the symbol text up to the first depth-0 occurrence of one of
    /// `stops`, leaving `pos` on the stop character.
    fn symbol_until(&mut self, stops: &[char]) -> Result<SymbolPolynomial> {
        let start = self.pos;
        let mut depth = 0usize;
        for (off, ch) in self.text[start..].char_indices() {
            if depth == 0 && stops.contains(&ch) {
                let body = &self.text[start..start + off];
                let sym = parse_symbol(body, self.n).map_err(|e| match e {
                    Error::Parse { position, message } => Error::parse(start + position, message),
                    other => other,
                })?;
                self.pos = start + off;
                return Ok(sym);
            }
            match ch {
                '(' => depth += 1,
                ')' if depth == 0 => return Err(Error::parse(start + off, "unbalanced ')'")),
                ')' => depth -= 1,
                _ => {}
            }
        }
        let wanted: Vec<String> = stops.iter().map(|c| format!("'{c}'")).collect();
        Err(Error::parse(self.text.len(), format!("expected {}", wanted.join(" or "))))
    }
}
