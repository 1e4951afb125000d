//! Polynomial symbols `Σ c · z^β z̄^γ` on ℂⁿ.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{GaussianRational, MultiIndex};
use crate::error::{Error, Result};

/// `(β, γ)` for the monomial `z^β z̄^γ`.
pub type Exponents = (MultiIndex, MultiIndex);

/// A finite sum of monomials in `z` and `z̄` with Gaussian-rational
/// coefficients. No stored coefficient is zero; the zero polynomial has no
/// terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolPolynomial {
    dim: usize,
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl SymbolPolynomial {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "symbol dimension must be at least 1");
        SymbolPolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: GaussianRational) -> Self {
        Self::monomial(dim, MultiIndex::zeros(dim), MultiIndex::zeros(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, GaussianRational::one())
    }

    /// `c · z^β z̄^γ`
    pub fn monomial(dim: usize, beta: MultiIndex, gamma: MultiIndex, c: GaussianRational) -> Self {
        assert_eq!(beta.dim(), dim, "exponent dimension mismatch");
        assert_eq!(gamma.dim(), dim, "exponent dimension mismatch");
        let mut p = Self::zero(dim);
        p.add_term(beta, gamma, c);
        p
    }

    /// `z_s` (1-based variable index).
    pub fn var(dim: usize, s: usize) -> Self {
        Self::monomial(dim, MultiIndex::unit(dim, s - 1), MultiIndex::zeros(dim), GaussianRational::one())
    }

    /// `z̄_s` (1-based variable index).
    pub fn conj_var(dim: usize, s: usize) -> Self {
        Self::monomial(dim, MultiIndex::zeros(dim), MultiIndex::unit(dim, s - 1), GaussianRational::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &GaussianRational)> {
        self.terms.iter().map(|((b, g), c)| (b, g, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, beta: &MultiIndex, gamma: &MultiIndex) -> Option<&GaussianRational> {
        self.terms.get(&(beta.clone(), gamma.clone()))
    }

    fn add_term(&mut self, beta: MultiIndex, gamma: MultiIndex, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let key = (beta, gamma);
        let merged = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    fn check_dim(&self, other: &SymbolPolynomial) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SymbolPolynomial) -> Result<SymbolPolynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for ((b, g), c) in &other.terms {
            out.add_term(b.clone(), g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymbolPolynomial) -> Result<SymbolPolynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymbolPolynomial {
        self.scale(&GaussianRational::from_int(-1))
    }

    pub fn scale(&self, k: &GaussianRational) -> SymbolPolynomial {
        let mut out = Self::zero(self.dim);
        for ((b, g), c) in &self.terms {
            out.add_term(b.clone(), g.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &SymbolPolynomial) -> Result<SymbolPolynomial> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for ((b1, g1), c1) in &self.terms {
            for ((b2, g2), c2) in &other.terms {
                out.add_term(b1.add(b2), g1.add(g2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> SymbolPolynomial {
        let mut acc = Self::one(self.dim);
        for _ in 0..e {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    /// `f̄`: `(β, γ) ↦ c` becomes `(γ, β) ↦ c̄`.
    pub fn conjugate(&self) -> SymbolPolynomial {
        SymbolPolynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|((b, g), c)| ((g.clone(), b.clone()), c.conj()))
                .collect(),
        }
    }

    /// Splits into the terms with `γ = 0` and the rest.
    pub fn holomorphic_split(&self) -> (SymbolPolynomial, SymbolPolynomial) {
        let mut holo = Self::zero(self.dim);
        let mut rest = Self::zero(self.dim);
        for ((b, g), c) in &self.terms {
            let target = if g.is_zero() { &mut holo } else { &mut rest };
            target.terms.insert((b.clone(), g.clone()), c.clone());
        }
        (holo, rest)
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|(_, g)| g.is_zero())
    }

    /// True iff every term is `z⁰ z̄⁰` (the zero polynomial included).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|(b, g)| b.is_zero() && g.is_zero())
    }

    /// `Some(c)` when `self = c · z̄₁` on ℂ¹ (`c` may be zero).
    pub fn conj_linear_multiple(&self) -> Option<GaussianRational> {
        if self.dim != 1 {
            return None;
        }
        let zbar = (MultiIndex::zeros(1), MultiIndex::unit(1, 0));
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&zbar).cloned(),
            _ => None,
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, dim: usize, beta: &MultiIndex, gamma: &MultiIndex) -> Result<bool, fmt::Error> {
    let name = |s: usize| if dim == 1 { "z".to_string() } else { format!("z{}", s + 1) };
    let mut first = true;
    for s in 0..dim {
        for (e, conj) in [(beta.get(s), false), (gamma.get(s), true)] {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if conj {
                write!(f, "conj({})", name(s))?;
            } else {
                f.write_str(&name(s))?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
    }
    Ok(!first)
}

impl fmt::Display for SymbolPolynomial {
    /// Canonical text accepted back by [`crate::symbols::parse_symbol`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((b, g), c)) in self.terms.iter().enumerate() {
            let constant = b.is_zero() && g.is_zero();
            // Pull a leading sign out of real and purely imaginary coefficients.
            let (negative, shown) = if c.im.is_zero() {
                (c.re.is_negative(), GaussianRational::real(c.re.abs()))
            } else if c.re.is_zero() {
                (c.im.is_negative(), GaussianRational::new(c.re.clone(), c.im.abs()))
            } else {
                (false, c.clone())
            };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mixed = !shown.re.is_zero() && !shown.im.is_zero();
            if constant {
                if mixed {
                    write!(f, "({shown})")?;
                } else {
                    write!(f, "{shown}")?;
                }
                continue;
            }
            if !shown.is_one() {
                if mixed {
                    write!(f, "({shown})*")?;
                } else if shown.re.is_zero() && shown.im.is_one() {
                    f.write_str("i*")?;
                } else {
                    write!(f, "{shown}*")?;
                }
            }
            write_monomial(f, self.dim, b, g)?;
        }
        Ok(())
    }
}
