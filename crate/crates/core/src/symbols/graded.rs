//! Grading of a symbol by holomorphic-minus-antiholomorphic degree in one
//! variable: `F_θ` collects the terms `z_s^{β_s} z̄_s^{γ_s}` with
//! `β_s − γ_s = θ`.

use std::collections::BTreeMap;

use super::poly::SymbolPolynomial;
use crate::arith::{GaussianRational, MultiIndex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct GradedPiece {
    /// 1-based variable index.
    pub variable: usize,
    pub degree: i64,
    /// Univariate polynomial in `z_s`; zero when no term has this degree.
    pub piece: SymbolPolynomial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedDecomposition {
    pub variable: usize,
    /// `i_{0,s}`: smallest degree present.
    pub min_degree: i64,
    /// `i_{1,s}`: largest degree present.
    pub max_degree: i64,
    /// One piece per degree in `min_degree..=max_degree`.
    pub pieces: Vec<GradedPiece>,
    /// Polynomial in the remaining variables with `p = (Σ pieces) · cofactor`
    /// (the constant 1 for univariate input).
    pub cofactor: SymbolPolynomial,
}

impl GradedDecomposition {
    /// Σ_θ F_θ, the variable-`s` factor.
    pub fn factor(&self) -> SymbolPolynomial {
        self.pieces
            .iter()
            .fold(SymbolPolynomial::zero(1), |acc, p| acc.add(&p.piece).expect("univariate"))
    }
}

/// Splits `p = q(z_s, z̄_s) · r(other variables)` and grades `q`.
///
/// Univariate input is always accepted. For `n ≥ 2` the symbol must factor
/// through variable `s`; otherwise the grading is undefined and rejected.
pub fn graded_decompose(p: &SymbolPolynomial, s: usize) -> Result<GradedDecomposition> {
    let n = p.dim();
    if s == 0 || s > n {
        return Err(Error::InvalidInput(format!("variable index {s} out of range 1..{n}")));
    }
    if p.is_zero() {
        return Err(Error::Precondition("graded decomposition of the zero polynomial".into()));
    }
    let axis = s - 1;
    let strip = |m: &MultiIndex| {
        let mut c = m.components().to_vec();
        c[axis] = 0;
        MultiIndex::new(c)
    };

    // rows: (β_s, γ_s); columns: remaining exponents
    let mut rows: BTreeMap<(u32, u32), BTreeMap<(MultiIndex, MultiIndex), GaussianRational>> = BTreeMap::new();
    for (b, g, c) in p.terms() {
        rows.entry((b.get(axis), g.get(axis)))
            .or_default()
            .insert((strip(b), strip(g)), c.clone());
    }

    // Rank-one test against the first row, fixing q(first key) = 1.
    let (_, pivot_row) = rows.iter().next().expect("nonzero polynomial");
    let (pivot_col, pivot_val) = pivot_row.iter().next().expect("nonempty row");
    let mut factor_coeffs: BTreeMap<(u32, u32), GaussianRational> = BTreeMap::new();
    for (key, row) in &rows {
        let Some(v) = row.get(pivot_col) else {
            return Err(not_separable(s));
        };
        // q(key) = v / pivot
        let ratio = div(v, pivot_val);
        for (col, pv) in pivot_row {
            let expected = &ratio * pv;
            if row.get(col) != Some(&expected) {
                return Err(not_separable(s));
            }
        }
        if row.len() != pivot_row.len() {
            return Err(not_separable(s));
        }
        factor_coeffs.insert(*key, ratio);
    }

    let cofactor = if n == 1 {
        // univariate: the factor is p itself
        for c in factor_coeffs.values_mut() {
            *c = &*c * pivot_val;
        }
        SymbolPolynomial::one(1)
    } else {
        let mut cofactor = SymbolPolynomial::zero(n);
        for ((b, g), c) in pivot_row {
            cofactor = cofactor.add(&SymbolPolynomial::monomial(n, b.clone(), g.clone(), c.clone()))?;
        }
        cofactor
    };

    let degree = |&(b, g): &(u32, u32)| b as i64 - g as i64;
    let min_degree = factor_coeffs.keys().map(degree).min().expect("nonempty");
    let max_degree = factor_coeffs.keys().map(degree).max().expect("nonempty");
    let pieces = (min_degree..=max_degree)
        .map(|theta| {
            let mut piece = SymbolPolynomial::zero(1);
            for (key, c) in factor_coeffs.iter().filter(|(k, _)| degree(k) == theta) {
                let term = SymbolPolynomial::monomial(1, MultiIndex::new(vec![key.0]), MultiIndex::new(vec![key.1]), c.clone());
                piece = piece.add(&term).expect("univariate");
            }
            GradedPiece {
                variable: s,
                degree: theta,
                piece,
            }
        })
        .collect();

    Ok(GradedDecomposition {
        variable: s,
        min_degree,
        max_degree,
        pieces,
        cofactor,
    })
}

fn not_separable(s: usize) -> Error {
    Error::Precondition(format!("symbol does not factor through variable z{s}"))
}

fn div(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    let d = b.norm_sqr();
    let num = a * &b.conj();
    GaussianRational::new(&num.re / &d, &num.im / &d)
}
