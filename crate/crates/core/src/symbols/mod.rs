//! Polynomial symbols in `z` and `z̄`: representation, parsing and the
//! structural predicates the boundedness criteria are stated in.

mod graded;
mod parse;
mod poly;

pub use graded::{graded_decompose, GradedDecomposition, GradedPiece};
pub use parse::parse_symbol;
pub use poly::{Exponents, SymbolPolynomial};

pub fn conjugate(p: &SymbolPolynomial) -> SymbolPolynomial {
    p.conjugate()
}

/// `(pure holomorphic part, remainder)`
pub fn holomorphic_split(p: &SymbolPolynomial) -> (SymbolPolynomial, SymbolPolynomial) {
    p.holomorphic_split()
}

pub fn is_constant(p: &SymbolPolynomial) -> bool {
    p.is_constant()
}
