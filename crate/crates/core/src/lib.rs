//! Exact Toeplitz and Hankel operator products on Fock–Sobolev spaces
//! F²'ᵐ(ℂⁿ) with polynomial symbols.
//!
//! The engine acts on the monomial orthonormal basis `e_α` with exact
//! Gaussian-rational × radical coefficients, classifies boundedness of
//! `T_f T_g` and `H*_f H_g`, fits growth exponents along rays of basis
//! vectors, and cross-checks the exact values with independent numerics.

pub mod analysis;
pub mod arith;
pub mod error;
pub mod operators;
pub mod oracle;
pub mod symbols;

pub use arith::{
    radical_normalize, BigRational, FactorialRatio, GaussianRational, MultiIndex, RadicalCoefficient,
};
pub use error::{Error, Result};
pub use operators::{BasisExpansion, OperatorExpr, SpaceParams};
pub use symbols::SymbolPolynomial;
