//! Exact actions of `T_f`, `T_f T_g` and `H*_f H_g` on the orthonormal
//! monomial basis `e_α = c_α z^α` of F²'ᵐ(ℂⁿ).
//!
//! Every coefficient produced from a single basis vector `e_α` and landing
//! on `e_η` has the form `c_α c_η × rational`, so contributions to one
//! target always share a radicand and merge exactly.

mod expansion;
mod expr;
mod hankel;
mod space;
mod toeplitz;

pub use expansion::BasisExpansion;
pub use expr::{apply_operator, matrix_entry, parse_operator, OperatorExpr};
pub use hankel::{hankel_coeff_closed_form, hankel_product_apply, hankel_validity_floor};
pub use space::SpaceParams;
pub use toeplitz::{basis_coefficient, monomial_inner, toeplitz_apply, toeplitz_mono_apply};

use crate::arith::BigRational;

/// `Σ_α |v_α|²`, exact (Parseval).
pub fn squared_norm(v: &BasisExpansion) -> BigRational {
    v.squared_norm()
}
