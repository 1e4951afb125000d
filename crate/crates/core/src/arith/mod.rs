//! Exact numeric substrate: multi-indices, rationals, factorial ratios and
//! radical coefficients.

mod factorial;
mod multi_index;
pub mod primes;
mod radical;
mod rational;

pub use factorial::{range_product, FactorialRatio};
pub use multi_index::{Dominance, MultiIndex};
pub use radical::{radical_normalize, RadicalCoefficient};
pub use rational::{
    big_ratio, ln_biguint, ln_rational, rational_from_str, rational_to_f64, rational_to_pq, BigRational,
    GaussianRational,
};

/// Componentwise comparison of two multi-indices.
pub fn multiindex_compare(a: &MultiIndex, b: &MultiIndex) -> crate::Result<Dominance> {
    a.compare(b)
}

/// Exact value of a factorial ratio.
pub fn factorial_ratio_eval(r: &FactorialRatio) -> BigRational {
    r.eval()
}
