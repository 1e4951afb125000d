//! Shared inputs for the benchmarks.

use fockop_core::symbols::parse_symbol;
use fockop_core::{MultiIndex, SpaceParams, SymbolPolynomial};

pub fn space(n: usize, m: u32) -> SpaceParams {
    SpaceParams::new(n, m).expect("n >= 1")
}

pub fn symbol(text: &str, n: usize) -> SymbolPolynomial {
    parse_symbol(text, n).expect("fixture symbols parse")
}

pub fn index(c: &[u32]) -> MultiIndex {
    MultiIndex::new(c.to_vec())
}
