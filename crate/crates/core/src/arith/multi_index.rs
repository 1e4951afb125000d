//! Multi-indices α ∈ ℕⁿ with the componentwise partial order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An element of ℕⁿ. Ordering (`Ord`) is lexicographic, which fixes the
/// iteration order of every expansion; the mathematical partial order is
/// exposed through [`MultiIndex::compare`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiIndex(Vec<u32>);

/// Result of comparing two multi-indices componentwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dominance {
    pub ge: bool,
    pub gt: bool,
    pub le: bool,
    pub lt: bool,
    pub incomparable: bool,
}

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        MultiIndex(components)
    }

    pub fn zeros(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn splat(dim: usize, value: u32) -> Self {
        MultiIndex(vec![value; dim])
    }

    /// The unit vector with a one in slot `axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = vec![0; dim];
        v[axis] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// |α|
    pub fn order(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    fn check_dim(&self, other: &MultiIndex) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// Componentwise comparison, following `α ≥ β ⇔ αᵢ ≥ βᵢ for every i`.
    pub fn compare(&self, other: &MultiIndex) -> Result<Dominance> {
        self.check_dim(other)?;
        let pairs = || self.0.iter().zip(&other.0);
        let ge = pairs().all(|(a, b)| a >= b);
        let le = pairs().all(|(a, b)| a <= b);
        Ok(Dominance {
            ge,
            le,
            gt: pairs().all(|(a, b)| a > b),
            lt: pairs().all(|(a, b)| a < b),
            incomparable: !ge && !le,
        })
    }

    /// `self ≥ other` componentwise. Panics on dimension mismatch.
    pub fn dominates(&self, other: &MultiIndex) -> bool {
        assert_eq!(self.dim(), other.dim(), "multi-index dimension mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), other.dim(), "multi-index dimension mismatch");
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, or `None` when some component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        assert_eq!(self.dim(), other.dim(), "multi-index dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `self + plus − minus` if every component stays nonnegative.
    pub fn shift(&self, plus: &MultiIndex, minus: &MultiIndex) -> Option<MultiIndex> {
        self.add(plus).checked_sub(minus)
    }

    pub fn scale(&self, k: u32) -> MultiIndex {
        MultiIndex(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), other.dim(), "multi-index dimension mismatch");
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Componentwise `|a − b|`.
    pub fn abs_diff(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), other.dim(), "multi-index dimension mismatch");
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a.abs_diff(*b)).collect())
    }

    /// Σ aⱼ bⱼ
    pub fn dot(&self, other: &MultiIndex) -> u64 {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a as u64 * b as u64).sum()
    }

    /// Every multi-index of dimension `dim` with order at most `max_order`,
    /// in lexicographic order.
    pub fn all_up_to_order(dim: usize, max_order: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; dim];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if i == cur.len() {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for v in 0..=left {
                cur[i] = v;
                rec(i + 1, left - v, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, max_order, &mut cur, &mut out);
        out
    }

    /// Every multi-index of dimension `dim` with all components at most `max`.
    pub fn box_up_to(dim: usize, max: u32) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(Vec::with_capacity(dim))];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=max).map(move |v| {
                        let mut c = p.0.clone();
                        c.push(v);
                        MultiIndex(c)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for MultiIndex {
    /// Pipe-separated components, e.g. `3|0|2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty multi-index".into()));
        }
        s.split(['|', ','])
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::InvalidInput(format!("bad multi-index component {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}
