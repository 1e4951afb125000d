use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::MultiIndex;
use crate::error::{Error, Result};

/// Dimension `n ≥ 1` and Sobolev order `m ≥ 0` of F²'ᵐ(ℂⁿ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceParams {
    pub n: usize,
    pub m: u32,
}

impl SpaceParams {
    pub fn new(n: usize, m: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("dimension n must be at least 1".into()));
        }
        Ok(SpaceParams { n, m })
    }

    /// `n − 1`
    pub(crate) fn nm1(&self) -> u64 {
        self.n as u64 - 1
    }

    /// `m + n − 1`
    pub(crate) fn mn1(&self) -> u64 {
        self.m as u64 + self.n as u64 - 1
    }

    pub(crate) fn check_index(&self, alpha: &MultiIndex) -> Result<()> {
        if alpha.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: alpha.dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: dim,
            });
        }
        Ok(())
    }
}

impl fmt::Display for SpaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F^(2,{})(C^{})", self.m, self.n)
    }
}
